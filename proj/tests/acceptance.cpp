// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "rotalg/chern_lattice.hpp"
#include "rotalg/json_io.hpp"
#include "rotalg/pr_numeric.hpp"
#include "rotalg/selftest.hpp"
#include "rotalg/text_format.hpp"
#include "rotalg/trace_functionals.hpp"
#include "rotalg/trace_realization.hpp"

using namespace rotalg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += " [over budget " + std::to_string(budget_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d: %s -- %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<Element> monomial_grid(int bound) {
  std::vector<Element> out;
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) out.push_back(Element::monomial(m, n));
  }
  return out;
}

Outcome exact_algebra() {
  std::size_t total = 0;
  for (const auto& r : algebra_law_suites(1, 1000)) {
    total += r.cases;
    if (!r.pass) return {false, r.name + ": " + r.detail};
  }
  return {true, std::to_string(total) + " cases over 12 laws"};
}

Outcome twisted_traces() {
  const SuiteResult r = twisted_trace_suite(6);
  return {r.pass, r.pass ? std::to_string(r.cases) + " (ij, x, y) triples" : r.detail};
}

Outcome relations() {
  const auto grid = monomial_grid(6);
  std::size_t n = 0;
  for (const auto& x : grid) {
    for (const auto& y : grid) {
      ++n;
      if (auto f = relation_check(x * y)) return {false, f->identity + " fails on " + (x * y).str()};
    }
  }
  const SuiteResult r = relation_suite(6, 3);
  if (!r.pass) return {false, r.detail};
  return {true, std::to_string(n + r.cases) + " elements"};
}

Outcome unit_values() {
  const Element one(1);
  if (!(chern_T4(one) == T4Vector{1, 1, 0, 1, 0, 0})) return {false, "T4(1) mismatch"};
  if (!(chern_T2(one) == T2Vector{1, 1, 0, 0, 0})) return {false, "T2(1) mismatch"};
  return {true, "T4(1) = (1; 1, 0; 1, 0, 0), T2(1) = (1; 1, 0, 0, 0)"};
}

Outcome lattice() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int k = 0; k < 1000; ++k) {
    K0Coordinates n;
    for (auto& x : n) x = d(rng);
    const auto r = decompose(recompose(n));
    if (r.status != DecomposeStatus::ok || *r.coordinates != n) return {false, "round trip failed"};
  }
  const auto unit = decompose(parse_chern("(1;1,0;1,0,0)"));
  if (!unit.coordinates || *unit.coordinates != K0Coordinates{0, 0, 1, 0, 0, 0, 0, 0, 0}) {
    return {false, "decompose(T4(1)) != e3"};
  }
  if (basis_rank() != 9) return {false, "rank " + std::to_string(basis_rank())};
  return {true, "1000 round trips, decompose(T4(1)) = e3, rank 9"};
}

// tau in 2Z + 2Z theta (mult = 2) or 4Z + 4Z theta (mult = 4), from doubled components.
bool trace_in(const std::array<std::int64_t, 4>& twice_tau, std::int64_t mult) {
  return twice_tau[2] == 0 && twice_tau[3] == 0 && twice_tau[0] % (2 * mult) == 0 && twice_tau[1] % (2 * mult) == 0;
}

Outcome quantization() {
  // Library path on 10^6 random vectors.
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::int64_t> d(-3, 3);
  std::size_t hyp2 = 0, hyp4 = 0;
  auto in_sub = [](const KScalar& t, std::int64_t mult) {
    return t.is_real() && t.a.is_integer() && t.b.is_integer() && t.a.to_integer() % mult == 0 &&
           t.b.to_integer() % mult == 0;
  };
  for (int k = 0; k < 1'000'000; ++k) {
    K0Coordinates n;
    for (auto& x : n) x = d(rng);
    const ChernVector v = recompose(n);
    if (!v.psi10.is_zero() || !v.psi11.is_zero()) continue;
    ++hyp2;
    if (!in_sub(v.tau, 2)) return {false, "psi10 = psi11 = 0 but tau = " + v.tau.str()};
    if (v.psi20.is_zero() && v.psi21.is_zero() && v.psi22.is_zero()) {
      ++hyp4;
      if (!in_sub(v.tau, 4)) return {false, "all psi = 0 but tau = " + v.tau.str()};
    }
  }
  // Draws from inside the psi10 = psi11 = 0 sublattice, where the first hypothesis always holds.
  std::size_t inner = 0;
  for (int k = 0; k < 1'000'000; ++k) {
    const ChernVector v = recompose(semiflat_coordinates(d(rng), d(rng), d(rng), d(rng), d(rng)));
    if (!v.psi10.is_zero() || !v.psi11.is_zero()) return {false, "semiflat coordinates leave the sublattice"};
    if (!in_sub(v.tau, 2)) return {false, "sublattice draw with tau = " + v.tau.str()};
    if (v.psi20.is_zero() && v.psi21.is_zero() && v.psi22.is_zero()) {
      ++inner;
      if (!in_sub(v.tau, 4)) return {false, "all psi = 0 but tau = " + v.tau.str()};
    }
  }
  // Exhaustive integer enumeration of all 7^9 vectors through doubled slot components.
  std::array<std::array<std::int64_t, 24>, 9> cols{};
  for (std::size_t j = 0; j < 9; ++j) {
    const auto flat = flatten(basis_vectors()[j]);
    for (std::size_t r = 0; r < 24; ++r) {
      const Rational twice = flat[r] * Rational(2);
      if (!twice.is_integer()) return {false, "basis component not in Z/2"};
      cols[j][r] = twice.to_integer();
    }
  }
  std::size_t ex2 = 0, ex4 = 0, total = 0;
  std::array<std::int64_t, 9> n{};
  n.fill(-3);
  std::array<std::int64_t, 24> acc{};
  for (std::size_t j = 0; j < 9; ++j) {
    for (std::size_t r = 0; r < 24; ++r) acc[r] += n[j] * cols[j][r];
  }
  while (true) {
    ++total;
    bool psi1_zero = true, psi2_zero = true;
    for (std::size_t r = 4; r < 12; ++r) psi1_zero = psi1_zero && acc[r] == 0;
    if (psi1_zero) {
      ++ex2;
      if (!trace_in({acc[0], acc[1], acc[2], acc[3]}, 2)) return {false, "exhaustive counterexample (2Z)"};
      for (std::size_t r = 12; r < 24; ++r) psi2_zero = psi2_zero && acc[r] == 0;
      if (psi2_zero) {
        ++ex4;
        if (!trace_in({acc[0], acc[1], acc[2], acc[3]}, 4)) return {false, "exhaustive counterexample (4Z)"};
      }
    }
    std::size_t j = 0;
    while (j < 9 && n[j] == 3) {
      for (std::size_t r = 0; r < 24; ++r) acc[r] -= 6 * cols[j][r];
      n[j] = -3;
      ++j;
    }
    if (j == 9) break;
    ++n[j];
    for (std::size_t r = 0; r < 24; ++r) acc[r] += cols[j][r];
  }
  std::ostringstream os;
  os << "0 counterexamples; sampled 1000000 (" << hyp2 << " with psi10=psi11=0, " << hyp4 << " with all psi=0); "
     << "sublattice 1000000 (" << inner << " with all psi=0); "
     << "exhaustive " << total << " (" << ex2 << ", " << ex4 << ")";
  return {true, os.str()};
}

Outcome membership() {
  const ThetaParam g = ThetaParam::golden();
  const auto a = semiflat_membership(parse_chern("(2t;0,0;1,1,2)"), g);
  if (!a.member || a.genus != Genus{1, 1, 2}) return {false, "(2t;0,0;1,1,2) not accepted with genus (1,1,2)"};
  const auto b = semiflat_membership(parse_chern("(1;1,0;1,0,0)"), g);
  if (b.member || b.reason != RejectReason::psi10_nonzero) return {false, "T4(1) not rejected as psi10-nonzero"};
  const auto c = genus_basis_decompose({0, 2, 0});
  if (!c || *c != std::array<std::int64_t, 3>{-1, 2, -2}) return {false, "genus_basis_decompose((0,2,0)) wrong"};
  return {true, "accept (1,1,2), reject psi10-nonzero, (0,2,0) -> (-1,2,-2)"};
}

std::vector<Json::json_pointer> integer_paths(const Json& j, const Json::json_pointer& at = Json::json_pointer()) {
  std::vector<Json::json_pointer> out;
  std::function<void(const Json&, const Json::json_pointer&)> walk = [&](const Json& v, const Json::json_pointer& p) {
    if (v.is_number_integer()) {
      out.push_back(p);
    } else if (v.is_object()) {
      for (const auto& [k, c] : v.items()) walk(c, p / k);
    } else if (v.is_array()) {
      for (std::size_t k = 0; k < v.size(); ++k) walk(v[k], p / k);
    }
  };
  walk(j, at);
  return out;
}

bool certificate_accepted(const Json& j, const ThetaParam& theta) {
  try {
    return verify_certificate(certificate_from_json(j), theta).pass;
  } catch (const std::exception&) {
    return false;
  }
}

// Random target of the kind: scale * (l + j theta) with the fractional part inside the kind's window.
TraceValue random_target(RealizeKind kind, const ThetaParam& theta, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-400, 400);
  std::int64_t scale = 1;
  double window = 1.0;
  switch (kind) {
    case RealizeKind::cyclic:
      window = 0.25;
      break;
    case RealizeKind::semicyclic:
      window = 0.5;
      break;
    case RealizeKind::flat:
      scale = 4;
      window = 0.25;
      break;
    case RealizeKind::semiflat:
      scale = 2;
      window = 0.5;
      break;
    case RealizeKind::fourier_invariant:
      break;
  }
  while (true) {
    const std::int64_t j = d(rng);
    if (j == 0) continue;
    const std::int64_t l = -theta.floor_of(0, j);
    if (theta.eval(l, j) < window) return {scale * l, scale * j};
  }
}

Outcome realization() {
  const RealizeKind kinds[] = {RealizeKind::cyclic, RealizeKind::semicyclic, RealizeKind::flat, RealizeKind::semiflat,
                               RealizeKind::fourier_invariant};
  std::size_t certs = 0, mutations = 0;
  for (const ThetaParam& theta : {ThetaParam::golden(), ThetaParam::sqrt2()}) {
    std::mt19937_64 rng(8);
    for (RealizeKind kind : kinds) {
      for (int k = 0; k < 100; ++k) {
        const TraceValue t = random_target(kind, theta, rng);
        const Certificate c = realize(kind, t, theta);
        const VerifyReport rep = verify_certificate(c, theta);
        if (!rep.pass) return {false, std::string(kind_name(kind)) + " " + t.str() + ": " + rep.message};
        ++certs;
        const Certificate* fi = &c;
        while (std::holds_alternative<ReflectedNode>(fi->node)) fi = &fi->children[0];
        if (const auto* node = std::get_if<FourierInvariantNode>(&fi->node); node && node->k != 0 && node->k != 1) {
          return {false, "fourier_invariant branch k = " + std::to_string(node->k)};
        }
        const Json j = certificate_json(c);
        for (const auto& p : integer_paths(j)) {
          for (int delta : {-1, 1}) {
            Json m = j;
            m[p] = m[p].get<std::int64_t>() + delta;
            ++mutations;
            if (certificate_accepted(m, theta)) {
              return {false, "mutation survived at " + p.to_string() + " in " + std::string(kind_name(kind)) + " " +
                                 t.str()};
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(certs) + " certificates verified, " + std::to_string(mutations) + " mutations rejected"};
}

Outcome subalgebra() {
  const ThetaParam g = ThetaParam::golden();
  std::size_t n = 0;
  for (int m = -8; m <= 8; ++m) {
    for (int k = -8; k <= 8; ++k) {
      if (m == 0 && k == 0) continue;
      const auto gens = subalgebra_generators(m, k, g);
      if (!(apply_automorphism(Automorphism::sigma, gens.u) * gens.v == Element(1))) {
        return {false, "sigma(U~)V~ != 1 at (" + std::to_string(m) + "," + std::to_string(k) + ")"};
      }
      if (!(gens.v * gens.u == PhaseScalar::lambda_pow(4 * (m * m + k * k)) * (gens.u * gens.v))) {
        return {false, "commutation fails at (" + std::to_string(m) + "," + std::to_string(k) + ")"};
      }
      ++n;
    }
  }
  return {true, std::to_string(n) + " pairs (m, n)"};
}

Outcome powers_rieffel() {
  struct Row {
    ThetaParam theta;
    std::int64_t r, s;
    std::array<double, 4> phi;
  };
  const ThetaParam g = ThetaParam::golden(), q = ThetaParam::sqrt2();
  const Row rows[] = {{g, 6, -3, {0, 1, 0, 0}}, {g, 14, -8, {0, 0, 0, 0}}, {g, 3, -1, {0.5, 0.5, -0.5, 0.5}},
                      {q, 4, -1, {0, 1, 0, 0}}, {q, 2, 0, {0, 0, 0, 0}},   {q, 9, -3, {0.5, 0.5, -0.5, 0.5}}};
  double worst_idem = 0, worst_tau = 0, worst_flip = 0;
  for (const auto& row : rows) {
    const PrBuild b = pr_build(row.r, row.s, row.theta, true);
    if (b.e.grid != 4096) return {false, "grid refined beyond 4096"};
    const LoopInvariants inv = loop_invariants(b.e, row.theta, row.r);
    worst_idem = std::max(worst_idem, b.idempotent_residual);
    worst_flip = std::max(worst_flip, *b.flip_residual);
    worst_tau = std::max(worst_tau, std::abs(inv.tau.raw.real() - b.alpha));
    for (std::size_t k = 0; k < 4; ++k) {
      if (!inv.phi[k].rounded || *inv.phi[k].rounded != row.phi[k]) {
        return {false, row.theta.name() + " (" + std::to_string(row.r) + "," + std::to_string(row.s) + ") phi slot " +
                           std::to_string(k) + " = " + std::to_string(inv.phi[k].raw.real())};
      }
    }
  }
  for (const ThetaParam* th : {&g, &q}) {
    const PrBuild b = pr_build(1, 0, *th, false);
    worst_idem = std::max(worst_idem, b.idempotent_residual);
    worst_tau = std::max(worst_tau, std::abs(loop_invariants(b.e, *th, 1).tau.raw.real() - b.alpha));
  }
  if (worst_idem > 1e-8 || worst_tau > 1e-10 || worst_flip > 1e-8) return {false, "residual gate exceeded"};
  std::ostringstream os;
  os << "6 table rows reproduced; max |e^2-e| " << worst_idem << ", max |tau-alpha| " << worst_tau
     << ", max |flip(e)-e| " << worst_flip;
  return {true, os.str()};
}

// Nearest realizable trace scale*(l + j theta) to x, searching |j| outward.
std::optional<TraceValue> nearest_lattice_trace(double x, std::int64_t scale, const ThetaParam& theta, double tol) {
  for (std::int64_t step = 1; step < 200000; ++step) {
    const std::int64_t j = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    if (j == 0) continue;
    const auto l = static_cast<std::int64_t>(std::llround(x / static_cast<double>(scale) - theta.eval(0, j)));
    const TraceValue t{scale * l, scale * j};
    const double v = theta.eval(t.a, t.b);
    if (v > 0 && v < 1 && std::abs(v - x) < tol) return t;
  }
  return std::nullopt;
}

Outcome density() {
  const ThetaParam g = ThetaParam::golden();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng);
    for (auto [kind, scale] : {std::pair{RealizeKind::flat, std::int64_t{4}}, std::pair{RealizeKind::semiflat, std::int64_t{2}}}) {
      const auto t = nearest_lattice_trace(x, scale, g, 1e-3);
      if (!t) return {false, "no candidate near " + std::to_string(x)};
      const Certificate c = realize(kind, *t, g);
      if (!verify_certificate(c, g).pass) return {false, "certificate rejected near " + std::to_string(x)};
      worst = std::max(worst, std::abs(c.value - x));
    }
  }
  std::ostringstream os;
  os << "100 targets, flat and semiflat, worst distance " << worst;
  return {worst < 1e-3, os.str()};
}

}  // namespace

int main() {
  run(1, "exact algebra laws", 10, exact_algebra);
  run(2, "twisted trace identity on |exponents| <= 6", 30, twisted_traces);
  run(3, "relation suite and gamma sign laws", 30, relations);
  run(4, "unit Chern values", 1, unit_values);
  run(5, "lattice decomposition", 10, lattice);
  run(6, "trace quantization brute force", 60, quantization);
  run(7, "semiflat membership", 1, membership);
  run(8, "trace realization certificates", 10, realization);
  run(9, "subalgebra embedding", 10, subalgebra);
  run(10, "Powers-Rieffel numerics", 60, powers_rieffel);
  run(11, "density of realizable traces", 30, density);
  std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
