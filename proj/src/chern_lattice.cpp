#include "rotalg/chern_lattice.hpp"

#include <cstdlib>
#include <sstream>

namespace rotalg {

namespace {

const Rational kHalf(1, 2);

KScalar gauss(Rational re, Rational im) { return {re, Rational(0), im, Rational(0)}; }
KScalar theta_only() { return KScalar::real(Rational(0), Rational(1)); }

std::string rational_term(const Rational& coeff, std::string_view suffix, bool first) {
  std::string s;
  if (coeff.sign() < 0) {
    s += "-";
  } else if (!first) {
    s += "+";
  }
  Rational mag = coeff.sign() < 0 ? -coeff : coeff;
  if (!(mag == Rational(1)) || suffix.empty()) s += mag.str();
  s += suffix;
  return s;
}

// Row-reduces [rows | rhs] in place; returns the rank and, through pivot_cols,
// the pivot column of each reduced row. A pivot in column `cols` means the
// augmented system is inconsistent.
template <std::size_t R, std::size_t C>
std::size_t row_reduce(std::array<std::array<Rational, C>, R>& m, std::vector<std::size_t>& pivot_cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t pivot = rank;
    while (pivot < R && m[pivot][col].is_zero()) ++pivot;
    if (pivot == R) continue;
    std::swap(m[pivot], m[rank]);
    const Rational inv = Rational(1) / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < R; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < C; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  return rank;
}

}  // namespace

std::complex<double> KScalar::numeric(const ThetaParam& theta) const {
  return {theta.eval(a, b), theta.eval(c, d)};
}

std::string KScalar::str() const {
  std::string s;
  const std::pair<const Rational*, std::string_view> parts[] = {{&a, ""}, {&b, "t"}, {&c, "i"}, {&d, "ti"}};
  for (const auto& [coeff, suffix] : parts) {
    if (coeff->is_zero()) continue;
    s += rational_term(*coeff, suffix, s.empty());
  }
  return s.empty() ? "0" : s;
}

ChernVector operator+(const ChernVector& x, const ChernVector& y) {
  auto xs = x.slots();
  auto ys = y.slots();
  for (std::size_t k = 0; k < 6; ++k) xs[k] += ys[k];
  return ChernVector::from_slots(xs);
}

ChernVector operator-(const ChernVector& x, const ChernVector& y) {
  auto xs = x.slots();
  auto ys = y.slots();
  for (std::size_t k = 0; k < 6; ++k) xs[k] -= ys[k];
  return ChernVector::from_slots(xs);
}

ChernVector operator*(const Rational& s, const ChernVector& x) {
  auto xs = x.slots();
  for (auto& k : xs) k = s * k;
  return ChernVector::from_slots(xs);
}

std::string ChernVector::str() const {
  return "(" + tau.str() + "; " + psi10.str() + ", " + psi11.str() + "; " + psi20.str() + ", " + psi21.str() + ", " +
         psi22.str() + ")";
}

std::string Genus::str() const { return "(" + g20.str() + "," + g21.str() + "," + g22.str() + ")"; }

const std::array<ChernVector, 9>& basis_vectors() {
  static const std::array<ChernVector, 9> basis = [] {
    const KScalar zero;
    const KScalar one = KScalar::real(1);
    const KScalar two = KScalar::real(2);
    const KScalar h = KScalar::real(kHalf);
    const KScalar mh = KScalar::real(-kHalf);
    const KScalar one_plus_i = gauss(1, 1);
    return std::array<ChernVector, 9>{
        ChernVector{two, zero, zero, two, zero, zero},
        ChernVector{two, one_plus_i, zero, zero, zero, zero},
        ChernVector{one, one, zero, one, zero, zero},
        ChernVector{two, zero, zero, zero, two, zero},
        ChernVector{two, zero, one_plus_i, zero, zero, zero},
        ChernVector{one, zero, one, zero, one, zero},
        ChernVector{theta_only(), gauss(kHalf, -kHalf), gauss(kHalf, -kHalf), h, h, one},
        ChernVector{theta_only(), gauss(-kHalf, -kHalf), gauss(-kHalf, -kHalf), mh, mh, KScalar::real(-1)},
        ChernVector{theta_only(), gauss(-kHalf, kHalf), gauss(-kHalf, kHalf), h, h, one},
    };
  }();
  return basis;
}

ChernVector recompose(const K0Coordinates& coords) {
  ChernVector v;
  const auto& basis = basis_vectors();
  for (std::size_t j = 0; j < 9; ++j) {
    if (coords[j] != 0) v = v + Rational(coords[j]) * basis[j];
  }
  return v;
}

std::array<Rational, 24> flatten(const ChernVector& v) {
  std::array<Rational, 24> out;
  auto slots = v.slots();
  for (std::size_t s = 0; s < 6; ++s) {
    out[4 * s + 0] = slots[s].a;
    out[4 * s + 1] = slots[s].b;
    out[4 * s + 2] = slots[s].c;
    out[4 * s + 3] = slots[s].d;
  }
  return out;
}

std::size_t basis_rank() {
  std::array<std::array<Rational, 9>, 24> m;
  const auto& basis = basis_vectors();
  for (std::size_t j = 0; j < 9; ++j) {
    auto col = flatten(basis[j]);
    for (std::size_t r = 0; r < 24; ++r) m[r][j] = col[r];
  }
  std::vector<std::size_t> pivots;
  return row_reduce(m, pivots);
}

DecomposeResult decompose(const ChernVector& v) {
  std::array<std::array<Rational, 10>, 24> m;
  const auto& basis = basis_vectors();
  for (std::size_t j = 0; j < 9; ++j) {
    auto col = flatten(basis[j]);
    for (std::size_t r = 0; r < 24; ++r) m[r][j] = col[r];
  }
  auto rhs = flatten(v);
  for (std::size_t r = 0; r < 24; ++r) m[r][9] = rhs[r];

  std::vector<std::size_t> pivots;
  row_reduce(m, pivots);
  DecomposeResult result;
  if (!pivots.empty() && pivots.back() == 9) {
    result.status = DecomposeStatus::inconsistent;
    return result;
  }
  // The basis has full column rank, so pivots are exactly columns 0..8.
  std::array<Rational, 9> sol;
  for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = m[r][9];
  result.solution = sol;
  K0Coordinates coords{};
  for (std::size_t j = 0; j < 9; ++j) {
    if (!sol[j].is_integer()) {
      result.status = DecomposeStatus::non_integer;
      return result;
    }
    coords[j] = sol[j].num();
  }
  result.status = DecomposeStatus::ok;
  result.coordinates = coords;
  return result;
}

KScalar trace_of(const K0Coordinates& coords) {
  KScalar t;
  const auto& basis = basis_vectors();
  for (std::size_t j = 0; j < 9; ++j) t += Rational(coords[j]) * basis[j].tau;
  return t;
}

K0Coordinates semiflat_coordinates(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t n4,
                                   std::int64_t n9) {
  return {n1, n2, n3, n4, n2, n3, n9 - n3, 2 * n2 + n3, n9};
}

Genus semiflat_genus(const K0Coordinates& c) {
  return {Rational(2 * c[0] - c[1] + c[8]), Rational(2 * c[3] - c[1] + c[8]), Rational(2 * c[8] - 2 * c[1] - 2 * c[2])};
}

std::string_view reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::none:
      return "none";
    case RejectReason::not_in_lattice:
      return "not-in-lattice";
    case RejectReason::psi10_nonzero:
      return "psi10-nonzero";
    case RejectReason::psi11_nonzero:
      return "psi11-nonzero";
    case RejectReason::nonpositive_trace:
      return "nonpositive-trace";
  }
  return "unknown";
}

MembershipDecision semiflat_membership(const ChernVector& v, const ThetaParam& theta) {
  MembershipDecision d;
  auto dec = decompose(v);
  if (dec.status != DecomposeStatus::ok) {
    d.reason = RejectReason::not_in_lattice;
    return d;
  }
  const K0Coordinates& c = *dec.coordinates;
  d.coordinates = c;
  if (!v.psi10.is_zero()) {
    d.reason = RejectReason::psi10_nonzero;
    return d;
  }
  if (!v.psi11.is_zero()) {
    d.reason = RejectReason::psi11_nonzero;
    return d;
  }
  d.relations_hold = c[5] == c[2] && c[4] == c[1] && c[6] == c[8] - c[2] && c[7] == 2 * c[1] + c[2];
  d.genus = semiflat_genus(c);
  if (!(Genus{v.psi20.a, v.psi21.a, v.psi22.a} == *d.genus)) d.relations_hold = false;
  if (!v.tau.is_real() || theta.sign_of(v.tau.a, v.tau.b) <= 0) {
    d.reason = RejectReason::nonpositive_trace;
    return d;
  }
  d.member = true;
  d.recipe = synthesis_recipe(v, theta);
  return d;
}

QuantizationReport quantization_check(const ChernVector& v) {
  QuantizationReport rep;
  auto fail = [&rep](std::size_t slot, const std::string& why) {
    rep.slot_ok[slot] = false;
    if (rep.pass) rep.detail = why;
    rep.pass = false;
  };
  // x + iy = p + q (1 - i)/2  <=>  q = -2y, p = x + y.
  auto check_gaussian_lattice = [&](std::size_t slot, const KScalar& s, const char* name) {
    if (!s.is_theta_free()) return fail(slot, std::string(name) + " has a theta component");
    Rational q = Rational(-2) * s.c;
    Rational p = s.a + s.c;
    if (!q.is_integer() || !p.is_integer()) fail(slot, std::string(name) + " = " + s.str() + " not in Z + Z(1-i)/2");
  };
  auto check_real_multiple = [&](std::size_t slot, const KScalar& s, const Rational& unit, const char* name) {
    if (!s.is_theta_free() || !s.is_real()) return fail(slot, std::string(name) + " is not a real rational");
    if (!(s.a / unit).is_integer()) fail(slot, std::string(name) + " = " + s.str() + " not in " + unit.str() + "Z");
  };
  check_gaussian_lattice(0, v.psi10, "psi10");
  check_gaussian_lattice(1, v.psi11, "psi11");
  check_real_multiple(2, v.psi20, kHalf, "psi20");
  check_real_multiple(3, v.psi21, kHalf, "psi21");
  check_real_multiple(4, v.psi22, Rational(1), "psi22");
  return rep;
}

std::optional<std::array<std::int64_t, 3>> genus_basis_decompose(const Genus& g) {
  if (!g.g20.is_integer() || !g.g21.is_integer() || !g.g22.is_integer()) return std::nullopt;
  const std::int64_t g20 = g.g20.num(), g21 = g.g21.num(), g22 = g.g22.num();
  if ((g20 - g21) % 2 != 0 || g22 % 2 != 0) return std::nullopt;
  // c2 is forced by the middle slot, then c1 and c3 by the outer ones.
  const std::int64_t c2 = g21;
  return std::array<std::int64_t, 3>{(g20 - g21) / 2, c2, (g22 - 2 * c2) / 2};
}

ChernVector recipe_sum(const SynthesisRecipe& recipe) {
  ChernVector total;
  for (const auto& gen : recipe.generators) {
    ChernVector one;
    one.tau = KScalar::real(gen.trace_a, gen.trace_b);
    one.psi20 = KScalar::real(gen.genus.g20);
    one.psi21 = KScalar::real(gen.genus.g21);
    one.psi22 = KScalar::real(gen.genus.g22);
    total = total + Rational(gen.count) * one;
  }
  total.tau += KScalar::real(recipe.flat_a, recipe.flat_b);
  return total;
}

namespace {

struct BasicGenerator {
  int index;         // coefficient N_index
  std::size_t slot;  // position in K0Coordinates
  std::int64_t trace_a;
  std::int64_t trace_b;
  Genus genus;
};

// Generators of the semiflat decomposition: each free coefficient multiplies
// a class (trace; 0,0; genus).
const std::array<BasicGenerator, 5>& basic_generators() {
  static const std::array<BasicGenerator, 5> gens{{
      {1, 0, 2, 0, {2, 0, 0}},
      {2, 1, 4, 2, {-1, -1, -2}},
      {3, 2, 2, 0, {0, 0, -2}},
      {4, 3, 2, 0, {0, 2, 0}},
      {9, 8, 0, 2, {1, 1, 2}},
  }};
  return gens;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

}  // namespace

SynthesisRecipe synthesis_recipe(const ChernVector& v, const ThetaParam& theta) {
  auto dec = decompose(v);
  if (dec.status != DecomposeStatus::ok) throw SynthesisError("vector is not in the T4 lattice");
  if (!v.psi10.is_zero() || !v.psi11.is_zero()) throw SynthesisError("psi10 and psi11 must vanish");
  if (!v.tau.is_real() || theta.sign_of(v.tau.a, v.tau.b) <= 0) throw SynthesisError("trace must be positive");
  const K0Coordinates& c = *dec.coordinates;
  const std::int64_t total_a = v.tau.a.to_integer();
  const std::int64_t total_b = v.tau.b.to_integer();

  std::int64_t copies = 0;
  for (const auto& g : basic_generators()) copies += std::llabs(c[g.slot]);

  SynthesisRecipe recipe;
  std::int64_t used_a = 0, used_b = 0;
  for (const auto& g : basic_generators()) {
    const std::int64_t n = c[g.slot];
    if (n == 0) continue;
    const std::int64_t s = n > 0 ? 1 : -1;
    RecipeGenerator gen;
    gen.basis_index = g.index;
    gen.count = std::llabs(n);
    gen.negated = s < 0;
    gen.genus = {Rational(s) * g.genus.g20, Rational(s) * g.genus.g21, Rational(s) * g.genus.g22};
    // One copy: trace in s*tau(G) + 4Z + 4Z theta with 0 < t and copies * t <= tau(v).
    const std::int64_t a0 = s * g.trace_a, b0 = s * g.trace_b;
    auto fits = [&](std::int64_t a, std::int64_t b) {
      return theta.sign_of(a, b) > 0 && theta.sign_of(total_a - copies * a, total_b - copies * b) >= 0;
    };
    bool found = false;
    if (fits(a0, b0)) {
      gen.trace_a = a0;
      gen.trace_b = b0;
      found = true;
    }
    for (std::int64_t step = 0; !found && step < 4'000'000; ++step) {
      // j = 0, 1, -1, 2, -2, ...
      const std::int64_t j = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
      const std::int64_t b = b0 + 4 * j;
      // Largest a = a0 (mod 4) with copies * (a + b theta) <= tau(v).
      const std::int64_t fl = theta.floor_of(total_a - copies * a0, total_b - copies * b);
      const std::int64_t a = a0 + 4 * floor_div(fl, 4 * copies);
      if (fits(a, b)) {
        gen.trace_a = a;
        gen.trace_b = b;
        found = true;
      }
    }
    if (!found) throw SynthesisError("no generator trace found within the search bound");
    used_a += gen.count * gen.trace_a;
    used_b += gen.count * gen.trace_b;
    recipe.generators.push_back(gen);
  }
  recipe.flat_a = total_a - used_a;
  recipe.flat_b = total_b - used_b;
  if (mod4(recipe.flat_a) != 0 || mod4(recipe.flat_b) != 0) {
    throw SynthesisError("internal assertion: flat remainder " + std::to_string(recipe.flat_a) + " + " +
                         std::to_string(recipe.flat_b) + "t is not in 4Z + 4Zt");
  }
  if (theta.sign_of(recipe.flat_a, recipe.flat_b) < 0) throw SynthesisError("internal assertion: negative remainder");
  if (!(recipe_sum(recipe) == v)) throw SynthesisError("internal assertion: recipe does not reproduce the vector");
  return recipe;
}

}  // namespace rotalg
