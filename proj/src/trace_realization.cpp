#include "rotalg/trace_realization.hpp"

#include <cmath>
#include <numeric>

namespace rotalg {

namespace {

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool even(std::int64_t v) { return v % 2 == 0; }

std::int64_t mul(std::int64_t x, std::int64_t y) { return checked_narrow(static_cast<__int128>(x) * y); }

int sign(const ThetaParam& theta, std::int64_t a, std::int64_t b) { return theta.sign_of(Rational(a), Rational(b)); }

// 0 < t < hi_num/hi_den.
bool in_open_interval(const ThetaParam& theta, const TraceValue& t, std::int64_t hi_num, std::int64_t hi_den) {
  return sign(theta, t.a, t.b) > 0 && sign(theta, hi_num - mul(hi_den, t.a), -mul(hi_den, t.b)) > 0;
}

void require_interval(const ThetaParam& theta, const TraceValue& t, std::int64_t hi_num, std::int64_t hi_den) {
  if (!in_open_interval(theta, t, hi_num, hi_den)) {
    throw RealizeError(RealizeErrorCode::out_of_range, "trace " + t.str() + " is not in (0, " +
                                                           std::to_string(hi_num) + "/" + std::to_string(hi_den) + ")");
  }
}

Certificate make(const TraceValue& t, const ThetaParam& theta, CertificateNode node,
                 std::vector<Certificate> children = {}) {
  return Certificate{t, theta.eval(t.a, t.b), std::move(node), std::move(children)};
}

Certificate realize_flat(const TraceValue& t, const ThetaParam& theta);

Certificate realize_flat_canonical(const TraceValue& t, const ThetaParam& theta) {
  FlatDecomposition d = flat_decompose(t, theta);
  std::vector<Certificate> parts;
  parts.push_back(make({-mul(d.a, d.lower.p), mul(d.a, d.lower.q)}, theta, CyclicLeaf{d.a, d.lower}));
  parts.push_back(make({mul(d.b, d.upper.p), -mul(d.b, d.upper.q)}, theta, CyclicLeaf{d.b, d.upper}));
  return make(t, theta, FlatNode{d}, std::move(parts));
}

Certificate reflect(const TraceValue& t, const ThetaParam& theta,
                    Certificate (*inner)(const TraceValue&, const ThetaParam&)) {
  const ThetaParam flipped = theta.reflected();
  std::vector<Certificate> child;
  child.push_back(inner({t.a + t.b, -t.b}, flipped));
  return make(t, theta, ReflectedNode{}, std::move(child));
}

Certificate realize_flat(const TraceValue& t, const ThetaParam& theta) {
  if (t.a % 4 != 0 || t.b % 4 != 0) {
    throw RealizeError(RealizeErrorCode::wrong_subgroup, "flat trace " + t.str() + " is not in 4Z + 4Zt");
  }
  require_interval(theta, t, 1, 1);
  if (t.b < 0) return reflect(t, theta, realize_flat_canonical);
  return realize_flat_canonical(t, theta);
}

Certificate realize_cyclic(const TraceValue& t, const ThetaParam& theta) {
  require_interval(theta, t, 1, 4);
  std::vector<Certificate> child;
  child.push_back(realize_flat({4 * t.a, 4 * t.b}, theta));
  return make(t, theta, CyclicNode{}, std::move(child));
}

Certificate realize_semicyclic(const TraceValue& t, const ThetaParam& theta) {
  require_interval(theta, t, 1, 2);
  TraceValue doubled = t;
  if (!even(t.a) || !even(t.b)) {
    // Smallest |v| admitting D = 2u + 2v theta in [t, 1/2).
    bool found = false;
    for (std::int64_t step = 0; step < 2'000'000 && !found; ++step) {
      const std::int64_t v = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
      // u >= (t.a + (t.b - 2v) theta) / 2, smallest such integer.
      const std::int64_t fl = theta.floor_of(-t.a, -(t.b - 2 * v));
      const std::int64_t u = -floor_div(fl, 2);
      const TraceValue cand{2 * u, 2 * v};
      if (sign(theta, cand.a - t.a, cand.b - t.b) >= 0 && in_open_interval(theta, cand, 1, 2)) {
        doubled = cand;
        found = true;
      }
    }
    if (!found) throw RealizeError(RealizeErrorCode::internal_assertion, "no doubled trace found above " + t.str());
  }
  std::vector<Certificate> child;
  child.push_back(realize_cyclic({doubled.a / 2, doubled.b / 2}, theta));
  return make(t, theta, SemicyclicNode{doubled}, std::move(child));
}

Certificate realize_semiflat(const TraceValue& t, const ThetaParam& theta) {
  if (!even(t.a) || !even(t.b)) {
    throw RealizeError(RealizeErrorCode::wrong_subgroup, "semiflat trace " + t.str() + " is not in 2Z + 2Zt");
  }
  require_interval(theta, t, 1, 1);
  std::vector<Certificate> child;
  child.push_back(realize_semicyclic({t.a / 2, t.b / 2}, theta));
  return make(t, theta, SemiflatNode{}, std::move(child));
}

EmbeddingLeg make_leg(std::int64_t r1, std::int64_t r2, const ThetaParam& theta) {
  EmbeddingLeg leg{r1, r2, r1 * r1 + r2 * r2, 0};
  leg.floor_n = theta.floor_of(0, leg.weight);
  return leg;
}

Certificate realize_fourier_canonical(const TraceValue& t, const ThetaParam& theta) {
  FourierInvariantNode node;
  node.m = t.b;
  node.n = -t.a;
  node.squares = four_squares(node.m);
  node.leg1 = make_leg(node.squares.m1, node.squares.m2, theta);
  node.leg2 = make_leg(node.squares.m3, node.squares.m4, theta);
  node.k = node.n - node.leg1.floor_n - node.leg2.floor_n;
  if (node.k != 0 && node.k != 1) {
    throw RealizeError(RealizeErrorCode::internal_assertion, "branch k = " + std::to_string(node.k) + " not in {0,1}");
  }
  return make(t, theta, node);
}

Certificate realize_fourier_invariant(const TraceValue& t, const ThetaParam& theta) {
  require_interval(theta, t, 1, 1);
  if (t.b < 0) return reflect(t, theta, realize_fourier_canonical);
  return realize_fourier_canonical(t, theta);
}

// ---- verification ----

struct Verifier {
  double tol;
  VerifyReport report;

  bool fail(const std::string& path, const std::string& msg) {
    if (report.pass) {
      report.pass = false;
      report.failing_node = path;
      report.message = msg;
    }
    return false;
  }

  bool children_count(const Certificate& c, std::size_t n, const std::string& path) {
    if (c.children.size() != n) {
      return fail(path, "expected " + std::to_string(n) + " children, found " + std::to_string(c.children.size()));
    }
    return true;
  }

  bool check(const Certificate& c, const ThetaParam& theta, const std::string& path) {
    ++report.nodes_checked;
    if (!std::isfinite(c.value) || std::abs(c.value - theta.eval(c.target.a, c.target.b)) > tol) {
      return fail(path, "numeric value does not match the target trace");
    }
    return std::visit([&](const auto& node) { return check_node(node, c, theta, path); }, c.node);
  }

  bool check_child(const Certificate& c, std::size_t idx, const ThetaParam& theta, const std::string& path) {
    return check(c.children[idx], theta, path + "/children[" + std::to_string(idx) + "]");
  }

  bool check_node(const CyclicLeaf& leaf, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 0, path)) return false;
    const auto [p, q] = leaf.approximant;
    if (q < 1 || std::gcd(p, q) != 1) return fail(path, "approximant is not a reduced fraction");
    if (leaf.k < 1) return fail(path, "multiplicity k must be positive");
    const int s = sign(theta, -p, q);  // sign of q theta - p
    // 0 < q |q theta - p| < 1
    if (sign(theta, 1 + s * mul(q, p), -s * mul(q, q)) <= 0) return fail(path, "q|q theta - p| >= 1");
    // k |q theta - p| < 1/4
    if (sign(theta, 1 + 4 * s * mul(leaf.k, p), -4 * s * mul(leaf.k, q)) <= 0) {
      return fail(path, "k|q theta - p| >= 1/4");
    }
    if (!(c.target == TraceValue{-s * mul(leaf.k, p), s * mul(leaf.k, q)})) {
      return fail(path, "target differs from k|q theta - p|");
    }
    return true;
  }

  bool check_node(const FlatNode& flat, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 2, path)) return false;
    const auto& d = flat.decomposition;
    const auto [p, q] = d.lower;
    const auto [pp, qq] = d.upper;
    if (d.k < 1 || d.n < 1 || d.m < 0) return fail(path, "k, n must be positive and m non-negative");
    if (!(c.target == TraceValue{-4 * mul(d.k, d.m), 4 * mul(d.k, d.n)})) return fail(path, "target != 4k(n theta - m)");
    if (!in_open_interval(theta, c.target, 1, 1)) return fail(path, "target not in (0,1)");
    if (q < 1 || qq < 1) return fail(path, "convergent denominators must be positive");
    if (mul(d.m, q) >= mul(p, d.n)) return fail(path, "m/n < p/q fails");
    if (sign(theta, -p, q) <= 0) return fail(path, "p/q < theta fails");
    if (sign(theta, pp, -qq) <= 0) return fail(path, "theta < p'/q' fails");
    if (mul(pp, q) - mul(p, qq) != 1) return fail(path, "p'q - pq' != 1");
    if (d.a != mul(d.k, mul(d.n, pp) - mul(d.m, qq))) return fail(path, "a != k(np' - mq')");
    if (d.b != mul(d.k, mul(d.n, p) - mul(d.m, q))) return fail(path, "b != k(np - mq)");
    if (d.a < 1 || d.b < 1) return fail(path, "a and b must be positive");
    const TraceValue sum{-4 * mul(d.a, p) + 4 * mul(d.b, pp), 4 * mul(d.a, q) - 4 * mul(d.b, qq)};
    if (!(sum == c.target)) return fail(path, "4a(q theta - p) + 4b(p' - q' theta) != target");
    for (std::size_t i = 0; i < 2; ++i) {
      const auto* leaf = std::get_if<CyclicLeaf>(&c.children[i].node);
      const std::int64_t want_k = i == 0 ? d.a : d.b;
      const Convergent want_c = i == 0 ? d.lower : d.upper;
      if (leaf == nullptr || leaf->k != want_k || !(leaf->approximant == want_c)) {
        return fail(path + "/children[" + std::to_string(i) + "]", "cyclic leaf does not match the decomposition");
      }
      if (!check_child(c, i, theta, path)) return false;
    }
    return true;
  }

  bool check_node(const CyclicNode&, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 1, path)) return false;
    if (!in_open_interval(theta, c.target, 1, 4)) return fail(path, "cyclic target not in (0, 1/4)");
    const Certificate& child = c.children[0];
    if (!std::holds_alternative<FlatNode>(child.node) && !std::holds_alternative<ReflectedNode>(child.node)) {
      return fail(path, "child must be a flat certificate");
    }
    if (!(child.target == TraceValue{4 * c.target.a, 4 * c.target.b})) return fail(path, "flat child trace != 4t");
    return check_child(c, 0, theta, path);
  }

  bool check_node(const SemicyclicNode& node, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 1, path)) return false;
    if (!in_open_interval(theta, c.target, 1, 2)) return fail(path, "semicyclic target not in (0, 1/2)");
    const TraceValue& d = node.doubled;
    if (!even(d.a) || !even(d.b)) return fail(path, "doubled trace not in 2Z + 2Z theta");
    if (!in_open_interval(theta, d, 1, 2)) return fail(path, "doubled trace not in (0, 1/2)");
    if (sign(theta, d.a - c.target.a, d.b - c.target.b) < 0) return fail(path, "target exceeds doubled trace");
    const Certificate& child = c.children[0];
    if (!std::holds_alternative<CyclicNode>(child.node)) return fail(path, "child must be a cyclic certificate");
    if (!(child.target == TraceValue{d.a / 2, d.b / 2})) return fail(path, "cyclic child trace != doubled / 2");
    return check_child(c, 0, theta, path);
  }

  bool check_node(const SemiflatNode&, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 1, path)) return false;
    if (!even(c.target.a) || !even(c.target.b)) return fail(path, "semiflat target not in 2Z + 2Z theta");
    if (!in_open_interval(theta, c.target, 1, 1)) return fail(path, "semiflat target not in (0,1)");
    const Certificate& child = c.children[0];
    if (!std::holds_alternative<SemicyclicNode>(child.node)) return fail(path, "child must be semicyclic");
    if (!(child.target == TraceValue{c.target.a / 2, c.target.b / 2})) return fail(path, "semicyclic child != t/2");
    return check_child(c, 0, theta, path);
  }

  bool check_leg(const EmbeddingLeg& leg, std::int64_t r1, std::int64_t r2, const ThetaParam& theta,
                 const std::string& path) {
    if (leg.root1 != r1 || leg.root2 != r2) return fail(path, "leg roots do not match the squares");
    if (leg.weight != r1 * r1 + r2 * r2) return fail(path, "leg weight != root1^2 + root2^2");
    if (leg.floor_n != theta.floor_of(0, leg.weight)) return fail(path, "leg floor is not floor(weight * theta)");
    if (leg.weight > 0) {
      auto gens = subalgebra_generators(r1, r2, theta);
      if (!(gens.theta_prime == TraceValue{-leg.floor_n, leg.weight})) return fail(path, "leg theta' mismatch");
      if (!subalgebra_relations_hold(r1, r2, gens)) return fail(path, "embedded generator relations fail");
    }
    return true;
  }

  bool check_node(const FourierInvariantNode& node, const Certificate& c, const ThetaParam& theta,
                  const std::string& path) {
    if (!children_count(c, 0, path)) return false;
    if (node.m < 1) return fail(path, "m must be positive");
    if (!(c.target == TraceValue{-node.n, node.m})) return fail(path, "target != m theta - n");
    if (!in_open_interval(theta, c.target, 1, 1)) return fail(path, "target not in (0,1)");
    const auto& s = node.squares;
    if (s.m4 < 0 || s.m4 > s.m3 || s.m3 > s.m2 || s.m2 > s.m1) return fail(path, "squares not sorted descending");
    if (s.m1 * s.m1 + s.m2 * s.m2 + s.m3 * s.m3 + s.m4 * s.m4 != node.m) return fail(path, "sum of squares != m");
    if (!check_leg(node.leg1, s.m1, s.m2, theta, path + "/leg1")) return false;
    if (!check_leg(node.leg2, s.m3, s.m4, theta, path + "/leg2")) return false;
    if (node.k != node.n - node.leg1.floor_n - node.leg2.floor_n) return fail(path, "k != n - n1 - n2");
    if (node.k != 0 && node.k != 1) return fail(path, "k not in {0,1}");
    return true;
  }

  bool check_node(const ReflectedNode&, const Certificate& c, const ThetaParam& theta, const std::string& path) {
    if (!children_count(c, 1, path)) return false;
    const Certificate& child = c.children[0];
    if (!(child.target == TraceValue{c.target.a + c.target.b, -c.target.b})) {
      return fail(path, "reflected child target != (a + b, -b)");
    }
    return check_child(c, 0, theta.reflected(), path);
  }
};

}  // namespace

std::string TraceValue::str() const {
  std::string s = std::to_string(a);
  s += b < 0 ? "-" : "+";
  s += std::to_string(b < 0 ? -b : b) + "t";
  return s;
}

std::vector<Convergent> convergents(const ThetaParam& theta, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("convergent depth must be at least 1");
  return theta.convergents(depth);
}

FourSquares four_squares(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("four_squares needs m >= 0");
  for (std::int64_t m1 = isqrt(m); m1 >= 0; --m1) {
    const std::int64_t r1 = m - m1 * m1;
    if (r1 > 3 * m1 * m1) break;
    for (std::int64_t m2 = std::min(m1, isqrt(r1)); m2 >= 0; --m2) {
      const std::int64_t r2 = r1 - m2 * m2;
      if (r2 > 2 * m2 * m2) break;
      for (std::int64_t m3 = std::min(m2, isqrt(r2)); m3 >= 0; --m3) {
        const std::int64_t r3 = r2 - m3 * m3;
        if (r3 > m3 * m3) break;
        const std::int64_t m4 = isqrt(r3);
        if (m4 * m4 == r3) return {m1, m2, m3, m4};
      }
    }
  }
  throw std::logic_error("four_squares: no decomposition for " + std::to_string(m));
}

std::string_view error_code_name(RealizeErrorCode c) {
  switch (c) {
    case RealizeErrorCode::out_of_range:
      return "out-of-range";
    case RealizeErrorCode::wrong_subgroup:
      return "wrong-subgroup";
    case RealizeErrorCode::no_bracketing_convergents:
      return "no-bracketing-convergents";
    case RealizeErrorCode::insufficient_cf_data:
      return "insufficient-cf-data";
    case RealizeErrorCode::internal_assertion:
      return "internal-assertion";
  }
  return "unknown";
}

FlatDecomposition flat_decompose(const TraceValue& t, const ThetaParam& theta, std::size_t depth) {
  if (t.a % 4 != 0 || t.b % 4 != 0) {
    throw RealizeError(RealizeErrorCode::wrong_subgroup, "flat trace " + t.str() + " is not in 4Z + 4Zt");
  }
  require_interval(theta, t, 1, 1);
  if (t.b <= 0) {
    throw RealizeError(RealizeErrorCode::out_of_range, "flat_decompose needs a positive theta coefficient");
  }
  FlatDecomposition d;
  const std::int64_t m0 = -t.a / 4, n0 = t.b / 4;  // t = 4(n0 theta - m0), m0 >= 0 since t < 1
  d.k = std::gcd(n0, m0);
  d.n = n0 / d.k;
  d.m = m0 / d.k;
  const std::size_t usable = std::min(depth, theta.available_convergents());
  if (usable < 2) throw RealizeError(RealizeErrorCode::insufficient_cf_data, "need at least two convergents");
  const auto conv = theta.convergents(usable);
  for (std::size_t j = 0; j + 1 < conv.size(); ++j) {
    Convergent lower = conv[j], upper = conv[j + 1];
    if (j % 2 == 1) std::swap(lower, upper);
    if (mul(d.m, lower.q) < mul(lower.p, d.n)) {
      d.lower = lower;
      d.upper = upper;
      d.a = mul(d.k, mul(d.n, upper.p) - mul(d.m, upper.q));
      d.b = mul(d.k, mul(d.n, lower.p) - mul(d.m, lower.q));
      return d;
    }
  }
  throw RealizeError(RealizeErrorCode::no_bracketing_convergents,
                     "no convergent pair within depth " + std::to_string(usable) + " brackets m/n = " +
                         std::to_string(d.m) + "/" + std::to_string(d.n));
}

SubalgebraGenerators subalgebra_generators(std::int64_t m, std::int64_t n, const ThetaParam& theta) {
  if (m == 0 && n == 0) throw std::invalid_argument("subalgebra_generators needs (m, n) != (0, 0)");
  // e(mn theta/2) = L^{2mn}; V^-n U^m = L^{-4mn} U^m V^-n.
  SubalgebraGenerators g;
  g.u = Element::monomial(m, -n, PhaseScalar::lambda_pow(-2 * m * n));
  g.v = Element::monomial(n, m, PhaseScalar::lambda_pow(2 * m * n));
  const std::int64_t w = m * m + n * n;
  g.theta_prime = {-theta.floor_of(0, w), w};
  return g;
}

bool subalgebra_relations_hold(std::int64_t m, std::int64_t n, const SubalgebraGenerators& g) {
  const std::int64_t w = m * m + n * n;
  if (!(g.v * g.u == PhaseScalar::lambda_pow(4 * w) * (g.u * g.v))) return false;
  const Element v_inv = star(g.v);
  if (!(g.v * v_inv == Element(1))) return false;
  if (!(apply_automorphism(Automorphism::sigma, g.u) == v_inv)) return false;
  return apply_automorphism(Automorphism::sigma, g.v) == g.u;
}

std::string_view kind_name(RealizeKind k) {
  switch (k) {
    case RealizeKind::cyclic:
      return "cyclic";
    case RealizeKind::semicyclic:
      return "semicyclic";
    case RealizeKind::flat:
      return "flat";
    case RealizeKind::semiflat:
      return "semiflat";
    case RealizeKind::fourier_invariant:
      return "fourier_invariant";
  }
  return "?";
}

RealizeKind parse_kind(std::string_view name) {
  for (RealizeKind k : {RealizeKind::cyclic, RealizeKind::semicyclic, RealizeKind::flat, RealizeKind::semiflat,
                        RealizeKind::fourier_invariant}) {
    if (kind_name(k) == name) return k;
  }
  if (name == "fourier-invariant") return RealizeKind::fourier_invariant;
  throw std::invalid_argument("unknown realization kind '" + std::string(name) + "'");
}

std::string_view lemma_tag(const Certificate& c) {
  struct Tag {
    std::string_view operator()(const CyclicLeaf&) const { return "cyclic-from-rational-approximant"; }
    std::string_view operator()(const FlatNode&) const { return "flat-convergent-split"; }
    std::string_view operator()(const CyclicNode&) const { return "cyclic-from-quadrupled-flat"; }
    std::string_view operator()(const SemicyclicNode&) const { return "semicyclic-flip-invariant-subprojection"; }
    std::string_view operator()(const SemiflatNode&) const { return "semiflat-from-semicyclic"; }
    std::string_view operator()(const FourierInvariantNode&) const { return "fourier-invariant-four-squares"; }
    std::string_view operator()(const ReflectedNode&) const { return "theta-reflection"; }
  };
  return std::visit(Tag{}, c.node);
}

Certificate realize(RealizeKind kind, const TraceValue& t, const ThetaParam& theta) {
  try {
    switch (kind) {
      case RealizeKind::cyclic:
        return realize_cyclic(t, theta);
      case RealizeKind::semicyclic:
        return realize_semicyclic(t, theta);
      case RealizeKind::flat:
        return realize_flat(t, theta);
      case RealizeKind::semiflat:
        return realize_semiflat(t, theta);
      case RealizeKind::fourier_invariant:
        return realize_fourier_invariant(t, theta);
    }
  } catch (const InsufficientCfData& e) {
    throw RealizeError(RealizeErrorCode::insufficient_cf_data, e.what());
  } catch (const std::overflow_error& e) {
    throw RealizeError(RealizeErrorCode::insufficient_cf_data, e.what());
  }
  throw RealizeError(RealizeErrorCode::internal_assertion, "unknown kind");
}

VerifyReport verify_certificate(const Certificate& c, const ThetaParam& theta, double tol) {
  Verifier v{tol, {}};
  try {
    v.check(c, theta, "root");
  } catch (const std::exception& e) {
    v.fail("root", std::string("verification aborted: ") + e.what());
  }
  return v.report;
}

}  // namespace rotalg
