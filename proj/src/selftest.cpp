#include "rotalg/selftest.hpp"

#include <functional>

#include "rotalg/chern_lattice.hpp"
#include "rotalg/trace_functionals.hpp"

namespace rotalg {

namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Element sigma(const Element& x) { return apply_automorphism(Automorphism::sigma, x); }
Element flip(const Element& x) { return apply_automorphism(Automorphism::flip, x); }
Element gamma(const Element& x) { return apply_automorphism(Automorphism::gamma, x); }

}  // namespace

Element random_element(std::mt19937_64& rng, const RandomElementShape& shape) {
  Element x;
  const auto terms = uniform(rng, 1, shape.max_terms);
  for (std::int64_t t = 0; t < terms; ++t) {
    GaussRational c(Rational(uniform(rng, -shape.max_coefficient, shape.max_coefficient)),
                    Rational(uniform(rng, -shape.max_coefficient, shape.max_coefficient)));
    if (c.re.is_zero() && c.im.is_zero()) c = GaussRational(1);
    const auto k = uniform(rng, -shape.max_lambda_power, shape.max_lambda_power);
    x += Element::monomial(uniform(rng, -shape.max_exponent, shape.max_exponent),
                           uniform(rng, -shape.max_exponent, shape.max_exponent), PhaseScalar::lambda_pow(k, c));
  }
  return x;
}

std::vector<SuiteResult> algebra_law_suites(std::uint64_t seed, std::size_t cases) {
  struct Law {
    const char* name;
    std::function<bool(const Element&, const Element&, const Element&)> holds;
  };
  const Law laws[] = {
      {"associativity", [](auto& x, auto& y, auto& z) { return (x * y) * z == x * (y * z); }},
      {"left distributivity", [](auto& x, auto& y, auto& z) { return x * (y + z) == x * y + x * z; }},
      {"right distributivity", [](auto& x, auto& y, auto& z) { return (x + y) * z == x * z + y * z; }},
      {"star involution", [](auto& x, auto&, auto&) { return star(star(x)) == x; }},
      {"star antimultiplicative", [](auto& x, auto& y, auto&) { return star(x * y) == star(y) * star(x); }},
      {"star additive", [](auto& x, auto& y, auto&) { return star(x + y) == star(x) + star(y); }},
      {"sigma multiplicative", [](auto& x, auto& y, auto&) { return sigma(x * y) == sigma(x) * sigma(y); }},
      {"sigma star-preserving", [](auto& x, auto&, auto&) { return sigma(star(x)) == star(sigma(x)); }},
      {"sigma^4 = id", [](auto& x, auto&, auto&) { return sigma(sigma(sigma(sigma(x)))) == x; }},
      {"sigma^2 = flip", [](auto& x, auto&, auto&) { return sigma(sigma(x)) == flip(x); }},
      {"gamma sigma = sigma gamma", [](auto& x, auto&, auto&) { return gamma(sigma(x)) == sigma(gamma(x)); }},
      {"trace cyclic", [](auto& x, auto& y, auto&) { return canonical_trace(x * y) == canonical_trace(y * x); }},
  };
  std::vector<SuiteResult> out;
  for (const auto& law : laws) {
    std::mt19937_64 rng(seed);
    SuiteResult r{law.name, true, 0, {}};
    for (std::size_t c = 0; c < cases; ++c) {
      const Element x = random_element(rng), y = random_element(rng), z = random_element(rng);
      ++r.cases;
      if (!law.holds(x, y, z)) {
        r.pass = false;
        r.detail = "x = " + x.str() + "; y = " + y.str() + "; z = " + z.str();
        break;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

SuiteResult twisted_trace_suite(int bound) {
  SuiteResult r{"phi_ij(xy) = phi_ij(flip(y)x)", true, 0, {}};
  std::vector<Element> monos;
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) monos.push_back(Element::monomial(m, n));
  }
  for (PhiIndex ij : kAllPhi) {
    for (const auto& x : monos) {
      for (const auto& y : monos) {
        ++r.cases;
        if (!(phi_eval(ij, x * y) == phi_eval(ij, flip(y) * x))) {
          r.pass = false;
          r.detail = std::string(name_of(ij)) + " fails at x = " + x.str() + ", y = " + y.str();
          return r;
        }
      }
    }
  }
  return r;
}

SuiteResult relation_suite(int bound, std::uint64_t seed) {
  SuiteResult r{"psi/phi relations and gamma sign laws", true, 0, {}};
  auto check = [&](const Element& x) {
    ++r.cases;
    if (auto fail = relation_check(x)) {
      r.pass = false;
      r.detail = fail->identity + " fails on " + x.str();
      return false;
    }
    return true;
  };
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) {
      if (!check(Element::monomial(m, n))) return r;
    }
  }
  std::mt19937_64 rng(seed);
  for (int c = 0; c < 200; ++c) {
    if (!check(random_element(rng, {6, bound, 6, 3}))) return r;
  }
  return r;
}

SuiteResult unit_value_suite() {
  SuiteResult r{"unit values and lattice basis", true, 4, {}};
  const Element one(1);
  const T4Vector t4 = chern_T4(one);
  const T2Vector t2 = chern_T2(one);
  if (!(t4 == T4Vector{1, 1, 0, 1, 0, 0})) {
    r.pass = false;
    r.detail = "T4(1) differs from (1; 1, 0; 1, 0, 0)";
  } else if (!(t2 == T2Vector{1, 1, 0, 0, 0})) {
    r.pass = false;
    r.detail = "T2(1) differs from (1; 1, 0, 0, 0)";
  } else if (basis_rank() != 9) {
    r.pass = false;
    r.detail = "basis rank " + std::to_string(basis_rank()) + " != 9";
  } else {
    const ChernVector unit = ChernVector::from_slots(
        {KScalar::real(1), KScalar::real(1), KScalar{}, KScalar::real(1), KScalar{}, KScalar{}});
    const auto d = decompose(unit);
    if (!d.coordinates || *d.coordinates != K0Coordinates{0, 0, 1, 0, 0, 0, 0, 0, 0}) {
      r.pass = false;
      r.detail = "decompose(T4(1)) is not e3";
    }
  }
  return r;
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  std::vector<SuiteResult> out = algebra_law_suites(seed, 200);
  out.push_back(twisted_trace_suite(3));
  out.push_back(relation_suite(4, seed));
  out.push_back(unit_value_suite());
  return out;
}

}  // namespace rotalg
