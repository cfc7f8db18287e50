#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rotalg/json_io.hpp"
#include "rotalg/pr_numeric.hpp"
#include "rotalg/text_format.hpp"
#include "rotalg/trace_functionals.hpp"

using namespace rotalg;

namespace {

const ThetaParam kGolden = ThetaParam::golden();
const ThetaParam kSqrt2 = ThetaParam::sqrt2();
constexpr std::size_t kN = 1024;

// Band-limited random loop element with k in [-2, 2].
LoopElement random_loop(std::mt19937_64& rng, double beta) {
  std::normal_distribution<double> d;
  LoopElement x{beta, kN, {}};
  for (std::int64_t k = -2; k <= 2; ++k) {
    std::vector<std::pair<int, Complex>> modes;
    for (int m = -6; m <= 6; ++m) modes.emplace_back(m, Complex(d(rng), d(rng)) / 8.0);
    x.coeffs.emplace(k, CircleFunction::sample(kN, [&](double t) {
                       Complex s{};
                       for (auto [m, c] : modes) s += c * std::polar(1.0, 2 * std::numbers::pi * m * t);
                       return s;
                     }));
  }
  return x;
}

double coeff_distance(const LoopElement& a, const LoopElement& b) { return loop_norm(loop_sub(a, b)); }

}  // namespace

TEST(CircleFunction, ShiftMatchesAnalyticShift) {
  const CircleFunction f = CircleFunction::sample(kN, [](double t) { return Complex(std::cos(2 * std::numbers::pi * 3 * t)); });
  const CircleFunction g = f.shift(0.1234);
  const CircleFunction want =
      CircleFunction::sample(kN, [](double t) { return Complex(std::cos(2 * std::numbers::pi * 3 * (t + 0.1234))); });
  EXPECT_LT((g - want).sup_norm(), 1e-13);
  EXPECT_LT((f.shift(0.3).shift(-0.3) - f).sup_norm(), 1e-14);
  EXPECT_THROW(CircleFunction(std::vector<Complex>(100)), NumericError);
}

TEST(Loop, RuleInstantiation) {
  // (f V)(h V^-1) = f h(. + beta)
  const double beta = 0.3;
  const CircleFunction f = CircleFunction::sample(kN, [](double t) { return Complex(std::sin(2 * std::numbers::pi * t)); });
  const CircleFunction h = CircleFunction::sample(kN, [](double t) { return Complex(std::cos(4 * std::numbers::pi * t)); });
  LoopElement x{beta, kN, {{1, f}}}, y{beta, kN, {{-1, h}}};
  const LoopElement p = loop_mul(x, y);
  ASSERT_EQ(p.coeffs.size(), 1u);
  const CircleFunction want = CircleFunction::sample(kN, [&](double t) {
    return Complex(std::sin(2 * std::numbers::pi * t) * std::cos(4 * std::numbers::pi * (t + beta)));
  });
  EXPECT_LT((p.coeffs.at(0) - want).sup_norm(), 1e-13);
}

TEST(Loop, AlgebraLaws) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const LoopElement x = random_loop(rng, 0.618), y = random_loop(rng, 0.618), z = random_loop(rng, 0.618);
    EXPECT_LT(coeff_distance(loop_mul(loop_mul(x, y), z), loop_mul(x, loop_mul(y, z))), 1e-12);
    EXPECT_LT(coeff_distance(loop_star(loop_star(x)), x), 1e-14 * loop_norm(x) + 1e-14);
    EXPECT_LT(coeff_distance(loop_star(loop_mul(x, y)), loop_mul(loop_star(y), loop_star(x))), 1e-12);
    EXPECT_LE(loop_norm(loop_mul(x, y)), loop_norm(x) * loop_norm(y) * (1 + 1e-12));
    EXPECT_LT(coeff_distance(flip_apply(flip_apply(x)), x), 1e-14);
    EXPECT_LT(coeff_distance(flip_apply(loop_mul(x, y)), loop_mul(flip_apply(x), flip_apply(y))), 1e-12);
  }
  LoopElement a{0.1, kN, {}}, b{0.2, kN, {}};
  EXPECT_THROW(loop_mul(a, b), NumericError);
}

TEST(Loop, FlipOfBaseUnitary) {
  const LoopElement w{0.5, kN, {{0, CircleFunction::sample(kN, [](double t) {
                                     return std::polar(1.0, 2 * std::numbers::pi * t);
                                   })}}};
  const LoopElement f = flip_apply(w);
  const CircleFunction want = CircleFunction::sample(kN, [](double t) { return std::polar(1.0, -2 * std::numbers::pi * t); });
  EXPECT_LT((f.coeffs.at(0) - want).sup_norm(), 1e-15);
}

TEST(Loop, FlipAgreesWithExactEngine) {
  for (const char* text : {"U^2 V", "U^3 V^-2", "L^3 U^-4 V + (1/2+i) V^-1"}) {
    for (std::int64_t r : {1, 2}) {
      const Element x = parse_element(text);
      bool divisible = true;
      for (const auto& [mono, c] : x.terms()) divisible = divisible && mono.m % r == 0;
      if (!divisible) {
        EXPECT_THROW(loop_from_element(x, r, kGolden, kN), std::invalid_argument);
        continue;
      }
      const LoopElement lx = loop_from_element(x, r, kGolden, kN);
      const LoopElement via_exact = loop_from_element(apply_automorphism(Automorphism::flip, x), r, kGolden, kN);
      EXPECT_LT(coeff_distance(flip_apply(lx), via_exact), 1e-13) << text << " r=" << r;
    }
  }
}

TEST(Loop, ProductAgreesWithExactEngine) {
  const Element x = Element::monomial(2, 1, PhaseScalar::lambda_pow(1)) + Element::monomial(-2, 0);
  const Element y = Element::monomial(4, -1) + Element::monomial(0, 2, PhaseScalar::lambda_pow(-3));
  for (const ThetaParam* th : {&kGolden, &kSqrt2}) {
    const LoopElement lx = loop_from_element(x, 2, *th, kN), ly = loop_from_element(y, 2, *th, kN);
    const LoopElement exact = loop_from_element(x * y, 2, *th, kN);
    EXPECT_LT(coeff_distance(loop_mul(lx, ly), exact), 1e-12);
    EXPECT_LT(coeff_distance(loop_star(lx), loop_from_element(star(x), 2, *th, kN)), 1e-12);
  }
}

TEST(Loop, InvariantsAgreeWithExactFunctionals) {
  const Element x = Element::monomial(2, 1, PhaseScalar::lambda_pow(1)) + Element::monomial(-3, 0, 2) +
                    Element::monomial(1, -1) + Element::monomial(0, 2, PhaseScalar::lambda_pow(5));
  for (const ThetaParam* th : {&kGolden, &kSqrt2}) {
    const LoopInvariants inv = loop_invariants(loop_from_element(x, 1, *th, kN), *th, 1);
    EXPECT_LT(std::abs(inv.tau.raw - numeric_eval(canonical_trace(x), *th)), 1e-13);
    for (std::size_t q = 0; q < 4; ++q) {
      EXPECT_LT(std::abs(inv.phi[q].raw - numeric_eval(phi_eval(kAllPhi[q], x), *th)), 1e-12) << q;
    }
  }
}

TEST(Bumps, IdentitiesAndIntegral) {
  const double alpha = kGolden.value();
  const BumpPair bp = bump_pair(alpha, 0.1, 4096);
  for (double r : bump_identity_residuals(bp, alpha)) EXPECT_LT(r, 1e-10);
  EXPECT_NEAR(bp.f.mean().real(), alpha, 1e-10);
  for (const auto& z : bp.f.samples()) {
    EXPECT_GE(z.real(), 0.0);
    EXPECT_LE(z.real(), 1.0);
  }
  EXPECT_THROW(bump_pair(alpha, 0.25, 4096), NumericError);
  EXPECT_THROW(bump_pair(alpha, 0.0, 4096), NumericError);
  EXPECT_THROW(bump_pair(0.0, 0.01, 4096), NumericError);
}

TEST(PrBuild, PlainGolden) {
  const PrBuild b = pr_build(1, 0, kGolden, false);
  EXPECT_LE(b.idempotent_residual, 1e-8);
  EXPECT_LE(b.selfadjoint_residual, 1e-12);
  const LoopInvariants inv = loop_invariants(b.e, kGolden, 1);
  EXPECT_NEAR(inv.tau.raw.real(), kGolden.value(), 1e-10);
}

TEST(PrBuild, FlipSymmetricTable) {
  struct Row {
    const ThetaParam* theta;
    std::int64_t r, s;
    std::array<double, 4> phi;
  };
  const Row rows[] = {
      {&kGolden, 6, -3, {0, 1, 0, 0}},   {&kGolden, 14, -8, {0, 0, 0, 0}}, {&kGolden, 3, -1, {0.5, 0.5, -0.5, 0.5}},
      {&kSqrt2, 4, -1, {0, 1, 0, 0}},    {&kSqrt2, 2, 0, {0, 0, 0, 0}},    {&kSqrt2, 9, -3, {0.5, 0.5, -0.5, 0.5}},
  };
  for (const auto& row : rows) {
    const PrBuild b = pr_build(row.r, row.s, *row.theta, true);
    EXPECT_GT(b.alpha, 0.5);
    EXPECT_LE(b.idempotent_residual, 1e-8);
    EXPECT_LE(b.selfadjoint_residual, 1e-12);
    ASSERT_TRUE(b.flip_residual.has_value());
    EXPECT_LE(*b.flip_residual, 1e-8);
    const LoopInvariants inv = loop_invariants(b.e, *row.theta, row.r);
    EXPECT_NEAR(inv.tau.raw.real(), b.alpha, 1e-10);
    for (std::size_t q = 0; q < 4; ++q) {
      ASSERT_TRUE(inv.phi[q].rounded.has_value()) << row.r << "," << row.s << " slot " << q;
      EXPECT_EQ(*inv.phi[q].rounded, row.phi[q]) << row.r << "," << row.s << " slot " << q;
    }
  }
}

TEST(PrBuild, Errors) {
  try {
    pr_build(2, -1, kGolden, true);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_EQ(e.code(), "alpha-out-of-range");
  }
  PrOptions tight;
  tight.grid = 256;
  tight.max_grid = 256;
  tight.epsilon = 0.002;
  try {
    pr_build(1, 0, kGolden, false, tight);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_EQ(e.code(), "residual-exceeded");
  }
}

TEST(PrBuild, OrthogonalPairAndTraceAdditivity) {
  // alpha = 5 theta - 3 ~ 0.090; plateaus centred at 1/2 and at 0 occupy disjoint arcs.
  PrOptions at_half, at_zero;
  at_half.plateau_center = 0.5;
  at_zero.plateau_center = 0.0;
  const PrBuild e1 = pr_build(5, -3, kGolden, false, at_half);
  const PrBuild e2 = pr_build(5, -3, kGolden, false, at_zero);
  EXPECT_LE(loop_norm(loop_mul(e1.e, e2.e)), 1e-8);
  EXPECT_LE(loop_norm(loop_sub(flip_apply(e1.e), e1.e)), 1e-8);
  EXPECT_LE(loop_norm(loop_sub(flip_apply(e2.e), e2.e)), 1e-8);
  const LoopElement sum = loop_add(e1.e, e2.e);
  EXPECT_LE(loop_norm(loop_sub(loop_mul(sum, sum), sum)), 1e-8);
  EXPECT_NEAR(loop_invariants(sum, kGolden, 5).tau.raw.real(), 2 * e1.alpha, 1e-10);
}

TEST(LoopJson, RoundTrip) {
  PrOptions opts;
  opts.grid = 256;
  const PrBuild b = pr_build(1, 0, kGolden, false, opts);
  const LoopElement back = loop_from_json(Json::parse(loop_json(b.e).dump()));
  EXPECT_EQ(back.grid, b.e.grid);
  EXPECT_DOUBLE_EQ(back.beta, b.e.beta);
  EXPECT_EQ(coeff_distance(back, b.e), 0.0);
}
