#include <gtest/gtest.h>

#include <random>

#include "rotalg/chern_lattice.hpp"
#include "rotalg/text_format.hpp"

using namespace rotalg;

namespace {

const ThetaParam kGolden = ThetaParam::golden();

ChernVector cv(const char* text) { return parse_chern(text); }

}  // namespace

TEST(KScalar, ParseAndPrint) {
  EXPECT_EQ(parse_kscalar("4+2t"), KScalar::real(4, 2));
  EXPECT_EQ(parse_kscalar("4+2t").str(), "4+2t");
  EXPECT_EQ(parse_kscalar("1/2 - 1/2 i").str(), "1/2-1/2i");
  EXPECT_EQ(parse_kscalar("t i"), (KScalar{0, 0, 0, 1}));
  EXPECT_EQ(parse_kscalar("-t").str(), "-t");
  EXPECT_THROW(parse_kscalar("t^2"), ParseError);
  EXPECT_THROW(parse_kscalar("L"), ParseError);
}

TEST(ChernVector, ParseErrors) {
  EXPECT_THROW(cv("(1;1,0;1,0)"), ParseError);
  EXPECT_THROW(cv("1;1,0;1,0,0"), ParseError);
  EXPECT_THROW(cv("(1;1,0;1,0,0,0)"), ParseError);
  try {
    cv("(1; 1, 0; 1, ?, 0)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 14u);
  }
}

TEST(Basis, NineVectors) {
  const auto& b = basis_vectors();
  EXPECT_EQ(b[0], cv("(2;0,0;2,0,0)"));
  EXPECT_EQ(b[1], cv("(2;1+i,0;0,0,0)"));
  EXPECT_EQ(b[2], cv("(1;1,0;1,0,0)"));
  EXPECT_EQ(b[6], cv("(t;1/2-1/2i,1/2-1/2i;1/2,1/2,1)"));
  EXPECT_EQ(basis_rank(), 9u);
  for (std::size_t j = 0; j < 9; ++j) {
    K0Coordinates e{};
    e[j] = 1;
    EXPECT_EQ(decompose(b[j]).coordinates, e);
  }
}

TEST(Decompose, RoundTripAndUnit) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  for (int k = 0; k < 300; ++k) {
    K0Coordinates n;
    for (auto& x : n) x = d(rng);
    const auto r = decompose(recompose(n));
    ASSERT_EQ(r.status, DecomposeStatus::ok);
    EXPECT_EQ(*r.coordinates, n);
  }
  EXPECT_EQ(decompose(cv("(1;1,0;1,0,0)")).coordinates, (K0Coordinates{0, 0, 1, 0, 0, 0, 0, 0, 0}));
}

TEST(Decompose, RejectsOutsideLattice) {
  EXPECT_EQ(decompose(cv("(4+4t;0,0;0,2,0)")).status, DecomposeStatus::non_integer);
  EXPECT_EQ(decompose(cv("(1/3;0,0;0,0,0)")).status, DecomposeStatus::non_integer);
  // Imaginary theta part is outside the span altogether.
  EXPECT_EQ(decompose(cv("(ti;0,0;0,0,0)")).status, DecomposeStatus::inconsistent);
}

TEST(Membership, Examples) {
  const auto b = semiflat_membership(cv("(2t;0,0;1,1,2)"), kGolden);
  EXPECT_TRUE(b.member);
  EXPECT_EQ(b.genus, (Genus{1, 1, 2}));
  EXPECT_TRUE(b.relations_hold);

  const auto unit = semiflat_membership(cv("(1;1,0;1,0,0)"), kGolden);
  EXPECT_FALSE(unit.member);
  EXPECT_EQ(unit.reason, RejectReason::psi10_nonzero);

  EXPECT_EQ(semiflat_membership(cv("(4+4t;0,0;0,2,0)"), kGolden).reason, RejectReason::not_in_lattice);
  EXPECT_EQ(semiflat_membership(cv("(-2t;0,0;-1,-1,-2)"), kGolden).reason, RejectReason::nonpositive_trace);
  EXPECT_EQ(semiflat_membership(cv("(0;0,0;0,0,0)"), kGolden).reason, RejectReason::nonpositive_trace);
  EXPECT_EQ(semiflat_membership(cv("(2;0,1+i;0,0,0)"), kGolden).reason, RejectReason::psi11_nonzero);
}

TEST(Membership, RecipeSumsBack) {
  for (const char* text : {"(2t;0,0;1,1,2)", "(2+4t;0,0;0,2,0)", "(2;0,0;2,0,0)", "(2;0,0;0,0,2)", "(4t;0,0;0,0,0)",
                           "(6-2t;0,0;-1,1,2)"}) {
    const ChernVector v = cv(text);
    const auto d = semiflat_membership(v, kGolden);
    ASSERT_TRUE(d.member) << text << " " << reason_code(d.reason);
    ASSERT_TRUE(d.recipe.has_value());
    EXPECT_EQ(recipe_sum(*d.recipe), v) << text;
    EXPECT_EQ(d.recipe->flat_a % 4, 0);
    EXPECT_EQ(d.recipe->flat_b % 4, 0);
  }
}

TEST(Membership, RandomSemiflatClassesGetRecipes) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> d(-3, 3);
  int members = 0;
  for (int k = 0; k < 400; ++k) {
    const K0Coordinates n = semiflat_coordinates(d(rng), d(rng), d(rng), d(rng), d(rng));
    const ChernVector v = recompose(n);
    EXPECT_TRUE(v.psi10.is_zero() && v.psi11.is_zero());
    const auto dec = semiflat_membership(v, kGolden);
    if (!dec.member) {
      EXPECT_EQ(dec.reason, RejectReason::nonpositive_trace);
      continue;
    }
    ++members;
    EXPECT_EQ(dec.genus, semiflat_genus(n));
    EXPECT_EQ(recipe_sum(*dec.recipe), v);
  }
  EXPECT_GT(members, 100);
}

TEST(Genus, BasisDecomposition) {
  EXPECT_EQ(genus_basis_decompose({0, 2, 0}), (std::array<std::int64_t, 3>{-1, 2, -2}));
  EXPECT_EQ(genus_basis_decompose({1, 1, 2}), (std::array<std::int64_t, 3>{0, 1, 0}));
  EXPECT_FALSE(genus_basis_decompose({1, 0, 0}).has_value());
  EXPECT_FALSE(genus_basis_decompose({0, 0, 1}).has_value());
  EXPECT_FALSE(genus_basis_decompose({Rational(1, 2), 0, 0}).has_value());
}

TEST(Quantization, SlotChecks) {
  for (std::size_t j = 0; j < 9; ++j) EXPECT_TRUE(quantization_check(basis_vectors()[j]).pass) << j;
  const auto bad = quantization_check(cv("(1;1/3,0;1/4,0,1/2)"));
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.slot_ok[0]);
  EXPECT_TRUE(bad.slot_ok[1]);
  EXPECT_FALSE(bad.slot_ok[2]);
  EXPECT_FALSE(bad.slot_ok[4]);
}

TEST(Trace, OfCoordinates) {
  EXPECT_EQ(trace_of(semiflat_coordinates(0, 0, 0, 0, 1)), KScalar::real(0, 2));
  EXPECT_EQ(trace_of(K0Coordinates{0, 0, 1, 0, 0, 0, 0, 0, 0}), KScalar::real(1));
}
