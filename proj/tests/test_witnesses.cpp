#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

TEST(Representations, GeneratorsSatisfyTheCommutatorRelation) {
  for (int p : {1, 2, 3, 5}) {
    const cplx theta = std::polar(1.0, 2.0 * std::numbers::pi / p);
    const CMatrix X = rep_generator('x', p, theta, std::polar(1.0, 0.3));
    const CMatrix Y = rep_generator('y', p, theta, std::polar(1.0, -1.1));
    const CMatrix Z = rep_generator('z', p, theta, cplx(1.0, 0.0));
    EXPECT_LT((X * Y * X.inverse() * Y.inverse() - Z).norm(), 1e-12) << p;
  }
}

TEST(Representations, RepMatrixIsMultiplicative) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  for (int t = 0; t < 30; ++t) {
    ZElement f, g;
    for (int i = 0; i < 4; ++i) {
      f.add(GroupElement{e(rng), e(rng), e(rng)}, c(rng));
      g.add(GroupElement{e(rng), e(rng), e(rng)}, c(rng));
    }
    const int p = 1 + t % 4;
    const cplx theta = std::polar(1.0, 2.0 * std::numbers::pi * (t % p == 0 ? 1 : t % p) / p);
    const cplx z1 = std::polar(1.0, 0.1 * t), z2 = std::polar(1.0, -0.07 * t);
    const CMatrix lhs = rep_matrix(f * g, p, theta, z1, z2);
    const CMatrix rhs = rep_matrix(f, p, theta, z1, z2) * rep_matrix(g, p, theta, z1, z2);
    EXPECT_LT((lhs - rhs).norm(), 1e-9) << t;
  }
}

TEST(Characters, WitnessForThreePlusXPlusYMinusZ) {
  const auto w = character_witness(parse_poly("3 + x + y - z"));
  ASSERT_TRUE(w);
  EXPECT_LT(w->residual, kCharacterTolerance);
  EXPECT_LT(std::abs(w->zeta_x + 1.0), 1e-12);
  EXPECT_LT(std::abs(w->zeta_y + 1.0), 1e-12);
}

TEST(Characters, NoWitnessForExpansiveExamples) {
  for (const char* s : {"3 + x + y + z", "4 + x + y + x^-1 + z", "2 + x + y + z"})
    EXPECT_FALSE(character_witness(parse_poly(s))) << s;
}

TEST(Characters, ContinuousSearchFindsNonRootOfUnityZero) {
  // 4 zeta1 + 3 zeta2 = -5 forces zeta2 = +-i zeta1 at a non-rational angle.
  const auto w = character_witness(parse_poly("5 + 4x + 3y"));
  ASSERT_TRUE(w);
  EXPECT_LT(w->residual, kCharacterTolerance);
}

TEST(Representations, FourDimensionalWitness) {
  RepSearchOptions opt;
  opt.p_min = opt.p_max = 4;
  const auto w = rep_witness(parse_poly("3 + x^2 + y^2 - z^4"), opt);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->p, 4);
  EXPECT_LT(w->det_residual, 1e-8);
}

TEST(Representations, TwoPlusXYZHasSingularTwoDimensionalImage) {
  const auto w = rep_witness(parse_poly("2 + x + y + z"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->p, 2);
  EXPECT_LT(std::abs(w->theta + 1.0), 1e-12);
}

TEST(Representations, NoneForInvertibleElements) {
  RepSearchOptions opt;
  opt.p_max = 4;
  EXPECT_FALSE(rep_witness(parse_poly("3 + x + y + z"), opt));
  EXPECT_THROW(rep_witness(parse_poly("x"), RepSearchOptions{1, 0, 8, 2}), DomainError);
}

TEST(UnitaryVariety, EmptyAndNonEmpty) {
  Laurent2 g{{{0, 0}, 3.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}};
  const auto e = unitary_variety_empty(g, 64);
  EXPECT_EQ(e.status, VarietyStatus::empty);
  EXPECT_NEAR(e.min_modulus, 1.0, 1e-9);
  Laurent2 h{{{0, 0}, 2.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}};
  EXPECT_EQ(unitary_variety_empty(h, 64).status, VarietyStatus::zero_found);
}
