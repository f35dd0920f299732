#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

namespace {

double distance(const TwistedElement& a, const TwistedElement& b) {
  double d = 0.0;
  for (const auto& [k, v] : a.terms()) d += std::abs(v - b.coeff(k.first, k.second));
  for (const auto& [k, v] : b.terms())
    if (a.coeff(k.first, k.second) == cplx(0.0, 0.0)) d += std::abs(v);
  return d;
}

ZElement random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  ZElement f;
  for (int i = 0; i < 5; ++i) f.add(GroupElement{e(rng), e(rng), e(rng)}, c(rng));
  return f;
}

}  // namespace

TEST(Twisted, ProjectionIsMultiplicative) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const ZElement f = random_poly(rng), g = random_poly(rng);
    const cplx theta = std::polar(1.0, 0.37 * t);
    EXPECT_LT(distance(project(f * g, theta), twisted_mul(project(f, theta), project(g, theta))), 1e-9);
    EXPECT_LT(distance(project(involution(f), theta), twisted_involution(project(f, theta))), 1e-9);
  }
}

TEST(Twisted, SquareOfXPlusYAtMinusOne) {
  const ZElement s = ring_pow(parse_poly("x + y"), 2);
  EXPECT_EQ(l1_norm(s), 4);
  // xy and yx = xy z^-1 cancel at theta = -1.
  EXPECT_DOUBLE_EQ(project(s, cplx(-1.0, 0.0)).norm(), 2.0);
  EXPECT_DOUBLE_EQ(project(s, cplx(1.0, 0.0)).norm(), 4.0);
}

TEST(Twisted, ThetaChecks) {
  EXPECT_THROW(TwistedElement(cplx(2.0, 0.0)), ThetaError);
  EXPECT_THROW(twisted_mul(TwistedElement(cplx(1.0, 0.0)), TwistedElement(cplx(-1.0, 0.0))), ThetaError);
  EXPECT_EQ(unit_pow(cplx(0.0, 1.0), 4), cplx(1.0, 0.0));
  EXPECT_EQ(unit_pow(cplx(-1.0, 0.0), -3), cplx(-1.0, 0.0));
  EXPECT_EQ(unit_from_angle(std::numbers::pi / 2), cplx(0.0, 1.0));
}

TEST(Localization, LopsidedIsDominantEverywhere) {
  const auto c = certify_all_theta(parse_poly("4 + x + y + z"), {64, 4, 2, 1e-9});
  EXPECT_EQ(c.verdict, LocalVerdict::invertible_everywhere);
  for (const auto& a : c.per_theta) EXPECT_EQ(a.method, "dominant");
}

TEST(Localization, ThreePlusXYZNeedsSplits) {
  const auto c = certify_all_theta(parse_poly("3 + x + y + z"));
  ASSERT_EQ(c.verdict, LocalVerdict::invertible_everywhere);
  bool split = false;
  for (const auto& a : c.per_theta) split = split || a.method != "dominant";
  EXPECT_TRUE(split);
}

TEST(Localization, SignPointZeroIsNoninvertible) {
  for (const char* s : {"2 - x^-1 - y^-1", "3 + x + y - z", "3 - 3z"}) {
    const auto c = certify_all_theta(parse_poly(s));
    EXPECT_EQ(c.verdict, LocalVerdict::noninvertible_at_theta) << s;
    EXPECT_FALSE(c.failed_arcs.empty()) << s;
  }
}

TEST(Localization, SplitCertificateAtOnePoint) {
  const ZElement f = parse_poly("3 + x + y + z");
  // A = f, B = 0.  At theta = i the central part 3 + i has modulus > 2 = ||x + y||.
  std::string why;
  const std::vector<GroupElement> all{GroupElement::identity(), GroupElement::z(), GroupElement::x(), GroupElement::y()};
  const auto r = neumann_split_certificate(f, cplx(0.0, 1.0), all, 8, &why);
  ASSERT_TRUE(r) << why;
  EXPECT_LT(r->product, 1.0);
  EXPECT_FALSE(neumann_split_certificate(f, cplx(1.0, 0.0), {GroupElement::x()}, 8, &why));
  EXPECT_EQ(why, "split has no constant term");
}
