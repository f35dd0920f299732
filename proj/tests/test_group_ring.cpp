#include <array>
#include <random>

#include <gtest/gtest.h>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

namespace {

// Upper unitriangular 3x3 integer matrices; x = I + E12, y = I + E23.
using Mat = std::array<std::array<long, 3>, 3>;

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat mat_pow(Mat m, long n) {
  // m unipotent: inverse is 2I - m only when (m-I)^2 = 0, so invert explicitly.
  if (n < 0) {
    Mat inv{{{1, -m[0][1], m[0][1] * m[1][2] - m[0][2]}, {0, 1, -m[1][2]}, {0, 0, 1}}};
    m = inv;
    n = -n;
  }
  Mat r{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  while (n-- > 0) r = mat_mul(r, m);
  return r;
}

const Mat X{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
const Mat Y{{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};

Mat Z() { return mat_mul(mat_mul(X, Y), mat_mul(mat_pow(X, -1), mat_pow(Y, -1))); }

Mat as_matrix(const GroupElement& g) { return mat_mul(mat_mul(mat_pow(X, g.a), mat_pow(Y, g.b)), mat_pow(Z(), g.c)); }

GroupElement random_element(std::mt19937_64& rng, int r = 6) {
  std::uniform_int_distribution<int> d(-r, r);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace

TEST(Group, ProductMatchesMatrixModel) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_element(rng), h = random_element(rng);
    EXPECT_EQ(as_matrix(g * h), mat_mul(as_matrix(g), as_matrix(h))) << g << " " << h;
  }
}

TEST(Group, CommutatorIsCentralGenerator) {
  const auto x = GroupElement::x(), y = GroupElement::y();
  EXPECT_EQ(x * y * group_inv(x) * group_inv(y), GroupElement::z());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_element(rng);
    EXPECT_EQ(g * GroupElement::z(), GroupElement::z() * g);
  }
}

TEST(Group, AssociativityInverseAndPowers) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * group_inv(a)).is_identity());
    EXPECT_TRUE((group_inv(a) * a).is_identity());
    EXPECT_EQ(group_pow(a, 3), a * a * a);
    EXPECT_EQ(group_pow(a, -2), group_inv(a * a));
  }
}

TEST(Group, SwapIsAnInvolutiveAutomorphism) {
  std::mt19937_64 rng(9);
  EXPECT_EQ(swap_xy(GroupElement::z()), group_inv(GroupElement::z()));
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(rng), h = random_element(rng);
    EXPECT_EQ(swap_xy(g * h), swap_xy(g) * swap_xy(h));
    EXPECT_EQ(swap_xy(swap_xy(g)), g);
  }
}

TEST(Group, OverflowIsReported) {
  const GroupElement big{INT64_MAX, 1, 0};
  EXPECT_THROW(big * GroupElement::x(), std::overflow_error);
  EXPECT_THROW(group_inv(GroupElement{INT64_MIN, 0, 0}), std::overflow_error);
}

TEST(Ring, ConvolutionTracksCommutator) {
  const ZElement x = ZElement::monomial(GroupElement::x()), y = ZElement::monomial(GroupElement::y());
  const auto xy = x * y, yx = y * x;
  EXPECT_EQ(xy.coeff({1, 1, 0}), 1);
  EXPECT_EQ(yx.coeff({1, 1, -1}), 1);
  // (x + y)^2 = x^2 + xy + yx + y^2 has four terms, none cancel.
  const auto s = ring_pow(x + y, 2);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(l1_norm(s), 4);
}

TEST(Ring, InvolutionReversesProducts) {
  const ZElement f = parse_poly("3 + 2x - y^2*z + x^-1*y"), g = parse_poly("1 - x*y + 4z^-2");
  EXPECT_EQ(involution(f * g), involution(g) * involution(f));
  EXPECT_EQ(involution(involution(f)), f);
}

TEST(Ring, NormIsSubmultiplicativeAndCoefficientSumMultiplicative) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 30; ++t) {
    ZElement f, g;
    for (int i = 0; i < 5; ++i) {
      f.add(random_element(rng, 2), c(rng));
      g.add(random_element(rng, 2), c(rng));
    }
    EXPECT_LE(l1_norm(f * g), l1_norm(f) * l1_norm(g));
    EXPECT_EQ(coefficient_sum(f * g), coefficient_sum(f) * coefficient_sum(g));
  }
}

TEST(Ring, MixedCoefficientsPromote) {
  const ZElement f = parse_poly("2 + x");
  QElement h;
  h.add(GroupElement::identity(), mpq_class(1, 2));
  const auto p = f * h;
  static_assert(std::is_same_v<decltype(p), const QElement>);
  EXPECT_EQ(p.coeff(GroupElement::identity()), 1);
  EXPECT_EQ(p.coeff(GroupElement::x()), mpq_class(1, 2));
  CElement u;
  u.add(GroupElement::y(), cplx(0, 1));
  const auto q = h * u;
  static_assert(std::is_same_v<decltype(q), const CElement>);
  EXPECT_EQ(q.coeff(GroupElement::y()), cplx(0, 0.5));
}

TEST(Parse, RoundTripAndNormalForm) {
  for (const char* s : {"3+x+y+z", "2-x^-1-y^-1", "3+x^2+y^2-z^4", "4+x+y+x^-1+z", "-7x^3*y^-2*z + 5"}) {
    const ZElement f = parse_poly(s);
    EXPECT_EQ(parse_poly(format_poly(f)), f) << s;
  }
  EXPECT_EQ(format_poly(parse_poly("2-x^-1-y^-1")), "-x^-1 - y^-1 + 2");
  // xy parses as the product, yx as y*x = xyz^-1.
  EXPECT_EQ(parse_poly("y*x"), parse_poly("x*y*z^-1"));
  EXPECT_EQ(parse_poly("yx"), parse_poly("y*x"));
  EXPECT_EQ(parse_poly("x^(-2)"), parse_poly("x^-2"));
  EXPECT_TRUE(parse_poly("x - x").is_zero());
}

TEST(Parse, ErrorsCarryOffsets) {
  try {
    parse_poly("3+x+");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(parse_poly("3+w"), ParseError);
  EXPECT_THROW(parse_poly("x^"), ParseError);
  EXPECT_THROW(parse_poly(""), ParseError);
}

TEST(Laurent, ArithmeticAndDivision) {
  const ZLaurent a(-1, {1, 2, 3});
  const ZLaurent b(2, {1, -1});
  const ZLaurent p = a * b;
  EXPECT_EQ(p.low(), 1);
  EXPECT_EQ(p.divide_exact(b), a);
  EXPECT_EQ(p.divide_exact(a), b);
  EXPECT_THROW(ZLaurent(0, {1, 0, 1}).divide_exact(ZLaurent::one_minus_qk(1)), NotPolynomialError);
  EXPECT_EQ(p.at_one(), 0);
  EXPECT_EQ(a.l1_norm(), 6);
  EXPECT_EQ(central_element(b), parse_poly("z^2 - z^3"));
}

TEST(Configuration, RhoOfFiniteSupportAndWindows) {
  // (rho^f v)_g' = sum_g f_g v_{g' g}; for v = delta_e and f = x the result is delta_{x^-1}.
  Configuration<mpz_class> v;
  v.set(GroupElement::identity(), 1);
  const auto r = act_rho(parse_poly("x"), v);
  EXPECT_EQ(r.values.get(group_inv(GroupElement::x())), 1);
  Configuration<mpq_class> w(Box::cube(1), true);
  w.set(GroupElement::identity(), mpq_class(3, 2));
  EXPECT_EQ(w.get(GroupElement::identity()), mpq_class(-1, 2));
  EXPECT_THROW(w.get({2, 0, 0}), WindowError);
  EXPECT_EQ(Box::heisenberg_ball(2).size(), 5u * 5u * 9u);
}
