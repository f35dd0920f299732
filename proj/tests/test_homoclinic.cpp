#include <gtest/gtest.h>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

namespace {

QElement to_q(const ZElement& f) {
  QElement r;
  for (const auto& [g, c] : f) r.add(g, mpq_class(c));
  return r;
}

mpq_class q_l1(const QElement& f) {
  mpq_class s(0);
  for (const auto& [g, c] : f) s += abs(c);
  return s;
}

}  // namespace

TEST(Kernel, IdentityCoefficientAndLevels) {
  const LevelledKernel w = build_kernel(12);
  EXPECT_EQ(w.coeff(GroupElement::identity()), mpq_class(1, 2));
  EXPECT_EQ(w.coeff(GroupElement::z(-1)), -1);
  EXPECT_EQ(w.coeff(GroupElement{-1, 0, 0}), 0);
  const NormSeries ns = norm_series(13);
  ASSERT_EQ(w.level_norm.size(), 13u);
  mpq_class total(0);
  for (int n = 0; n <= 12; ++n) {
    EXPECT_EQ(w.level_norm[static_cast<std::size_t>(n)], ns.T[static_cast<std::size_t>(n)]) << n;
    EXPECT_EQ(q_l1(w.level(n)), ns.T[static_cast<std::size_t>(n)]) << n;
    total += ns.T[static_cast<std::size_t>(n)];
  }
  EXPECT_EQ(w.total_norm, total);
  mpq_class shells(0);
  for (const auto& s : decay_profile(w)) shells += s;
  EXPECT_EQ(shells, total);
  EXPECT_THROW(build_kernel(0), DomainError);
}

TEST(Kernel, ProductWithAdjointLeavesOnlyTopLevel) {
  // (2 - x - y) w = (1 - z^-1)^2 - 2^-(N+1) (x+y)^(N+1) (1 - z^-1)^2.
  for (int N : {1, 3, 6, 9}) {
    const LevelledKernel w = build_kernel(N);
    const QElement lhs = to_q(parse_poly("2 - x - y")) * w.to_ring();
    const QElement rhs = w.to_ring() * to_q(parse_poly("2 - x - y"));
    EXPECT_EQ(lhs, rhs) << N;
    const ZElement m = central_element(central_multiplier());
    const QElement top = to_q(ring_pow(parse_poly("x + y"), static_cast<unsigned>(N + 1)) * m);
    mpq_class scale(1, pow2(static_cast<unsigned long>(N + 1)));
    scale.canonicalize();
    QElement expect = to_q(m);
    for (const auto& [g, c] : top) expect.add(g, -scale * c);
    EXPECT_EQ(lhs, expect) << N;
    EXPECT_EQ(q_l1(lhs - to_q(m)), w.boundary_mass) << N;
  }
}

TEST(Kernel, HomoclinicPointHasZeroDefect) {
  const LevelledKernel w = build_kernel(24);
  const ZElement f = parse_poly("2 - x^-1 - y^-1");
  const auto x = homoclinic_point(w, Box::heisenberg_ball(5));
  EXPECT_EQ(x.get(GroupElement::identity()), mpq_class(1, 2) - 1);
  const auto d = membership_defect(x, f, Box::heisenberg_ball(4));
  EXPECT_EQ(d.max_defect, 0);
  EXPECT_THROW(membership_defect(homoclinic_point(w, Box::heisenberg_ball(4)), f, Box::heisenberg_ball(4)), WindowError);
}

TEST(CentralSeries, VSeriesSumsToPowerOfTwo) {
  for (int k = 1; k <= 10; ++k)
    for (int K : {0, 5, 40}) {
      mpq_class s(0);
      for (const auto& t : v_series(k, K)) s += abs(t);
      mpq_class expect(1, pow2(static_cast<unsigned long>(k)));
      expect.canonicalize();
      EXPECT_EQ(s + v_tail(k, K), expect) << k << " " << K;
    }
  // v^(1) is the expansion of (3 + z)^-1: (3 + z) v^(1) = 1 up to the z^21 term.
  const mpz_class den = 10460353203_mpz;  // 3^21
  std::vector<mpz_class> num;
  for (const auto& t : v_series(1, 20)) num.push_back(mpz_class(t * den));
  const ZLaurent prod = ZLaurent(0, num) * ZLaurent(0, {3, 1});
  EXPECT_EQ(prod[0], den);
  for (std::int64_t j = 1; j <= 20; ++j) EXPECT_EQ(prod[j], 0) << j;
}

TEST(CentralSeries, InverseOfThreePlusXYZ) {
  const auto u0 = inverse_3xyz(0, 20);
  EXPECT_EQ(u0.coeff(GroupElement::identity()), mpq_class(1, 3));
  mpq_class prev = u0.residual;
  for (int N : {8, 16, 24}) {
    const auto u = inverse_3xyz(N, 2 * N + 16);
    EXPECT_EQ(u.coeff(GroupElement::identity()), mpq_class(1, 3));
    EXPECT_LT(u.residual, prev) << N;
    prev = u.residual;
  }
  EXPECT_LT(prev, mpq_class(1, 1000));
  // Independent residual from exact ring multiplication.
  const auto u = inverse_3xyz(3, 6);
  QElement r = to_q(three_plus_xyz()) * u.to_ring();
  r.add(GroupElement::identity(), -1);
  EXPECT_EQ(q_l1(r), u.residual);
  EXPECT_THROW(inverse_3xyz(-1, 3), DomainError);
}
