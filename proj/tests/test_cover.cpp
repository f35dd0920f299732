#include <numbers>

#include <gtest/gtest.h>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

namespace {

const LevelledKernel& kernel24() {
  static const LevelledKernel w = build_kernel(24);
  return w;
}

std::int64_t total(const Sandpile& v) {
  std::int64_t s = 0;
  for (const auto& [g, x] : v.values()) s += x;
  return s;
}

}  // namespace

TEST(Toppling, SingleSpike) {
  Sandpile s(BoxRegion(1).reach());
  s.set(GroupElement::identity(), 2);
  const auto t = topple_stabilize(s, 1);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(t.topplings, 1u);
  EXPECT_EQ(t.stabilized.get(GroupElement::identity()), 0);
  EXPECT_EQ(t.stabilized.get(GroupElement::x()), 1);
  EXPECT_EQ(t.stabilized.get(GroupElement::y()), 1);

  const auto z = topple_stabilize(Sandpile(BoxRegion(2).reach()), 2);
  EXPECT_EQ(z.topplings, 0u);
  EXPECT_EQ(z.outside_max, 0);
  EXPECT_THROW(topple_stabilize(Sandpile(Box::heisenberg_ball(2)), 2), WindowError);
  EXPECT_THROW(BoxRegion(0), DomainError);
}

TEST(Toppling, ConservesChipsAndIsStableInside) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Sandpile v = random_sandpile(3, seed);
    const auto t = topple_stabilize(v, 3);
    ASSERT_TRUE(t.terminated);
    EXPECT_EQ(total(t.stabilized), total(v));
    BoxRegion(3).box().for_each([&](const GroupElement& g) {
      EXPECT_GE(t.stabilized.get(g), 0);
      EXPECT_LE(t.stabilized.get(g), 1);
    });
  }
}

TEST(Toppling, OrderDoesNotMatter) {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    const Sandpile v = random_sandpile(4, seed);
    const auto a = topple_stabilize(v, 4, 1000000, ToppleOrder::fifo);
    const auto b = topple_stabilize(v, 4, 1000000, ToppleOrder::lifo);
    EXPECT_EQ(a.stabilized, b.stabilized);
    EXPECT_EQ(a.topplings, b.topplings);
  }
}

TEST(Coding, MatchesDirectSum) {
  const auto& w = kernel24();
  const Sandpile v = random_sandpile(2, 7);
  const Box win = Box::heisenberg_ball(2);
  const auto cm = coding_map(v, w, win);
  EXPECT_FALSE(cm.truncated);
  win.for_each([&](const GroupElement& gp) {
    mpq_class s(0);
    for (const auto& [g, x] : v.values()) s += x * w.coeff(group_mul(group_inv(g), gp));
    EXPECT_EQ(torus_reduce(s - cm.values.get(gp)), 0) << gp;
  });
}

TEST(Coding, IsEquivariantUnderLeftTranslation) {
  const auto& w = kernel24();
  Sandpile v, u;
  const GroupElement h{1, -1, 2};
  for (const GroupElement g : {GroupElement{0, 0, 0}, GroupElement{1, 0, -1}, GroupElement{0, 1, 3}}) {
    v.set(g, 1);
    u.set(group_mul(h, g), 1);
  }
  const Box win = Box::heisenberg_ball(2);
  const auto a = coding_map(v, w, win);
  const auto b = coding_map(u, w, Box::heisenberg_ball(5));
  win.for_each([&](const GroupElement& gp) { EXPECT_EQ(a.values.get(gp), b.values.get(group_mul(h, gp))) << gp; });
}

TEST(Cover, DistanceBoundedByB) {
  const auto& w = kernel24();
  const Sandpile v = random_sandpile(6, 3);
  const auto pts = cover_experiment(v, {2, 4, 6}, Box::heisenberg_ball(2), w);
  ASSERT_EQ(pts.size(), 3u);
  for (const auto& p : pts) {
    EXPECT_TRUE(p.terminated);
    EXPECT_LE(p.d, p.b) << p.M;
  }
  EXPECT_LT(pts[2].b, pts[1].b);
  EXPECT_LT(pts[1].b, pts[0].b);
  EXPECT_THROW(cover_experiment(v, {4, 2}, Box::heisenberg_ball(2), w), DomainError);
}

TEST(Cover, StableConfigurationsCodeTheSame) {
  // {0,1}-valued v has nothing to topple, so d = 0.
  Sandpile v(BoxRegion(4).reach());
  BoxRegion(4).reach().for_each([&](const GroupElement& g) { v.set(g, (g.a + g.b + g.c) % 2 == 0 ? 1 : 0); });
  for (const auto& p : cover_experiment(v, {2, 4}, Box::heisenberg_ball(2), kernel24())) {
    EXPECT_EQ(p.topplings, 0u);
    EXPECT_EQ(p.d, 0);
  }
}

TEST(Specification, PatchesHomoclinicPointAndZero) {
  const auto& w = kernel24();
  const auto x1 = homoclinic_point(w, Box{-40, 40, -40, 40, -2000, 2000});
  const Configuration<mpq_class> x2(std::nullopt, true);
  const Box F1 = Box::cube(1), F2 = F1.translated(-60, -60, 0);
  const auto r = specification_patch(x1, x2, F1, F2, mpq_class(1, 10), w);
  ASSERT_TRUE(r.y);
  EXPECT_LT(r.max_deviation, mpq_class(1, 10));
  EXPECT_TRUE(r.dilated1.disjoint(r.dilated2));
  EXPECT_THROW(specification_patch(x1, x2, F1, F1.translated(1, 0, 0), mpq_class(1, 10), w), DomainError);
}

TEST(Specification, ShiftEntropy) {
  for (int M = 1; M <= 4; ++M) EXPECT_NEAR(shift_entropy_count(M), std::numbers::ln2, 1e-15);
  EXPECT_THROW(shift_entropy_count(5), DomainError);
}
