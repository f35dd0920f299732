#pragma once

// Toppling on A_M, the coding map v -> v w mod 1 and the equal-entropy cover
// experiment for f = 2 - x^-1 - y^-1 (so f* = 2 - x - y).

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/configuration.hpp"
#include "heisendyn/error.hpp"
#include "heisendyn/homoclinic.hpp"

namespace heisendyn {

using Sandpile = Configuration<std::int64_t>;

/// A_M = {|a| <= M, |b| <= M, |c| <= M^2}.
struct BoxRegion {
  std::int64_t M = 1;

  explicit BoxRegion(std::int64_t m) : M(m) {
    if (m < 1) throw DomainError("box region needs M >= 1");
  }
  Box box() const { return Box::heisenberg_ball(M); }
  bool contains(const GroupElement& g) const { return box().contains(g); }
  std::uint64_t size() const { return box().size(); }
  /// A_M together with every site a toppling in A_M can push chips to.
  Box reach() const { return {-M, M + 1, -M, M + 1, -M * M - M, M * M + M}; }
};

/// Uniform {0,1,2} values on the reach of A_M.
inline Sandpile random_sandpile(std::int64_t M, std::uint64_t seed) {
  const Box r = BoxRegion(M).reach();
  Sandpile v(r);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 2);
  r.for_each([&](const GroupElement& g) { v.set(g, d(rng)); });
  return v;
}

enum class ToppleOrder { fifo, lifo };

struct TopplingResult {
  Sandpile stabilized;
  std::uint64_t topplings = 0;
  std::uint64_t toppled_sites = 0;
  std::int64_t outside_max = 0;  // largest value on reach \ A_M afterwards
  bool terminated = false;
};

/// Topple every site of A_M holding >= 2 chips: v_g -= 2, v_gx += 1, v_gy += 1.
inline TopplingResult topple_stabilize(const Sandpile& v, std::int64_t M, std::uint64_t cap = 1000000,
                                       ToppleOrder order = ToppleOrder::fifo) {
  const BoxRegion A(M);
  const Box inner = A.box();
  const Box r = A.reach();
  if (v.region()) {
    const Box& have = *v.region();
    if (r.a_lo < have.a_lo || r.a_hi > have.a_hi || r.b_lo < have.b_lo || r.b_hi > have.b_hi || r.c_lo < have.c_lo ||
        r.c_hi > have.c_hi)
      throw WindowError("sandpile region does not contain the reach of A_M");
  }
  const std::int64_t na = r.a_hi - r.a_lo + 1, nb = r.b_hi - r.b_lo + 1, nc = r.c_hi - r.c_lo + 1;
  auto idx = [&](const GroupElement& g) {
    return static_cast<std::size_t>(((g.a - r.a_lo) * nb + (g.b - r.b_lo)) * nc + (g.c - r.c_lo));
  };
  std::vector<std::int64_t> val(static_cast<std::size_t>(na * nb * nc), 0);
  std::vector<char> queued(val.size(), 0), toppled(val.size(), 0);
  for (const auto& [g, x] : v.values())
    if (r.contains(g)) val[idx(g)] = x;

  std::deque<GroupElement> work;
  inner.for_each([&](const GroupElement& g) {
    if (val[idx(g)] >= 2) {
      work.push_back(g);
      queued[idx(g)] = 1;
    }
  });

  TopplingResult out;
  while (!work.empty()) {
    if (out.topplings >= cap) break;
    GroupElement g;
    if (order == ToppleOrder::fifo) {
      g = work.front();
      work.pop_front();
    } else {
      g = work.back();
      work.pop_back();
    }
    const std::size_t i = idx(g);
    queued[i] = 0;
    if (val[i] < 2) continue;
    val[i] -= 2;
    ++out.topplings;
    if (!toppled[i]) {
      toppled[i] = 1;
      ++out.toppled_sites;
    }
    for (const GroupElement& n : {group_mul(g, GroupElement::x()), group_mul(g, GroupElement::y())}) {
      const std::size_t j = idx(n);
      ++val[j];
      if (val[j] >= 2 && !queued[j] && inner.contains(n)) {
        work.push_back(n);
        queued[j] = 1;
      }
    }
    if (val[i] >= 2) {
      work.push_back(g);
      queued[i] = 1;
    }
  }
  out.terminated = work.empty();

  out.stabilized = Sandpile(v.region());
  for (const auto& [g, x] : v.values())
    if (!r.contains(g)) out.stabilized.set(g, x);
  r.for_each([&](const GroupElement& g) {
    const std::int64_t x = val[idx(g)];
    out.stabilized.set(g, x);
    if (!inner.contains(g)) out.outside_max = std::max(out.outside_max, x);
  });
  return out;
}

struct CodingResult {
  Configuration<mpq_class> values;  // torus-valued on the window
  bool truncated = false;           // v reaches the window beyond the kernel levels
};

/// xi(v)_g' = sum_g v_g w_{g^-1 g'} mod 1 on the window.  With
/// g = (a,b,c), g' = (a',b',c'): g^-1 g' = (a'-a, b'-b, c'-c+b(a'-a)).
inline CodingResult coding_map(const Sandpile& v, const LevelledKernel& w, const Box& window) {
  std::map<std::pair<std::int64_t, std::int64_t>, ZLaurent> vcols;
  for (const auto& [g, x] : v.values()) vcols[{g.a, g.b}] += ZLaurent::monomial(g.c, mpz_class(static_cast<long>(x)));

  CodingResult out{Configuration<mpq_class>(window, true), false};
  const mpz_class den = w.denominator();
  for (std::int64_t a2 = window.a_lo; a2 <= window.a_hi; ++a2)
    for (std::int64_t b2 = window.b_lo; b2 <= window.b_hi; ++b2) {
      ZLaurent acc;
      for (const auto& [k, col] : vcols) {
        const std::int64_t da = a2 - k.first, db = b2 - k.second;
        if (da < 0 || db < 0) continue;
        if (da + db > w.N) {
          out.truncated = true;
          continue;
        }
        if (const ZLaurent* kc = w.numerators.column(da, db)) acc += (col * *kc).shifted(-k.second * da);
      }
      for (std::int64_t c2 = window.c_lo; c2 <= window.c_hi; ++c2) {
        mpq_class x(acc[c2], den);
        x.canonicalize();
        out.values.set(GroupElement{a2, b2, c2}, x);
      }
    }
  return out;
}

/// max over the window of the distance to 0 in the torus.
inline mpq_class torus_sup(const Configuration<mpq_class>& x) {
  mpq_class m(0);
  for (const auto& [g, v] : x.values()) m = std::max(m, mpq_class(abs(torus_reduce(v))));
  return m;
}

/// b(M) = 4 max_{g' in window} sum_{g not in A_M} |w_{g^-1 g'}|, using the
/// computed kernel levels.
inline mpq_class cover_bound(const LevelledKernel& w, std::int64_t M, const Box& window) {
  const Box A = BoxRegion(M).box();
  const mpz_class den = w.denominator();
  mpz_class total(0);
  for (const auto& [k, p] : w.numerators.columns()) total += p.l1_norm().get_num();
  mpz_class worst(0);
  window.for_each([&](const GroupElement& gp) {
    mpz_class inside(0);
    for (std::int64_t a = A.a_lo; a <= std::min(A.a_hi, gp.a); ++a)
      for (std::int64_t b = A.b_lo; b <= std::min(A.b_hi, gp.b); ++b) {
        const std::int64_t da = gp.a - a, db = gp.b - b;
        if (da + db > w.N) continue;
        const ZLaurent* kc = w.numerators.column(da, db);
        if (!kc) continue;
        // exponent of w for c in [c_lo, c_hi] is gp.c - c + b da
        const std::int64_t hi = gp.c - A.c_lo + b * da, lo = gp.c - A.c_hi + b * da;
        for (std::int64_t e = std::max(lo, kc->low()); e <= std::min(hi, kc->high()); ++e) inside += abs((*kc)[e]);
      }
    worst = std::max(worst, mpz_class(total - inside));
  });
  mpq_class b(4 * worst, den);
  b.canonicalize();
  return b;
}

struct CoverPoint {
  std::int64_t M = 0;
  std::uint64_t topplings = 0;
  std::int64_t outside_max = 0;
  bool terminated = false;
  mpq_class d;  // sup over the window of ||xi(v) - xi(v~_M)||
  mpq_class b;
};

/// v~_M equals the stabilized values on A_M and v elsewhere, so
/// xi(v) - xi(v~_M) = xi(v - v~_M) with v - v~_M supported on A_M.
inline std::vector<CoverPoint> cover_experiment(const Sandpile& v, const std::vector<std::int64_t>& M_list,
                                                const Box& window, const LevelledKernel& w,
                                                std::uint64_t cap = 1000000) {
  std::vector<CoverPoint> out;
  std::int64_t prev = 0;
  for (std::int64_t M : M_list) {
    if (M <= prev) throw DomainError("M_list must be increasing");
    prev = M;
    const auto t = topple_stabilize(v, M, cap);
    const Box A = BoxRegion(M).box();
    Sandpile diff;
    A.for_each([&](const GroupElement& g) { diff.set(g, v.get(g) - t.stabilized.get(g)); });
    CoverPoint p;
    p.M = M;
    p.topplings = t.topplings;
    p.outside_max = t.outside_max;
    p.terminated = t.terminated;
    p.d = torus_sup(coding_map(diff, w, window).values);
    p.b = cover_bound(w, M, window);
    out.push_back(std::move(p));
  }
  return out;
}

/// Lift of a torus value into [-1/2, 1/2).
inline mpq_class lift(const mpq_class& v) { return torus_reduce(v); }

struct PatchResult {
  std::optional<Configuration<mpq_class>> y;  // on F1 and F2, set when verified
  mpq_class max_deviation;
  int level = 0;  // kernel levels assumed to matter
  Box dilated1, dilated2;
};

namespace detail {

/// Smallest box containing F (right-)multiplied by the inverses of the
/// kernel support up to the given level.
inline Box kernel_dilate(const Box& F, int level) {
  ZElement s;
  for (int n = 0; n <= level; ++n)
    for (int k = 0; k <= n; ++k) {
      s.add(group_inv(GroupElement{k, n - k, 0}), 1);
      s.add(group_inv(GroupElement{k, n - k, -static_cast<std::int64_t>(k) * (n - k) - 2}), 1);
    }
  return F.right_dilate(s);
}

}  // namespace detail

/// Splice integer preimages of x1 on the dilation of F1 and of x2 on the
/// dilation of F2, code the result and check it against x_j (1 - z^-1)^2 on F_j.
inline PatchResult specification_patch(const Configuration<mpq_class>& x1, const Configuration<mpq_class>& x2,
                                       const Box& F1, const Box& F2, const mpq_class& eps, const LevelledKernel& w) {
  PatchResult out;
  // 2 ||f||_1 times the kernel mass beyond level r, f = 2 - x^-1 - y^-1.
  auto tail = [&](int r) {
    mpq_class t = w.tail_estimate;
    for (int n = r + 1; n <= w.N; ++n) t += w.level_norm[static_cast<std::size_t>(n)];
    return 8 * t;
  };
  int r = 0;
  while (r < w.N && tail(r) >= eps) ++r;
  out.level = r;
  out.dilated1 = detail::kernel_dilate(F1, r);
  out.dilated2 = detail::kernel_dilate(F2, r);
  if (!out.dilated1.disjoint(out.dilated2)) throw DomainError("dilated regions overlap");

  const std::vector<std::pair<GroupElement, int>> fstar{
      {GroupElement::identity(), 2}, {GroupElement::x(), -1}, {GroupElement::y(), -1}};
  Sandpile v;
  auto preimage = [&](const Configuration<mpq_class>& x, const Box& D) {
    D.for_each([&](const GroupElement& g) {
      mpq_class s(0);
      for (const auto& [h, c] : fstar) s += c * lift(x.get(group_mul(g, group_inv(h))));
      // nearest integer; exact when x lies in X_f
      mpq_class shifted = s + mpq_class(1, 2);
      mpz_class n;
      mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      if (sgn(n) != 0) v.set(g, n.get_si());
    });
  };
  preimage(x1, out.dilated1);
  preimage(x2, out.dilated2);

  Configuration<mpq_class> y;
  out.max_deviation = 0;
  auto check = [&](const Configuration<mpq_class>& x, const Box& F) {
    const auto coded = coding_map(v, w, F);
    F.for_each([&](const GroupElement& g) {
      const mpq_class target = lift(x.get(g)) - 2 * lift(x.get(group_mul(g, GroupElement::z()))) +
                               lift(x.get(group_mul(g, GroupElement{0, 0, 2})));
      const mpq_class yg = coded.values.get(g);
      out.max_deviation = std::max(out.max_deviation, mpq_class(abs(torus_reduce(yg - target))));
      y.set(g, yg);
    });
  };
  check(x1, F1);
  check(x2, F2);
  if (out.max_deviation < eps) out.y = std::move(y);
  return out;
}

/// Entropy of the full shift {0,1}^H counted on A_M: log 2^|A_M| / |A_M|.
inline double shift_entropy_count(std::int64_t M) {
  if (M < 1 || M > 4) throw DomainError("shift_entropy_count needs 1 <= M <= 4");
  const BoxRegion A(M);
  mpz_class patterns(1);
  patterns <<= static_cast<unsigned long>(A.size());
  // log of a power of two from its bit length
  const double bits = static_cast<double>(mpz_sizeinbase(patterns.get_mpz_t(), 2) - 1);
  return bits * std::numbers::ln2 / static_cast<double>(A.size());
}

}  // namespace heisendyn
