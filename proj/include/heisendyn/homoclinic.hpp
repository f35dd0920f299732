#pragma once

// Summable homoclinic points for f = 2 - x^-1 - y^-1.  The formal inverse of
// f* = 2 - x - y is sum_n 2^-(n+1) (x+y)^n; multiplying by the central
// element (1 - z^-1)^2 makes it summable.  Also the explicit l1 inverse of
// 3 + x + y + z and the generic series inverse around a central seed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/columns.hpp"
#include "heisendyn/configuration.hpp"
#include "heisendyn/error.hpp"
#include "heisendyn/laurent.hpp"
#include "heisendyn/qbinomial.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

/// (1 - z^-1)^2 = 1 - 2 z^-1 + z^-2.
inline ZLaurent central_multiplier() { return ZLaurent(-2, {mpz_class(1), mpz_class(-2), mpz_class(1)}); }

inline mpz_class pow2(unsigned long e) {
  mpz_class r(1);
  r <<= e;
  return r;
}

/// w^(N) = sum_{n <= N} 2^-(n+1) (x+y)^n (1 - z^-1)^2, stored as integer
/// numerators over the common denominator 2^(N+1).
class LevelledKernel {
 public:
  int N = 0;
  ColumnForm numerators;          // w * 2^(N+1)
  std::vector<mpq_class> level_norm;  // ||level n||_1 = T(n)
  mpq_class total_norm;
  mpq_class tail_estimate;        // sum_{N < n <= 2N} T(n), empirical
  mpq_class boundary_mass;        // ||w (2-x-y) - (1-z^-1)^2||_1

  mpz_class denominator() const { return pow2(static_cast<unsigned long>(N + 1)); }

  mpq_class coeff(const GroupElement& g) const {
    if (g.a < 0 || g.b < 0 || g.a + g.b > N) return 0;
    mpq_class r(numerators.coeff(g), denominator());
    r.canonicalize();
    return r;
  }

  /// Level n as an exact rational group-ring element.
  QElement level(int n) const {
    QElement r;
    if (n < 0 || n > N) return r;
    for (int k = 0; k <= n; ++k)
      if (const ZLaurent* p = numerators.column(k, n - k))
        for (const auto& [e, c] : p->coeffs()) {
          mpq_class v(c, denominator());
          v.canonicalize();
          r.add(GroupElement{k, n - k, e}, v);
        }
    return r;
  }

  QElement to_ring() const {
    QElement r;
    for (int n = 0; n <= N; ++n) r += level(n);
    return r;
  }
};

inline LevelledKernel build_kernel(int N) {
  if (N < 1) throw DomainError("build_kernel needs N >= 1");
  LevelledKernel w;
  w.N = N;
  const ZLaurent mult = central_multiplier();
  std::vector<std::vector<mpz_class>> row{{mpz_class(1)}};
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      std::vector<std::vector<mpz_class>> next(static_cast<std::size_t>(n + 1));
      next[0] = next[static_cast<std::size_t>(n)] = {mpz_class(1)};
      for (int k = 1; k < n; ++k) {
        const auto& a = row[static_cast<std::size_t>(k - 1)];
        const auto& b = row[static_cast<std::size_t>(k)];
        auto& out = next[static_cast<std::size_t>(k)];
        out.assign(static_cast<std::size_t>(k * (n - k) + 1), mpz_class(0));
        for (std::size_t j = 0; j < a.size(); ++j) out[j] += a[j];
        for (std::size_t j = 0; j < b.size(); ++j) out[j + static_cast<std::size_t>(k)] += b[j];
      }
      row = std::move(next);
    }
    const mpz_class scale = pow2(static_cast<unsigned long>(N - n));
    mpz_class level_mass(0);
    for (int k = 0; k <= n; ++k) {
      // [n k] in q = z^-1, i.e. exponents 0, -1, ..., -k(n-k).
      auto c = row[static_cast<std::size_t>(k)];
      std::reverse(c.begin(), c.end());
      const std::int64_t low = 1 - static_cast<std::int64_t>(c.size());
      const ZLaurent col = ZLaurent(low, std::move(c)) * mult;
      level_mass += col.l1_norm().get_num();
      w.numerators.add(k, n - k, scale * col);
    }
    mpq_class t(level_mass, pow2(static_cast<unsigned long>(n + 1)));
    t.canonicalize();
    w.level_norm.push_back(t);
    w.total_norm += t;
  }
  const NormSeries ns = norm_series(2 * N + 1);
  for (int n = N + 1; n <= 2 * N; ++n) w.tail_estimate += ns.T[static_cast<std::size_t>(n)];
  w.boundary_mass = 2 * ns.T[static_cast<std::size_t>(N + 1)];
  return w;
}

/// x^(g)_g = w_g mod 1 in [-1/2, 1/2), on the given box.
inline Configuration<mpq_class> homoclinic_point(const LevelledKernel& w, const Box& window) {
  Configuration<mpq_class> x(window, true);
  const mpz_class den = w.denominator();
  for (const auto& [k, p] : w.numerators.columns()) {
    if (k.first < window.a_lo || k.first > window.a_hi || k.second < window.b_lo || k.second > window.b_hi) continue;
    for (const auto& [e, c] : p.coeffs()) {
      const GroupElement g{k.first, k.second, e};
      if (!window.contains(g)) continue;
      mpq_class v(c, den);
      v.canonicalize();
      x.set(g, v);
    }
  }
  return x;
}

struct DefectResult {
  mpq_class max_defect;
  GroupElement argmax;
};

/// max over the window of || (rho^f x)_g || (distance to 0 in the torus).
inline DefectResult membership_defect(const Configuration<mpq_class>& x, const ZElement& f, const Box& window) {
  const Box need = window.right_dilate(f);
  if (x.region()) {
    const Box& r = *x.region();
    if (need.a_lo < r.a_lo || need.a_hi > r.a_hi || need.b_lo < r.b_lo || need.b_hi > r.b_hi || need.c_lo < r.c_lo ||
        need.c_hi > r.c_hi)
      throw WindowError("configuration region does not contain the window dilated by supp(f)");
  }
  DefectResult out{mpq_class(0), GroupElement{}};
  const auto& vals = x.values();
  window.for_each([&](const GroupElement& gp) {
    mpq_class acc(0);
    bool any = false;
    for (const auto& [g, c] : f) {
      auto it = vals.find(group_mul(gp, g));
      if (it == vals.end()) continue;
      acc += c * it->second;
      any = true;
    }
    if (!any) return;
    const mpq_class d = abs(torus_reduce(acc));
    if (d > out.max_defect) {
      out.max_defect = d;
      out.argmax = gp;
    }
  });
  return out;
}

/// sigma(r) = l1 mass of w on the shell |a| + |b| = r.
inline std::vector<mpq_class> decay_profile(const LevelledKernel& w) {
  std::vector<mpq_class> sigma(static_cast<std::size_t>(w.N + 1), mpq_class(0));
  const mpz_class den = w.denominator();
  for (const auto& [k, p] : w.numerators.columns()) {
    const auto r = static_cast<std::size_t>(std::abs(k.first) + std::abs(k.second));
    if (r >= sigma.size()) sigma.resize(r + 1, mpq_class(0));
    mpq_class m(p.l1_norm().get_num(), den);
    m.canonicalize();
    sigma[r] += m;
  }
  return sigma;
}

/// A truncated series inverse u = numerators / denominator with its exact residual.
struct SeriesInverse {
  ColumnForm numerators;
  mpz_class denominator = 1;
  mpq_class residual;  // || 1 - f u ||_1
  std::string seed;    // "central-column" or "constant"

  QElement to_ring() const {
    QElement r;
    for (const auto& [k, p] : numerators.columns())
      for (const auto& [e, c] : p.coeffs()) {
        mpq_class v(c, denominator);
        v.canonicalize();
        r.add(GroupElement{k.first, k.second, e}, v);
      }
    return r;
  }

  mpq_class coeff(const GroupElement& g) const {
    mpq_class v(numerators.coeff(g), denominator);
    v.canonicalize();
    return v;
  }
};

namespace detail {

inline mpq_class residual_of(const ZElement& f, const ColumnForm& num, const mpz_class& den) {
  ColumnForm prod = num.left_mul(f);
  prod.add(0, 0, ZLaurent(mpz_class(-den)));
  mpq_class r(prod.l1(), den);
  r.canonicalize();
  return r;
}

/// sum_{M <= N} (-1)^M R^M S_M where S_M(z) are central series, all scaled to
/// numerators over a common denominator.
inline ColumnForm alternating_series(const ZElement& R, int N, const std::vector<ZLaurent>& central_scaled) {
  ColumnForm u;
  ColumnForm power = ColumnForm::from_ring(ZElement(mpz_class(1)));
  for (int M = 0; M <= N; ++M) {
    if (M > 0) power = power.left_mul(R);
    u.add(power.times_central(central_scaled[static_cast<std::size_t>(M)]), M % 2 ? mpz_class(-1) : mpz_class(1));
  }
  return u;
}

}  // namespace detail

/// v^(k)_n = (-1)^n C(n+k-1, n) / 3^(n+k): the expansion of (3+z)^-k.
inline std::vector<mpq_class> v_series(int k, int K) {
  std::vector<mpq_class> v;
  mpz_class binom, den;
  for (int n = 0; n <= K; ++n) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + k - 1), static_cast<unsigned long>(n));
    mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(n + k));
    mpq_class t(n % 2 ? mpz_class(-binom) : binom, den);
    t.canonicalize();
    v.push_back(t);
  }
  return v;
}

/// Exact l1 tail sum_{n > K} C(n+k-1, n) / 3^(n+k), via the negative binomial
/// identity: it equals 2^-k P(Bin(K+k, 2/3) < k).
inline mpq_class v_tail(int k, int K) {
  mpq_class s(0);
  mpz_class b, p2, p1, den;
  const unsigned long m = static_cast<unsigned long>(K + k);
  for (int j = 0; j < k; ++j) {
    mpz_bin_uiui(b.get_mpz_t(), m, static_cast<unsigned long>(j));
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(j));
    s += mpq_class(b * p2);
  }
  mpz_ui_pow_ui(den.get_mpz_t(), 3, m);
  s /= mpq_class(den);
  mpz_ui_pow_ui(p1.get_mpz_t(), 2, static_cast<unsigned long>(k));
  s /= mpq_class(p1);
  s.canonicalize();
  return s;
}

inline ZElement three_plus_xyz() {
  ZElement f(mpz_class(3));
  f.add(GroupElement::x(), 1);
  f.add(GroupElement::y(), 1);
  f.add(GroupElement::z(), 1);
  return f;
}

/// u = sum_{M <= N} (-1)^M (x+y)^M v^(M+1), each v truncated after z^K.
inline SeriesInverse inverse_3xyz(int N, int K) {
  if (N < 0 || K < 0) throw DomainError("inverse_3xyz needs N, K >= 0");
  SeriesInverse inv;
  inv.seed = "central-column";
  mpz_ui_pow_ui(inv.denominator.get_mpz_t(), 3, static_cast<unsigned long>(N + K + 1));
  for (int M = 0; M <= N; ++M) {
    const auto v = v_series(M + 1, K);
    std::vector<mpz_class> num;
    for (const auto& t : v) num.push_back(mpz_class(t * inv.denominator));
    const ZLaurent vz(0, num);
    const auto row = qbinom_row(M);
    for (int k = 0; k <= M; ++k) {
      auto c = row[static_cast<std::size_t>(k)];
      std::reverse(c.begin(), c.end());
      const std::int64_t low = 1 - static_cast<std::int64_t>(c.size());
      ZLaurent col = ZLaurent(low, std::move(c)) * vz;
      inv.numerators.add(k, M - k, M % 2 ? ZLaurent(-col) : col);
    }
  }
  inv.residual = detail::residual_of(three_plus_xyz(), inv.numerators, inv.denominator);
  return inv;
}

}  // namespace heisendyn
