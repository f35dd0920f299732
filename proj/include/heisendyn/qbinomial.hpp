#pragma once

// Gaussian binomial coefficients and the quotient polynomials built from them.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/laurent.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

struct QBinomial {
  int n = 0;
  int k = 0;
  ZLaurent poly;
};

inline void check_nk(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw DomainError("q-binomial needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

/// prod_{i<k} (1 - q^(n-i)) / (1 - q^(i+1)); every partial quotient is exact.
inline QBinomial qbinom(int n, int k) {
  check_nk(n, k);
  ZLaurent p(mpz_class(1));
  for (int i = 0; i < k; ++i) {
    p = p * ZLaurent::one_minus_qk(n - i);
    p = p.divide_exact(ZLaurent::one_minus_qk(i + 1));
  }
  return {n, k, p};
}

/// Dense coefficient rows [n 0], ..., [n n] via [n,k] = [n-1,k-1] + q^k [n-1,k].
inline std::vector<std::vector<mpz_class>> qbinom_row(int n) {
  if (n < 0) throw DomainError("q-binomial row needs n >= 0");
  std::vector<std::vector<mpz_class>> row{{mpz_class(1)}};
  for (int m = 1; m <= n; ++m) {
    std::vector<std::vector<mpz_class>> next(static_cast<std::size_t>(m + 1));
    next[0] = {mpz_class(1)};
    next[static_cast<std::size_t>(m)] = {mpz_class(1)};
    for (int k = 1; k < m; ++k) {
      const auto& a = row[static_cast<std::size_t>(k - 1)];
      const auto& b = row[static_cast<std::size_t>(k)];
      auto& out = next[static_cast<std::size_t>(k)];
      out.assign(static_cast<std::size_t>(k * (m - k) + 1), mpz_class(0));
      for (std::size_t j = 0; j < a.size(); ++j) out[j] += a[j];
      for (std::size_t j = 0; j < b.size(); ++j) out[j + static_cast<std::size_t>(k)] += b[j];
    }
    row = std::move(next);
  }
  return row;
}

/// (x+y)^n = sum_k [n k]_{q = z^-1} x^k y^(n-k).
inline ZElement expand_xy_power(int n) {
  if (n < 0) throw DomainError("expand_xy_power needs n >= 0");
  ZElement r;
  const auto row = qbinom_row(n);
  for (int k = 0; k <= n; ++k) {
    const auto& c = row[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < c.size(); ++j)
      r.add(GroupElement{k, n - k, -static_cast<std::int64_t>(j)}, c[j]);
  }
  return r;
}

enum class QuotientForm {
  prime,     // [n k] (1 - q) / (1 - q^p)
  brunetti,  // [n k] (1 - q^d) / (1 - q^n), d = gcd(n, k)
};

/// Whether (1 - q^p) divides [n k] (1 - q).  Phi_d occurs in [n k] with
/// multiplicity floor(n/d) - floor(k/d) - floor((n-k)/d), so this holds iff
/// that is 1 for every divisor d > 1 of p.
inline bool quotient_is_polynomial(int n, int k, int p) {
  check_nk(n, k);
  if (p < 1) throw DomainError("a_quotient needs p >= 1");
  for (int d = 2; d <= p; ++d)
    if (p % d == 0 && n / d - k / d - (n - k) / d != 1) return false;
  return true;
}

inline ZLaurent a_quotient(int n, int k, int p, QuotientForm form = QuotientForm::prime) {
  check_nk(n, k);
  if (form == QuotientForm::prime && !quotient_is_polynomial(n, k, p))
    throw NotPolynomialError("(1 - q^" + std::to_string(p) + ") does not divide [" + std::to_string(n) + " " +
                             std::to_string(k) + "](1 - q)");
  const ZLaurent b = qbinom(n, k).poly;
  if (form == QuotientForm::brunetti) {
    if (n == 0) throw DomainError("brunetti form needs n >= 1");
    const int d = std::gcd(n, k);
    return (b * ZLaurent::one_minus_qk(d)).divide_exact(ZLaurent::one_minus_qk(n));
  }
  return (b * ZLaurent::one_minus_qk(1)).divide_exact(ZLaurent::one_minus_qk(p));
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Exponent of the prime p in C(n, k), by Legendre's formula.
inline int binomial_valuation(long n, long k, long p) {
  int e = 0;
  for (long pk = p; pk <= n; pk *= p) e += static_cast<int>(n / pk - k / pk - (n - k) / pk);
  return e;
}

/// Largest prime p > k dividing C(n, k); exists when n >= 2k.
inline int sylvester_prime(int n, int k) {
  if (k < 1 || n < 2 * k)
    throw DomainError("sylvester_prime needs n >= 2k >= 2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  for (int p = n; p > k; --p)
    if (is_prime(p) && binomial_valuation(n, k, p) > 0) return p;
  throw InvariantViolation("no prime above k divides C(n,k)");
}

/// || [n k] (1 - q)^m ||_1 for m in {0, 1, 2}.
inline mpq_class weighted_norm(int n, int k, int m) {
  if (m < 0 || m > 2) throw DomainError("weighted_norm needs m in {0,1,2}");
  ZLaurent p = qbinom(n, k).poly;
  for (int i = 0; i < m; ++i) p = p * ZLaurent::one_minus_qk(1);
  return p.l1_norm();
}

namespace detail {

/// ||c (1-q)||_1 and ||c (1-q)^2||_1 of a dense coefficient vector.
inline void difference_norms(const std::vector<mpz_class>& c, mpz_class& n1, mpz_class& n2) {
  n1 = 0;
  n2 = 0;
  mpz_class t;
  const std::size_t len = c.size();
  for (std::size_t j = 0; j <= len + 1; ++j) {
    const mpz_class& c0 = j < len ? c[j] : mpz_class(0);
    const mpz_class zero(0);
    const mpz_class& c1 = (j >= 1 && j - 1 < len) ? c[j - 1] : zero;
    const mpz_class& c2 = (j >= 2 && j - 2 < len) ? c[j - 2] : zero;
    if (j <= len) {
      mpz_sub(t.get_mpz_t(), c0.get_mpz_t(), c1.get_mpz_t());
      mpz_abs(t.get_mpz_t(), t.get_mpz_t());
      n1 += t;
    }
    t = c0 - 2 * c1 + c2;
    mpz_abs(t.get_mpz_t(), t.get_mpz_t());
    n2 += t;
  }
}

}  // namespace detail

struct NormSeries {
  int N = 0;
  std::vector<mpz_class> S;      // S(n) = sum_k ||[n k](1-q)||_1
  std::vector<mpq_class> T;      // T(n) = 2^-(n+1) sum_k ||[n k](1-q)^2||_1
  std::vector<mpq_class> T_partial;
  /// blocks[j] = sum of T(n) over 2^j < n <= 2^(j+1), only for complete blocks.
  std::vector<mpq_class> blocks;
};

inline NormSeries norm_series(int N) {
  if (N < 1) throw DomainError("norm_series needs N >= 1");
  NormSeries out;
  out.N = N;
  // Only k <= n/2 is stored; [n k] = [n n-k].
  std::vector<std::vector<mpz_class>> half{{mpz_class(1)}};
  auto emit = [&](int n, const std::vector<std::vector<mpz_class>>& h) {
    mpz_class s1(0), s2(0), a, b;
    for (int k = 0; k <= n; ++k) {
      const int kk = std::min(k, n - k);
      detail::difference_norms(h[static_cast<std::size_t>(kk)], a, b);
      s1 += a;
      s2 += b;
    }
    out.S.push_back(s1);
    mpz_class den(1);
    den <<= static_cast<mp_bitcnt_t>(n + 1);
    mpq_class t(s2, den);
    t.canonicalize();
    out.T.push_back(t);
    out.T_partial.push_back(out.T_partial.empty() ? t : mpq_class(out.T_partial.back() + t));
  };
  emit(0, half);
  for (int m = 1; m <= N; ++m) {
    std::vector<std::vector<mpz_class>> next(static_cast<std::size_t>(m / 2 + 1));
    next[0] = {mpz_class(1)};
    for (int k = 1; k <= m / 2; ++k) {
      // [m,k] = [m-1,k-1] + q^k [m-1,k], reading [m-1,k] by symmetry when k > (m-1)/2.
      const auto& a = half[static_cast<std::size_t>(std::min(k - 1, m - k))];
      const auto& b = half[static_cast<std::size_t>(std::min(k, m - 1 - k))];
      auto& out_k = next[static_cast<std::size_t>(k)];
      out_k.assign(static_cast<std::size_t>(k * (m - k) + 1), mpz_class(0));
      for (std::size_t j = 0; j < a.size(); ++j) out_k[j] += a[j];
      for (std::size_t j = 0; j < b.size(); ++j) out_k[j + static_cast<std::size_t>(k)] += b[j];
    }
    half = std::move(next);
    emit(m, half);
  }
  for (int j = 0; (2 << j) <= N; ++j) {
    mpq_class s(0);
    for (int n = (1 << j) + 1; n <= (2 << j); ++n) s += out.T[static_cast<std::size_t>(n)];
    out.blocks.push_back(s);
  }
  return out;
}

struct ConjectureFailure {
  int m = 0;
  std::string reason;  // "not a polynomial" or "negative coefficient"
};

struct ConjectureResult {
  int n = 0;
  int k = 0;
  std::optional<int> m;
  std::optional<ZLaurent> quotient;
  std::vector<ConjectureFailure> failures;
};

/// Scans m in [n-k, n) for which [n k](1-q)^3 / ((1-q^n)(1-q^m)) has
/// nonnegative integer coefficients.  Evidence only.
inline ConjectureResult conjecture_search(int n, int k) {
  if (k < 1 || n < 2 * k || std::gcd(n, k) != 1)
    throw DomainError("conjecture_search needs n >= 2k >= 2 and gcd(n,k) = 1");
  ConjectureResult r{n, k, std::nullopt, std::nullopt, {}};
  ZLaurent num = qbinom(n, k).poly;
  for (int i = 0; i < 3; ++i) num = num * ZLaurent::one_minus_qk(1);
  const ZLaurent first = num.divide_exact(ZLaurent::one_minus_qk(n));
  for (int m = n - k; m < n; ++m) {
    ZLaurent q;
    try {
      q = first.divide_exact(ZLaurent::one_minus_qk(m));
    } catch (const NotPolynomialError&) {
      r.failures.push_back({m, "not a polynomial"});
      continue;
    }
    if (!q.nonnegative()) {
      r.failures.push_back({m, "negative coefficient"});
      continue;
    }
    r.m = m;
    r.quotient = q;
    break;
  }
  return r;
}

}  // namespace heisendyn
