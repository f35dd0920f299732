#pragma once

// Exact arithmetic in Z[w], w a primitive N-th root of unity, represented
// by integer polynomials reduced modulo the N-th cyclotomic polynomial.

#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/laurent.hpp"

namespace heisendyn {

inline ZLaurent cyclotomic_polynomial(int N) {
  if (N < 1) throw DomainError("cyclotomic index must be positive");
  static std::map<int, ZLaurent> cache;
  static std::mutex m;
  {
    std::lock_guard<std::mutex> lock(m);
    if (auto it = cache.find(N); it != cache.end()) return it->second;
  }
  ZLaurent p = ZLaurent::monomial(N) - ZLaurent(mpz_class(1));
  for (int d = 1; d < N; ++d)
    if (N % d == 0) p = p.divide_exact(cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(m);
  cache.emplace(N, p);
  return p;
}

class Cyclotomic {
 public:
  explicit Cyclotomic(int N) : N_(N), phi_(cyclotomic_polynomial(N)), deg_(static_cast<int>(phi_.degree())) {}

  int order() const { return N_; }
  int degree() const { return deg_; }

  using Elem = std::vector<mpz_class>;  // coefficients of w^0 .. w^(deg-1)

  Elem zero() const { return Elem(static_cast<std::size_t>(deg_), mpz_class(0)); }
  Elem one() const { return power(0); }

  /// w^e for any integer e.
  Elem power(std::int64_t e) const {
    std::vector<mpz_class> v(static_cast<std::size_t>(N_), mpz_class(0));
    v[static_cast<std::size_t>(((e % N_) + N_) % N_)] = 1;
    return reduce(v);
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
  }
  Elem scale(const Elem& a, const mpz_class& s) const {
    Elem r = a;
    for (auto& v : r) v *= s;
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<mpz_class> v(static_cast<std::size_t>(2 * deg_), mpz_class(0));
    for (int i = 0; i < deg_; ++i) {
      if (sgn(a[static_cast<std::size_t>(i)]) == 0) continue;
      for (int j = 0; j < deg_; ++j) v[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return reduce(v);
  }

  /// Complex conjugation: w^e -> w^(N-e).
  Elem conj(const Elem& a) const {
    std::vector<mpz_class> v(static_cast<std::size_t>(N_), mpz_class(0));
    for (int i = 0; i < deg_; ++i) v[static_cast<std::size_t>((N_ - i) % N_)] += a[static_cast<std::size_t>(i)];
    return reduce(v);
  }

  bool is_zero(const Elem& a) const {
    for (const auto& v : a)
      if (sgn(v) != 0) return false;
    return true;
  }

  std::complex<double> to_complex(const Elem& a) const {
    std::complex<double> s(0.0, 0.0);
    for (int i = 0; i < deg_; ++i)
      s += a[static_cast<std::size_t>(i)].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * i / N_);
    return s;
  }

 private:
  /// Remainder modulo the (monic) cyclotomic polynomial.
  Elem reduce(std::vector<mpz_class> v) const {
    const auto& p = phi_.dense();
    for (std::size_t i = v.size(); i-- > static_cast<std::size_t>(deg_);) {
      if (sgn(v[i]) == 0) continue;
      const mpz_class t = v[i];
      for (int j = 0; j <= deg_; ++j) v[i - static_cast<std::size_t>(deg_) + static_cast<std::size_t>(j)] -= t * p[static_cast<std::size_t>(j)];
    }
    v.resize(static_cast<std::size_t>(deg_), mpz_class(0));
    return v;
  }

  int N_;
  ZLaurent phi_;
  int deg_;
};

}  // namespace heisendyn
