#pragma once

// One-variable Laurent polynomials with exact coefficients, stored densely
// from the lowest nonzero exponent.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

template <class C = mpz_class>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const C& constant) : low_(0), c_{constant} { trim(); }
  LaurentPoly(std::int64_t low, std::vector<C> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }

  static LaurentPoly monomial(std::int64_t e, const C& coeff = C(1)) { return LaurentPoly(e, {coeff}); }

  /// 1 - q^k, the factor that keeps showing up in q-binomial identities.
  static LaurentPoly one_minus_qk(std::int64_t k) {
    LaurentPoly r(C(1));
    r -= monomial(k);
    return r;
  }

  bool is_zero() const { return c_.empty(); }
  std::int64_t low() const { return low_; }
  std::int64_t high() const { return low_ + static_cast<std::int64_t>(c_.size()) - 1; }
  /// Degree of a genuine polynomial (low >= 0); -1 for zero.
  std::int64_t degree() const { return is_zero() ? -1 : high(); }
  const std::vector<C>& dense() const { return c_; }

  C operator[](std::int64_t e) const {
    if (is_zero() || e < low_ || e > high()) return C(0);
    return c_[static_cast<std::size_t>(e - low_)];
  }

  std::map<std::int64_t, C> coeffs() const {
    std::map<std::int64_t, C> m;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) m.emplace(low_ + static_cast<std::int64_t>(i), c_[i]);
    return m;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return axpy(o, 1); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return axpy(o, -1); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> out(a.c_.size() + b.c_.size() - 1, C(0));
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (sgn(b.c_[j]) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j : nz) out[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentPoly(a.low_ + b.low_, std::move(out));
  }

  friend LaurentPoly operator*(const C& s, LaurentPoly a) {
    if (sgn(s) == 0) return {};
    for (auto& v : a.c_) v *= s;
    return a;
  }

  LaurentPoly shifted(std::int64_t k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.low_ == b.low_ && a.c_ == b.c_; }

  C at_one() const {
    C s(0);
    for (const auto& v : c_) s += v;
    return s;
  }

  std::complex<double> eval(std::complex<double> q) const {
    if (is_zero()) return {0.0, 0.0};
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i].get_d();
    return acc * std::pow(q, static_cast<double>(low_));
  }

  mpq_class l1_norm() const {
    mpq_class s(0);
    for (const auto& v : c_) s += abs(v);
    return s;
  }

  bool nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const C& v) { return sgn(v) >= 0; });
  }

  /// Exact division; throws NotPolynomialError when the divisor does not divide.
  LaurentPoly divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    if (is_zero()) return {};
    const std::size_t n = c_.size(), m = d.c_.size();
    if (n < m) throw NotPolynomialError("divisor has larger span than dividend");
    std::vector<C> rem = c_;
    std::vector<C> q(n - m + 1, C(0));
    const C& lead = d.c_[0];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(d.c_[j]) != 0) nz.push_back(j);
    // Ascending long division, from the lowest coefficient upward.
    for (std::size_t i = 0; i + m <= n; ++i) {
      if (sgn(rem[i]) == 0) continue;
      C t;
      if constexpr (std::is_same_v<C, mpz_class>) {
        if (!mpz_divisible_p(rem[i].get_mpz_t(), lead.get_mpz_t()))
          throw NotPolynomialError("non-integral quotient coefficient");
        t = rem[i] / lead;
      } else {
        t = rem[i] / lead;
      }
      q[i] = t;
      for (std::size_t j : nz) rem[i + j] -= t * d.c_[j];
    }
    for (std::size_t i = n - m + 1; i < n; ++i)
      if (sgn(rem[i]) != 0) throw NotPolynomialError("nonzero remainder");
    return LaurentPoly(low_ - d.low_, std::move(q));
  }

  std::string to_string(const std::string& var = "q") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      const std::int64_t e = low_ + static_cast<std::int64_t>(i);
      C v = c_[i];
      if (!s.empty()) {
        s += sgn(v) < 0 ? " - " : " + ";
        v = abs(v);
      } else if (sgn(v) < 0 && e != 0 && v == C(-1)) {
        s += "-";
        v = 1;
      }
      if (e == 0) {
        s += v.get_str();
      } else {
        if (v != C(1)) s += v.get_str() + "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

 private:
  LaurentPoly& axpy(const LaurentPoly& o, int sign) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      if (sign < 0)
        for (auto& v : c_) v = -v;
      return *this;
    }
    const std::int64_t lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
    std::vector<C> out(static_cast<std::size_t>(hi - lo + 1), C(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[static_cast<std::size_t>(low_ - lo) + i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      auto& slot = out[static_cast<std::size_t>(o.low_ - lo) + i];
      if (sign > 0) slot += o.c_[i]; else slot -= o.c_[i];
    }
    low_ = lo;
    c_ = std::move(out);
    trim();
    return *this;
  }

  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && sgn(c_[first]) == 0) ++first;
    if (first == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (sgn(c_[last - 1]) == 0) --last;
    c_.resize(last);
    if (first > 0) c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<std::int64_t>(first);
  }

  std::int64_t low_ = 0;
  std::vector<C> c_;
};

using ZLaurent = LaurentPoly<mpz_class>;

/// The element sum_j p_j z^j of the center of the group ring.
template <class C>
RingElement<C> central_element(const LaurentPoly<C>& p) {
  RingElement<C> r;
  for (const auto& [e, v] : p.coeffs()) r.add(GroupElement::z(e), v);
  return r;
}

}  // namespace heisendyn
