#pragma once

// Group-ring elements stored column-wise: for each (a, b) a dense Laurent
// polynomial in z.  Multiplying by a monomial only shifts whole columns,
// which makes long products with many z-terms cheap.

#include <cstdint>
#include <map>
#include <utility>

#include <gmpxx.h>

#include "heisendyn/laurent.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

class ColumnForm {
 public:
  using key = std::pair<std::int64_t, std::int64_t>;

  const std::map<key, ZLaurent>& columns() const { return cols_; }
  bool is_zero() const { return cols_.empty(); }

  void add(std::int64_t a, std::int64_t b, const ZLaurent& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = cols_.try_emplace(key{a, b}, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) cols_.erase(it);
    }
  }

  void add(const ColumnForm& o, const mpz_class& scale = 1) {
    for (const auto& [k, p] : o.cols_) add(k.first, k.second, scale == 1 ? p : scale * p);
  }

  const ZLaurent* column(std::int64_t a, std::int64_t b) const {
    auto it = cols_.find(key{a, b});
    return it == cols_.end() ? nullptr : &it->second;
  }

  mpz_class coeff(const GroupElement& g) const {
    const ZLaurent* p = column(g.a, g.b);
    return p ? (*p)[g.c] : mpz_class(0);
  }

  static ColumnForm from_ring(const ZElement& f) {
    ColumnForm r;
    for (const auto& [g, c] : f) r.add(g.a, g.b, ZLaurent::monomial(g.c, c));
    return r;
  }

  ZElement to_ring() const {
    ZElement r;
    for (const auto& [k, p] : cols_)
      for (const auto& [e, c] : p.coeffs()) r.add(GroupElement{k.first, k.second, e}, c);
    return r;
  }

  /// g * this for a monomial g = (a', b', c'): (a,b,c) -> (a+a', b+b', c+c'-a b').
  ColumnForm left_monomial(const GroupElement& g, const mpz_class& coeff) const {
    ColumnForm r;
    for (const auto& [k, p] : cols_) r.add(k.first + g.a, k.second + g.b, coeff * p.shifted(g.c - k.first * g.b));
    return r;
  }

  /// this * g: (a,b,c) -> (a+a', b+b', c+c'-a' b).
  ColumnForm right_monomial(const GroupElement& g, const mpz_class& coeff) const {
    ColumnForm r;
    for (const auto& [k, p] : cols_) r.add(k.first + g.a, k.second + g.b, coeff * p.shifted(g.c - g.a * k.second));
    return r;
  }

  ColumnForm left_mul(const ZElement& f) const {
    ColumnForm r;
    for (const auto& [g, c] : f) r.add(left_monomial(g, c));
    return r;
  }

  ColumnForm right_mul(const ZElement& f) const {
    ColumnForm r;
    for (const auto& [g, c] : f) r.add(right_monomial(g, c));
    return r;
  }

  /// Multiplies every column by a central element p(z).
  ColumnForm times_central(const ZLaurent& p) const {
    ColumnForm r;
    for (const auto& [k, q] : cols_) r.add(k.first, k.second, q * p);
    return r;
  }

  mpz_class l1() const {
    mpz_class s(0);
    for (const auto& [k, p] : cols_)
      for (const auto& v : p.dense()) s += abs(v);
    return s;
  }

  std::size_t support_size() const {
    std::size_t n = 0;
    for (const auto& [k, p] : cols_)
      for (const auto& v : p.dense()) n += sgn(v) != 0;
    return n;
  }

  /// Largest |coefficient| and its position; the rest of the l1 mass.
  std::pair<GroupElement, mpz_class> max_abs() const {
    GroupElement best{};
    mpz_class m(-1);
    for (const auto& [k, p] : cols_)
      for (const auto& [e, c] : p.coeffs())
        if (abs(c) > m) {
          m = abs(c);
          best = {k.first, k.second, e};
        }
    return {best, m};
  }

  friend bool operator==(const ColumnForm& a, const ColumnForm& b) { return a.cols_ == b.cols_; }

 private:
  std::map<key, ZLaurent> cols_;
};

}  // namespace heisendyn
