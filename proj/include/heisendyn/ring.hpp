#pragma once

// Group ring elements: finitely supported maps GroupElement -> coefficient.
// Three coefficient rings are supported, mpz_class, mpq_class and
// std::complex<double>, with the embeddings Z -> Q -> C.  Mixing rings in
// arithmetic promotes to the larger one; anything else fails to compile.

#include <complex>
#include <cstdint>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/group.hpp"

namespace heisendyn {

using cplx = std::complex<double>;

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<mpz_class> {
  using norm_type = mpq_class;
  static constexpr int rank = 0;
  static bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
  static norm_type abs(const mpz_class& v) { return mpq_class(::abs(v)); }
  static mpz_class conj(const mpz_class& v) { return v; }
  static cplx to_complex(const mpz_class& v) { return {v.get_d(), 0.0}; }
};

template <>
struct coeff_traits<mpq_class> {
  using norm_type = mpq_class;
  static constexpr int rank = 1;
  static bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
  static norm_type abs(const mpq_class& v) { return ::abs(v); }
  static mpq_class conj(const mpq_class& v) { return v; }
  static cplx to_complex(const mpq_class& v) { return {v.get_d(), 0.0}; }
};

template <>
struct coeff_traits<cplx> {
  using norm_type = double;
  static constexpr int rank = 2;
  static bool is_zero(const cplx& v) { return v == cplx(0.0, 0.0); }
  static norm_type abs(const cplx& v) { return std::abs(v); }
  static cplx conj(const cplx& v) { return std::conj(v); }
  static cplx to_complex(const cplx& v) { return v; }
};

template <class C>
concept Coefficient = requires { coeff_traits<C>::rank; };

template <Coefficient A, Coefficient B>
using promote_t = std::conditional_t<(coeff_traits<A>::rank >= coeff_traits<B>::rank), A, B>;

template <Coefficient To, Coefficient From>
To coeff_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, cplx>) {
    return coeff_traits<From>::to_complex(v);
  } else {
    static_assert(coeff_traits<To>::rank > coeff_traits<From>::rank, "narrowing coefficient cast");
    return To(v);
  }
}

template <Coefficient C>
class RingElement {
 public:
  using coeff_type = C;
  using map_type = std::map<GroupElement, C>;
  using const_iterator = typename map_type::const_iterator;

  RingElement() = default;
  explicit RingElement(const C& constant) { add(GroupElement::identity(), constant); }

  static RingElement monomial(const GroupElement& g, const C& coeff = C(1)) {
    RingElement r;
    r.add(g, coeff);
    return r;
  }

  /// Adds coeff at g; entries that cancel to zero are dropped.
  void add(const GroupElement& g, const C& coeff) {
    if (coeff_traits<C>::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(g, coeff);
    if (!inserted) {
      it->second += coeff;
      if (coeff_traits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set(const GroupElement& g, const C& coeff) {
    if (coeff_traits<C>::is_zero(coeff)) {
      terms_.erase(g);
    } else {
      terms_[g] = coeff;
    }
  }

  C coeff(const GroupElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? C(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const map_type& terms() const { return terms_; }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  std::vector<GroupElement> support() const {
    std::vector<GroupElement> s;
    s.reserve(terms_.size());
    for (const auto& [g, _] : terms_) s.push_back(g);
    return s;
  }

  RingElement& operator+=(const RingElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, C(-c));
    return *this;
  }
  RingElement& operator*=(const C& s) {
    if (coeff_traits<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= s;
    return *this;
  }

  RingElement operator-() const {
    RingElement r = *this;
    for (auto& [g, c] : r.terms_) c = -c;
    return r;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

using ZElement = RingElement<mpz_class>;
using QElement = RingElement<mpq_class>;
using CElement = RingElement<cplx>;

template <Coefficient To, Coefficient From>
RingElement<To> ring_cast(const RingElement<From>& f) {
  if constexpr (std::is_same_v<To, From>) {
    return f;
  } else {
    RingElement<To> r;
    for (const auto& [g, c] : f) r.add(g, coeff_cast<To>(c));
    return r;
  }
}

template <Coefficient A, Coefficient B>
RingElement<promote_t<A, B>> operator+(const RingElement<A>& f, const RingElement<B>& g) {
  using R = promote_t<A, B>;
  auto r = ring_cast<R>(f);
  r += ring_cast<R>(g);
  return r;
}

template <Coefficient A, Coefficient B>
RingElement<promote_t<A, B>> operator-(const RingElement<A>& f, const RingElement<B>& g) {
  using R = promote_t<A, B>;
  auto r = ring_cast<R>(f);
  r -= ring_cast<R>(g);
  return r;
}

/// Convolution: (f g)_d = sum_g f_g g_{g^-1 d}.
template <Coefficient A, Coefficient B>
RingElement<promote_t<A, B>> ring_mul(const RingElement<A>& f, const RingElement<B>& g) {
  using R = promote_t<A, B>;
  RingElement<R> r;
  for (const auto& [gf, cf] : f) {
    const R lf = coeff_cast<R>(cf);
    for (const auto& [gg, cg] : g) r.add(group_mul(gf, gg), R(lf * coeff_cast<R>(cg)));
  }
  return r;
}

template <Coefficient A, Coefficient B>
RingElement<promote_t<A, B>> operator*(const RingElement<A>& f, const RingElement<B>& g) {
  return ring_mul(f, g);
}

template <Coefficient C>
RingElement<C> operator*(const C& s, RingElement<C> f) {
  f *= s;
  return f;
}

template <Coefficient C>
RingElement<C> ring_pow(const RingElement<C>& f, unsigned n) {
  RingElement<C> result(C(1));
  RingElement<C> base = f;
  while (n > 0) {
    if (n & 1u) result = ring_mul(result, base);
    n >>= 1;
    if (n > 0) base = ring_mul(base, base);
  }
  return result;
}

/// f* = sum conj(f_g) g^-1.
template <Coefficient C>
RingElement<C> involution(const RingElement<C>& f) {
  RingElement<C> r;
  for (const auto& [g, c] : f) r.add(group_inv(g), coeff_traits<C>::conj(c));
  return r;
}

template <Coefficient C>
typename coeff_traits<C>::norm_type l1_norm(const RingElement<C>& f) {
  typename coeff_traits<C>::norm_type s(0);
  for (const auto& [g, c] : f) s += coeff_traits<C>::abs(c);
  return s;
}

/// Applies the automorphism x <-> y, z -> z^-1 termwise.
template <Coefficient C>
RingElement<C> swap_xy(const RingElement<C>& f) {
  RingElement<C> r;
  for (const auto& [g, c] : f) r.add(swap_xy(g), c);
  return r;
}

/// Left multiplication by a group element.
template <Coefficient C>
RingElement<C> left_shift(const GroupElement& h, const RingElement<C>& f) {
  RingElement<C> r;
  for (const auto& [g, c] : f) r.add(group_mul(h, g), c);
  return r;
}

template <Coefficient C>
C coefficient_sum(const RingElement<C>& f) {
  C s(0);
  for (const auto& [g, c] : f) s += c;
  return s;
}

}  // namespace heisendyn
