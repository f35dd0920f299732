#pragma once

// Configurations: functions on the group, either finitely supported or
// declared on a bounded box (outside which they are unknown).  Torus-valued
// configurations keep representatives in [-1/2, 1/2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

struct Box {
  std::int64_t a_lo = 0, a_hi = -1, b_lo = 0, b_hi = -1, c_lo = 0, c_hi = -1;

  /// |a| <= r, |b| <= r, |c| <= r^2.
  static Box heisenberg_ball(std::int64_t r) { return {-r, r, -r, r, -r * r, r * r}; }
  static Box cube(std::int64_t r) { return {-r, r, -r, r, -r, r}; }

  bool contains(const GroupElement& g) const {
    return g.a >= a_lo && g.a <= a_hi && g.b >= b_lo && g.b <= b_hi && g.c >= c_lo && g.c <= c_hi;
  }
  bool empty() const { return a_lo > a_hi || b_lo > b_hi || c_lo > c_hi; }
  std::uint64_t size() const {
    if (empty()) return 0;
    return static_cast<std::uint64_t>(a_hi - a_lo + 1) * static_cast<std::uint64_t>(b_hi - b_lo + 1) *
           static_cast<std::uint64_t>(c_hi - c_lo + 1);
  }
  bool disjoint(const Box& o) const {
    return a_hi < o.a_lo || o.a_hi < a_lo || b_hi < o.b_lo || o.b_hi < b_lo || c_hi < o.c_lo || o.c_hi < c_lo;
  }
  Box translated(std::int64_t da, std::int64_t db, std::int64_t dc) const {
    return {a_lo + da, a_hi + da, b_lo + db, b_hi + db, c_lo + dc, c_hi + dc};
  }

  template <class F>
  void for_each(F&& fn) const {
    for (std::int64_t a = a_lo; a <= a_hi; ++a)
      for (std::int64_t b = b_lo; b <= b_hi; ++b)
        for (std::int64_t c = c_lo; c <= c_hi; ++c) fn(GroupElement{a, b, c});
  }

  /// Smallest box holding {g h : g in this box, h in support}.
  template <Coefficient C>
  Box right_dilate(const RingElement<C>& f) const;
};

template <Coefficient C>
Box Box::right_dilate(const RingElement<C>& f) const {
  if (empty() || f.is_zero()) return *this;
  Box r{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
  // g h = (a + a', b + b', c + c' - a' b); extremes are attained at corners in b.
  for (const auto& [h, _] : f) {
    r.a_lo = std::min(r.a_lo, a_lo + h.a);
    r.a_hi = std::max(r.a_hi, a_hi + h.a);
    r.b_lo = std::min(r.b_lo, b_lo + h.b);
    r.b_hi = std::max(r.b_hi, b_hi + h.b);
    const std::int64_t t1 = -h.a * b_lo, t2 = -h.a * b_hi;
    r.c_lo = std::min(r.c_lo, c_lo + h.c + std::min(t1, t2));
    r.c_hi = std::max(r.c_hi, c_hi + h.c + std::max(t1, t2));
  }
  return r;
}

/// Representative of v mod 1 in [-1/2, 1/2).
inline mpq_class torus_reduce(const mpq_class& v) {
  mpq_class shifted = v + mpq_class(1, 2);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  mpq_class r = v - mpq_class(fl);
  r.canonicalize();
  return r;
}

inline double torus_reduce(double v) { return v - std::floor(v + 0.5); }

template <class V>
class Configuration {
 public:
  using value_type = V;

  Configuration() = default;
  explicit Configuration(std::optional<Box> region, bool torus = false) : region_(region), torus_(torus) {}

  bool torus() const { return torus_; }
  const std::optional<Box>& region() const { return region_; }
  const std::map<GroupElement, V>& values() const { return values_; }

  bool defined_at(const GroupElement& g) const { return !region_ || region_->contains(g); }

  V get(const GroupElement& g) const {
    if (!defined_at(g)) throw WindowError("configuration read outside its region at " + to_string(g));
    auto it = values_.find(g);
    return it == values_.end() ? V(0) : it->second;
  }

  void set(const GroupElement& g, V v) {
    if (!defined_at(g)) throw WindowError("configuration write outside its region at " + to_string(g));
    if constexpr (!std::is_integral_v<V> && !std::is_same_v<V, mpz_class>) {
      if (torus_) v = torus_reduce(v);
    }
    if (v == V(0)) {
      values_.erase(g);
    } else {
      values_[g] = std::move(v);
    }
  }

  void add(const GroupElement& g, const V& v) { set(g, get(g) + v); }

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.values_ == b.values_; }

 private:
  std::map<GroupElement, V> values_;
  std::optional<Box> region_;
  bool torus_ = false;
};

namespace detail {
template <class V>
V scale_by(const mpz_class& c, const V& v) {
  if constexpr (std::is_same_v<V, double>) {
    return c.get_d() * v;
  } else {
    return V(c * v);
  }
}
}  // namespace detail

template <class V>
struct RhoResult {
  Configuration<V> values;
  std::vector<GroupElement> boundary_unknown;
};

/// (rho^f v)_g' = sum_g f_g v_{g' g}.  For a configuration on a box, outputs
/// whose stencil leaves the box are listed as boundary_unknown.
template <class V>
RhoResult<V> act_rho(const ZElement& f, const Configuration<V>& v) {
  RhoResult<V> out{Configuration<V>(v.region(), v.torus()), {}};
  if (v.region()) {
    v.region()->for_each([&](const GroupElement& gp) {
      V acc(0);
      for (const auto& [g, c] : f) {
        const GroupElement t = group_mul(gp, g);
        if (!v.region()->contains(t)) {
          out.boundary_unknown.push_back(gp);
          return;
        }
        auto it = v.values().find(t);
        if (it != v.values().end()) acc += detail::scale_by(c, it->second);
      }
      out.values.set(gp, acc);
    });
  } else {
    std::map<GroupElement, V> acc;
    for (const auto& [t, val] : v.values())
      for (const auto& [g, c] : f) acc[group_mul(t, group_inv(g))] += detail::scale_by(c, val);
    for (auto& [g, val] : acc) out.values.set(g, val);
  }
  return out;
}

}  // namespace heisendyn
