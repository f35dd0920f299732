#pragma once

// The discrete Heisenberg group.  An element x^a y^b z^c is stored in the
// normal form (a, b, c); the defining relations are
//   xz = zx,  yz = zy,  x^k y^l = y^l x^k z^(kl),
// so y^b x^a' = x^a' y^b z^(-a'b) and the product becomes
//   (a, b, c) * (a', b', c') = (a + a', b + b', c + c' - a'b).

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace heisendyn {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("heisendyn: exponent overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("heisendyn: exponent overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("heisendyn: exponent overflow");
  return r;
}

}  // namespace detail

struct GroupElement {
  std::int64_t a = 0;  // x exponent
  std::int64_t b = 0;  // y exponent
  std::int64_t c = 0;  // z exponent

  static constexpr GroupElement identity() { return {0, 0, 0}; }
  static constexpr GroupElement x(std::int64_t k = 1) { return {k, 0, 0}; }
  static constexpr GroupElement y(std::int64_t k = 1) { return {0, k, 0}; }
  static constexpr GroupElement z(std::int64_t k = 1) { return {0, 0, k}; }

  constexpr bool is_identity() const { return a == 0 && b == 0 && c == 0; }
  constexpr bool is_central() const { return a == 0 && b == 0; }

  // Lexicographic on (a, b, c); this is the canonical iteration order.
  friend constexpr auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  using namespace detail;
  return {checked_add(g.a, h.a), checked_add(g.b, h.b),
          checked_sub(checked_add(g.c, h.c), checked_mul(h.a, g.b))};
}

inline GroupElement group_inv(const GroupElement& g) {
  using namespace detail;
  return {checked_sub(0, g.a), checked_sub(0, g.b),
          checked_sub(checked_sub(0, g.c), checked_mul(g.a, g.b))};
}

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) { return group_mul(g, h); }

/// g^n for any integer n.
inline GroupElement group_pow(GroupElement g, std::int64_t n) {
  GroupElement result = GroupElement::identity();
  if (n < 0) {
    g = group_inv(g);
    n = -n;
  }
  while (n > 0) {
    if (n & 1) result = group_mul(result, g);
    g = group_mul(g, g);
    n >>= 1;
  }
  return result;
}

/// The automorphism x -> y, y -> x, z -> z^-1.  It is an involution.
inline GroupElement swap_xy(const GroupElement& g) {
  using namespace detail;
  // tau(x^a y^b z^c) = y^a x^b z^-c = x^b y^a z^(-ab - c)
  return {g.b, g.a, checked_sub(checked_sub(0, g.c), checked_mul(g.a, g.b))};
}

inline std::string to_string(const GroupElement& g) {
  return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + "," + std::to_string(g.c) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << to_string(g); }

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(g.a) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(g.b) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(g.c) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace heisendyn

template <>
struct std::hash<heisendyn::GroupElement> : heisendyn::GroupElementHash {};
