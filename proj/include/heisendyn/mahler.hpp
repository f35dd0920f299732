#pragma once

// Logarithmic Mahler measure of a one-variable Laurent polynomial over C.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "heisendyn/error.hpp"
#include "heisendyn/roots.hpp"

namespace heisendyn {

using CLaurent = std::map<std::int64_t, cplx>;

inline cplx int_pow(cplx t, std::int64_t e) {
  if (e < 0) {
    t = 1.0 / t;
    e = -e;
  }
  cplx r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= t;
    e >>= 1;
    if (e > 0) t *= t;
  }
  return r;
}

inline cplx eval(const CLaurent& p, cplx t) {
  cplx s(0.0, 0.0);
  for (const auto& [e, c] : p) s += c * int_pow(t, e);
  return s;
}

inline CLaurent multiply(const CLaurent& a, const CLaurent& b) {
  CLaurent r;
  for (const auto& [e1, c1] : a)
    for (const auto& [e2, c2] : b) r[e1 + e2] += c1 * c2;
  return r;
}

struct MahlerResult {
  double value = 0.0;       // Jensen's formula
  double quadrature = 0.0;  // independent midpoint-rule estimate
  bool flagged = false;     // a root within 1e-8 of the circle, or the two disagree
  int degree = 0;
};

inline constexpr double kOnCircle = 1e-8;

/// Mean of log|p| over the circle by the midpoint rule, doubling until two
/// successive values agree to 1e-10 (or 2^16 nodes).
inline double mahler_quadrature(const CLaurent& p, int min_nodes = 64) {
  auto rule = [&](int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = std::abs(eval(p, std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / n)));
      s += std::log(v);
    }
    return s / n;
  };
  double prev = rule(min_nodes);
  for (int n = 2 * min_nodes; n <= (1 << 16); n *= 2) {
    const double cur = rule(n);
    if (std::abs(cur - prev) < 1e-10) return cur;
    prev = cur;
  }
  return prev;
}

/// Jensen: log|a_d| + sum over roots of log max(1, |r|).  Roots within 1e-8
/// of the circle count as on it and flag the result; the quadrature value is
/// reported alongside.
inline MahlerResult mahler_measure(const CLaurent& p) {
  std::vector<cplx> dense;
  {
    std::int64_t lo = 0;
    bool first = true;
    for (const auto& [e, c] : p) {
      if (c == cplx(0.0, 0.0)) continue;
      if (first) {
        lo = e;
        first = false;
      }
      const auto idx = static_cast<std::size_t>(e - lo);
      if (dense.size() <= idx) dense.resize(idx + 1, cplx(0.0, 0.0));
      dense[idx] = c;
    }
    if (first) throw DomainError("Mahler measure of the zero polynomial");
  }
  MahlerResult r;
  r.degree = static_cast<int>(dense.size()) - 1;
  double v = std::log(std::abs(dense.back()));
  const auto roots = polynomial_roots(dense).roots;
  for (const cplx& z : roots) {
    const double m = std::abs(z);
    if (std::abs(m - 1.0) < kOnCircle) {
      r.flagged = true;
      continue;
    }
    if (m > 1.0) v += std::log(m);
  }
  r.value = v;
  r.quadrature = r.degree == 0 ? v : mahler_quadrature(p);
  if (std::abs(r.quadrature - r.value) > 1e-6) r.flagged = true;
  return r;
}

}  // namespace heisendyn
