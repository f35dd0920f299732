#pragma once

// Nonexpansiveness witnesses: points where f is killed by a one-dimensional
// character, or by a finite-dimensional monomial representation with
// pi(x) pi(y) = theta pi(y) pi(x).  Also a rigorous emptiness test for the
// unitary variety of a two-variable Laurent polynomial.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heisendyn/localization.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

/// Angles 2 pi j / n, n <= max_order, without repeats, in increasing order.
inline std::vector<double> root_of_unity_angles(int max_order) {
  std::set<std::pair<int, int>> seen;  // reduced fractions j/n
  std::vector<std::pair<int, int>> fr;
  for (int n = 1; n <= max_order; ++n)
    for (int j = 0; j < n; ++j) {
      const int g = std::gcd(j, n);
      if (seen.insert({j / g, n / g}).second) fr.emplace_back(j / g, n / g);
    }
  std::sort(fr.begin(), fr.end(), [](auto a, auto b) { return a.first * b.second < b.first * a.second; });
  std::vector<double> out;
  for (auto [j, n] : fr) out.push_back(2.0 * std::numbers::pi * j / n);
  return out;
}

struct CharacterWitness {
  cplx zeta_x;
  cplx zeta_y;
  double residual = 0.0;
};

/// F(zeta1, zeta2) = sum f_g zeta1^a zeta2^b, z sent to 1.
template <Coefficient C>
cplx character_value(const RingElement<C>& f, cplx z1, cplx z2) {
  cplx s(0.0, 0.0);
  for (const auto& [g, c] : f) s += coeff_cast<cplx>(c) * unit_pow(z1, g.a) * unit_pow(z2, g.b);
  return s;
}

namespace detail {

/// Golden-section minimization of a 1-periodic-ish function on [lo, hi].
template <class F>
double golden_min(F&& fn, double lo, double hi, int iters) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = fn(d);
    }
  }
  return fc < fd ? c : d;
}

/// Newton iteration for a complex function of two real angles, with
/// derivatives by central differences.  Stops as soon as |F| stops shrinking.
template <class F>
std::pair<double, double> newton2(F&& fn, double p1, double p2, int iters) {
  double best = std::abs(fn(p1, p2));
  for (int it = 0; it < iters && best > 0.0; ++it) {
    const double h = 1e-7;
    const cplx f0 = fn(p1, p2);
    const cplx d1 = (fn(p1 + h, p2) - fn(p1 - h, p2)) / (2 * h);
    const cplx d2 = (fn(p1, p2 + h) - fn(p1, p2 - h)) / (2 * h);
    const double a = d1.real(), b = d2.real(), c = d1.imag(), d = d2.imag();
    const double det = a * d - b * c;
    if (std::abs(det) < 1e-300) break;
    const double s1 = (d * f0.real() - b * f0.imag()) / det;
    const double s2 = (-c * f0.real() + a * f0.imag()) / det;
    const double q1 = p1 - s1, q2 = p2 - s2;
    const double v = std::abs(fn(q1, q2));
    if (!(v < best)) break;
    best = v;
    p1 = q1;
    p2 = q2;
  }
  return {p1, p2};
}

/// Grid minima of |F| over the torus followed by golden-section coordinate
/// refinement and a Newton polish.  Returns the best (phi1, phi2, |F|).
template <class F>
std::tuple<double, double, double> torus_minimize(F&& fn, int grid, int refine_steps) {
  const double two_pi = 2.0 * std::numbers::pi, h = two_pi / grid;
  std::vector<double> vals(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) vals[static_cast<std::size_t>(i) * grid + j] = std::abs(fn(i * h, j * h));
  auto at = [&](int i, int j) { return vals[static_cast<std::size_t>((i + grid) % grid) * grid + (j + grid) % grid]; };
  std::vector<std::pair<double, std::pair<int, int>>> minima;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double v = at(i, j);
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && at(i + di, j + dj) < v) {
            local = false;
            break;
          }
      if (local) minima.push_back({v, {i, j}});
    }
  std::sort(minima.begin(), minima.end());
  if (minima.size() > 16) minima.resize(16);
  double best1 = 0, best2 = 0, best = INFINITY;
  for (const auto& [v, ij] : minima) {
    double p1 = ij.first * h, p2 = ij.second * h, w = h;
    for (int s = 0; s < refine_steps; ++s) {
      p1 = golden_min([&](double t) { return std::abs(fn(t, p2)); }, p1 - w, p1 + w, 40);
      p2 = golden_min([&](double t) { return std::abs(fn(p1, t)); }, p2 - w, p2 + w, 40);
      w *= 0.5;
    }
    std::tie(p1, p2) = newton2(fn, p1, p2, 30);
    const double r = std::abs(fn(p1, p2));
    if (r < best) {
      best = r;
      best1 = p1;
      best2 = p2;
    }
  }
  return {best1, best2, best};
}

}  // namespace detail

inline constexpr double kCharacterTolerance = 1e-9;
inline constexpr double kDeterminantTolerance = 1e-8;

template <Coefficient C>
std::optional<CharacterWitness> character_witness(const RingElement<C>& f, int grid = 64, int refine_steps = 8) {
  if (f.is_zero()) return CharacterWitness{{1, 0}, {1, 0}, 0.0};
  const auto angles = root_of_unity_angles(12);
  for (double a1 : angles)
    for (double a2 : angles) {
      const cplx z1 = unit_from_angle(a1), z2 = unit_from_angle(a2);
      const double r = std::abs(character_value(f, z1, z2));
      if (r < kCharacterTolerance) return CharacterWitness{z1, z2, r};
    }
  auto fn = [&](double p1, double p2) { return character_value(f, std::polar(1.0, p1), std::polar(1.0, p2)); };
  const auto [p1, p2, r] = detail::torus_minimize(fn, grid, refine_steps);
  if (r < kCharacterTolerance) return CharacterWitness{std::polar(1.0, p1), std::polar(1.0, p2), r};
  return std::nullopt;
}

struct RepWitness {
  int p = 1;
  cplx theta;
  cplx zeta1;
  cplx zeta2;
  double det_residual = 0.0;
  double sigma_min = 0.0;
};

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

/// pi(x) = zeta1 U, pi(y) = zeta2 V, pi(z) = theta I with U = diag(theta^j)
/// and V the cyclic shift e_j -> e_(j+1).
inline CMatrix rep_generator(char which, int p, cplx theta, cplx zeta) {
  CMatrix m = CMatrix::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    if (which == 'x') m(j, j) = zeta * unit_pow(theta, j);
    if (which == 'y') m((j + 1) % p, j) = zeta;
    if (which == 'z') m(j, j) = theta;
  }
  return m;
}

template <Coefficient C>
CMatrix rep_matrix(const RingElement<C>& f, int p, cplx theta, cplx z1, cplx z2) {
  CMatrix m = CMatrix::Zero(p, p);
  for (const auto& [g, c] : f) {
    const cplx base = coeff_cast<cplx>(c) * unit_pow(z1, g.a) * unit_pow(z2, g.b) * unit_pow(theta, g.c);
    const std::int64_t bm = ((g.b % p) + p) % p;
    for (int j = 0; j < p; ++j) {
      const std::int64_t row = (j + bm) % p;
      m(row, j) += base * unit_pow(theta, g.a * (j + g.b));
    }
  }
  return m;
}

inline double smallest_singular_value(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

struct RepSearchOptions {
  int p_min = 1;
  int p_max = 8;
  int grid = 32;
  int refine_steps = 6;
};

template <Coefficient C>
std::optional<RepWitness> rep_witness(const RingElement<C>& f, const RepSearchOptions& opt = {}) {
  if (opt.p_max < 1) throw DomainError("rep_witness needs p_max >= 1");
  double scale = 0.0;
  for (const auto& [g, c] : f) scale += std::abs(coeff_cast<cplx>(c));
  scale = std::max(1.0, scale);
  auto accept = [&](int p, cplx theta, cplx z1, cplx z2) -> std::optional<RepWitness> {
    const CMatrix m = rep_matrix(f, p, theta, z1, z2);
    const double d = std::abs(m.determinant());
    if (d >= kDeterminantTolerance) return std::nullopt;
    const double s = smallest_singular_value(m);
    if (s >= kDeterminantTolerance * scale) return std::nullopt;
    return RepWitness{p, theta, z1, z2, d, s};
  };
  const auto angles = root_of_unity_angles(12);
  for (int p = std::max(1, opt.p_min); p <= opt.p_max; ++p) {
    for (int r = 0; r < p; ++r) {
      if (std::gcd(r, p) != 1) continue;
      const cplx theta = unit_from_angle(2.0 * std::numbers::pi * r / p);
      for (double a1 : angles)
        for (double a2 : angles)
          if (auto w = accept(p, theta, unit_from_angle(a1), unit_from_angle(a2))) return w;
      auto fn = [&](double p1, double p2) {
        return rep_matrix(f, p, theta, std::polar(1.0, p1), std::polar(1.0, p2)).determinant();
      };
      const auto [p1, p2, res] = detail::torus_minimize(fn, opt.grid, opt.refine_steps);
      if (res < kDeterminantTolerance)
        if (auto w = accept(p, theta, std::polar(1.0, p1), std::polar(1.0, p2))) return w;
    }
  }
  return std::nullopt;
}

/// Two-variable Laurent polynomial with complex coefficients, keyed by (d1, d2).
using Laurent2 = std::map<std::pair<std::int64_t, std::int64_t>, cplx>;

inline cplx eval2(const Laurent2& g, cplx u, cplx v) {
  cplx s(0.0, 0.0);
  for (const auto& [d, c] : g) s += c * unit_pow(u, d.first) * unit_pow(v, d.second);
  return s;
}

enum class VarietyStatus { empty, zero_found, undetermined };

struct VarietyCertificate {
  VarietyStatus status = VarietyStatus::undetermined;
  double min_modulus = 0.0;   // smallest sampled |g|
  double lipschitz = 0.0;     // sum |c| (|d1| + |d2|)
  double step = 0.0;          // chord radius of a grid cell
  double phi1 = 0.0, phi2 = 0.0;  // location of the smallest value found
};

inline VarietyCertificate unitary_variety_empty(const Laurent2& g, int grid = 256) {
  if (g.empty()) throw DomainError("unitary_variety_empty needs g != 0");
  VarietyCertificate cert;
  bool two_var = false;
  for (const auto& [d, c] : g) {
    cert.lipschitz += std::abs(c) * (std::abs(static_cast<double>(d.first)) + std::abs(static_cast<double>(d.second)));
    two_var = two_var || d.second != 0;
  }
  const double h = 2.0 * std::numbers::pi / grid;
  cert.step = 2.0 * std::sin(h / 4.0);  // each coordinate within half a cell
  cert.min_modulus = INFINITY;
  const int g2 = two_var ? grid : 1;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < g2; ++j) {
      const double v = std::abs(eval2(g, unit_from_angle(i * h), unit_from_angle(j * h)));
      if (v < cert.min_modulus) {
        cert.min_modulus = v;
        cert.phi1 = i * h;
        cert.phi2 = j * h;
      }
    }
  if (cert.min_modulus > cert.lipschitz * cert.step) {
    cert.status = VarietyStatus::empty;
    return cert;
  }
  auto fn = [&](double p1, double p2) { return eval2(g, std::polar(1.0, p1), std::polar(1.0, two_var ? p2 : 0.0)); };
  auto [p1, p2, r] = detail::torus_minimize(fn, std::min(grid, 128), 6);
  if (r < cert.min_modulus) {
    cert.min_modulus = r;
    cert.phi1 = p1;
    cert.phi2 = two_var ? p2 : 0.0;
  }
  cert.status = cert.min_modulus < kCharacterTolerance ? VarietyStatus::zero_found : VarietyStatus::undetermined;
  return cert;
}

}  // namespace heisendyn
