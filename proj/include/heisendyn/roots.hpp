#pragma once

// Roots of complex polynomials: Aberth-Ehrlich simultaneous iteration, with a
// companion-matrix eigenvalue fallback when it does not settle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "heisendyn/error.hpp"

namespace heisendyn {

using cplx = std::complex<double>;

struct RootResult {
  std::vector<cplx> roots;
  int iterations = 0;
  bool converged = false;
  bool used_fallback = false;
};

/// coeffs[i] is the coefficient of t^i; the top coefficient must be nonzero.
inline std::pair<cplx, cplx> horner_with_derivative(const std::vector<cplx>& coeffs, cplx t) {
  cplx p = coeffs.back(), dp(0.0, 0.0);
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    dp = dp * t + p;
    p = p * t + coeffs[i];
  }
  return {p, dp};
}

inline std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<cplx> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return r;
}

inline RootResult polynomial_roots(const std::vector<cplx>& coeffs, double tol = 1e-12, int max_iter = 200) {
  if (coeffs.empty() || coeffs.back() == cplx(0.0, 0.0)) throw DomainError("polynomial_roots needs a nonzero leading coefficient");
  const int n = static_cast<int>(coeffs.size()) - 1;
  RootResult res;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  if (n == 1) {
    res.roots = {-coeffs[0] / coeffs[1]};
    res.converged = true;
    return res;
  }
  // Initial guesses on a circle of the Cauchy radius, rotated off the axes.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(coeffs[static_cast<std::size_t>(i)] / coeffs.back()));
  radius = std::min(1.0 + radius, 1e6);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius * 0.5 + 0.25, 2.0 * std::numbers::pi * k / n + 0.4);
  for (int it = 1; it <= max_iter; ++it) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      const auto [p, dp] = horner_with_derivative(coeffs, zk);
      if (p == cplx(0.0, 0.0)) continue;
      const cplx ratio = p / dp;
      cplx s(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      const cplx step = ratio / (1.0 - ratio * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      zk -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(zk)));
    }
    res.iterations = it;
    if (max_step < tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) {
    z = companion_roots(coeffs);
    res.used_fallback = true;
    res.converged = true;
  }
  res.roots = std::move(z);
  return res;
}

}  // namespace heisendyn
