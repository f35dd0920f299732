#pragma once

// The cocycle test for f = g1 y + g0 with g0, g1 in Z[x^+-1, z^+-1].
// phi_theta(xi) = log|g0(xi, theta) / g1(xi, theta)|; nonexpansiveness is
// detected by zeros of its Lebesgue mean (condition 1) or of its sums over
// finite rotation orbits (condition 2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/cyclotomic.hpp"
#include "heisendyn/error.hpp"
#include "heisendyn/localization.hpp"
#include "heisendyn/mahler.hpp"
#include "heisendyn/parse.hpp"
#include "heisendyn/ring.hpp"
#include "heisendyn/witnesses.hpp"

namespace heisendyn {

/// Integer Laurent polynomial in (xi, theta), keyed by (xi-exponent, theta-exponent).
using ZLaurent2 = std::map<std::pair<std::int64_t, std::int64_t>, mpz_class>;

enum class Orientation { y_linear, x_linear };

struct LinearDecomposition {
  ZLaurent2 g0;
  ZLaurent2 g1;
  Orientation orientation = Orientation::y_linear;
  std::int64_t shift = 0;  // the split is of y^-shift * f (after the swap when x-linear)

  /// y^shift (g1 y + g0), swapped back when x-linear; equals the input of decompose_linear.
  ZElement reconstruct() const {
    ZElement h;
    for (const auto& [d, c] : g0) h.add(GroupElement{d.first, 0, d.second}, c);
    for (const auto& [d, c] : g1) h.add(GroupElement{d.first, 1, d.second}, c);
    h = left_shift(GroupElement::y(shift), h);
    return orientation == Orientation::x_linear ? swap_xy(h) : h;
  }
};

namespace detail {

inline std::optional<LinearDecomposition> try_y_linear(const ZElement& f, Orientation o) {
  if (f.is_zero()) return std::nullopt;
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  for (const auto& [g, c] : f) {
    lo = std::min(lo, g.b);
    hi = std::max(hi, g.b);
  }
  if (hi - lo > 1) return std::nullopt;
  LinearDecomposition d;
  d.orientation = o;
  d.shift = lo;
  // y^-k x^a y^(k+e) z^c = x^a y^e z^(c + a k)
  for (const auto& [g, c] : f) {
    const GroupElement h = group_mul(GroupElement::y(-lo), g);
    (h.b == 0 ? d.g0 : d.g1)[{h.a, h.c}] += c;
  }
  return d;
}

}  // namespace detail

inline LinearDecomposition decompose_linear(const ZElement& f) {
  if (auto d = detail::try_y_linear(f, Orientation::y_linear)) return *d;
  if (auto d = detail::try_y_linear(swap_xy(f), Orientation::x_linear)) return *d;
  throw NotLinearError(format_poly(f));
}

inline CLaurent at_theta(const ZLaurent2& g, cplx theta) {
  CLaurent r;
  for (const auto& [d, c] : g) r[d.first] += c.get_d() * unit_pow(theta, d.second);
  for (auto it = r.begin(); it != r.end();) it = it->second == cplx(0.0, 0.0) ? r.erase(it) : std::next(it);
  return r;
}

inline cplx eval2(const ZLaurent2& g, cplx xi, cplx theta) {
  cplx s(0.0, 0.0);
  for (const auto& [d, c] : g) s += c.get_d() * unit_pow(xi, d.first) * unit_pow(theta, d.second);
  return s;
}

inline Laurent2 to_complex(const ZLaurent2& g) {
  Laurent2 r;
  for (const auto& [d, c] : g) r[d] = c.get_d();
  return r;
}

/// Log Mahler measure of g(., theta); -infinity for the zero polynomial.
inline MahlerResult mahler_at(const ZLaurent2& g, cplx theta) {
  const CLaurent p = at_theta(g, theta);
  if (p.empty()) return {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), true, 0};
  return mahler_measure(p);
}

struct Crossing {
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  double value = 0.0;  // M at the bracket midpoint
};

struct Condition1Report {
  bool precondition = false;
  std::vector<double> phi;
  std::vector<double> M;
  std::vector<Crossing> crossings;
};

inline bool varieties_empty(const LinearDecomposition& d) {
  return !d.g0.empty() && !d.g1.empty() &&
         unitary_variety_empty(to_complex(d.g0)).status == VarietyStatus::empty &&
         unitary_variety_empty(to_complex(d.g1)).status == VarietyStatus::empty;
}

inline double mahler_difference(const LinearDecomposition& d, double phi) {
  const cplx theta = unit_from_angle(phi);
  return mahler_at(d.g0, theta).value - mahler_at(d.g1, theta).value;
}

inline Condition1Report condition1_scan(const LinearDecomposition& d, int theta_grid = 512) {
  if (theta_grid < 2) throw DomainError("condition1_scan needs theta_grid >= 2");
  Condition1Report rep;
  rep.precondition = varieties_empty(d);
  const double h = 2.0 * std::numbers::pi / theta_grid;
  rep.phi.resize(static_cast<std::size_t>(theta_grid));
  rep.M.resize(static_cast<std::size_t>(theta_grid));
  parallel_for(static_cast<std::size_t>(theta_grid), [&](std::size_t k) {
    rep.phi[k] = h * static_cast<double>(k);
    rep.M[k] = mahler_difference(d, rep.phi[k]);
  });
  for (int k = 0; k < theta_grid; ++k) {
    const double m0 = rep.M[static_cast<std::size_t>(k)];
    const double m1 = rep.M[static_cast<std::size_t>((k + 1) % theta_grid)];
    if (!std::isfinite(m0) || !std::isfinite(m1)) continue;
    if (m0 == 0.0) {
      rep.crossings.push_back({k * h, k * h, 0.0});
      continue;
    }
    if ((m0 < 0) == (m1 < 0) || m1 == 0.0) continue;
    double lo = k * h, hi = (k + 1) * h, flo = m0;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double fm = mahler_difference(d, mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    rep.crossings.push_back({lo, hi, mahler_difference(d, 0.5 * (lo + hi))});
  }
  return rep;
}

/// Sum over j < p of phi_theta(xi theta^j); nullopt on a pole (g0 g1 = 0).
inline std::optional<double> orbit_sum(const LinearDecomposition& d, int p, cplx theta, cplx xi) {
  double s = 0.0;
  cplx t(1.0, 0.0);
  for (int j = 0; j < p; ++j) {
    const cplx pt = xi * t;
    const double a0 = std::abs(eval2(d.g0, pt, theta)), a1 = std::abs(eval2(d.g1, pt, theta));
    if (a0 < 1e-12 || a1 < 1e-12) return std::nullopt;
    s += std::log(a0) - std::log(a1);
    t *= theta;
  }
  return s;
}

/// (1/p) sum_j phi_theta(zeta theta^j); throws when the orbit meets a zero of g0 g1.
inline double atomic_orbit_test(const LinearDecomposition& d, int p, cplx theta, cplx zeta) {
  if (p < 1) throw DomainError("atomic_orbit_test needs p >= 1");
  check_unit(theta);
  check_unit(zeta);
  auto s = orbit_sum(d, p, theta, zeta);
  if (!s) throw DomainError("rotation orbit meets a zero of g0*g1");
  return *s / p;
}

/// Exact check, in Z[w] with w = exp(2 pi i / lcm(p, s)), that
/// prod_j |g0|^2 = prod_j |g1|^2 over the orbit of xi = exp(2 pi i t / s)
/// under theta = exp(2 pi i r / p), with g0 g1 nonzero on the orbit.
inline bool exact_orbit_check(const LinearDecomposition& d, int p, int r, int s, int t) {
  const int N = std::lcm(p, s);
  const Cyclotomic K(N);
  const std::int64_t theta_e = static_cast<std::int64_t>(r) * (N / p);
  const std::int64_t xi_e = static_cast<std::int64_t>(t) * (N / s);
  auto value = [&](const ZLaurent2& g, std::int64_t pt_e) {
    auto acc = K.zero();
    for (const auto& [dd, c] : g) acc = K.add(acc, K.scale(K.power(dd.first * pt_e + dd.second * theta_e), c));
    return acc;
  };
  auto n0 = K.one(), n1 = K.one();
  for (int j = 0; j < p; ++j) {
    const std::int64_t pt_e = xi_e + j * theta_e;
    const auto v0 = value(d.g0, pt_e), v1 = value(d.g1, pt_e);
    if (K.is_zero(v0) || K.is_zero(v1)) return false;
    n0 = K.mul(n0, K.mul(v0, K.conj(v0)));
    n1 = K.mul(n1, K.mul(v1, K.conj(v1)));
  }
  return K.is_zero(K.sub(n0, n1));
}

struct Condition2Hit {
  int p = 1;
  int r = 0;          // theta = exp(2 pi i r / p)
  double xi_phi = 0;  // xi = exp(i xi_phi)
  double value = 0;   // orbit sum at xi
  bool exact = false; // confirmed in cyclotomic arithmetic
  int xi_order = 0;   // s with xi = exp(2 pi i t / s) when exact
  int xi_index = 0;   // t
};

namespace detail {

/// Root of unity exp(2 pi i t / s), s <= max_s, within tol of exp(i phi).
inline std::optional<std::pair<int, int>> snap_root_of_unity(double phi, int max_s, double tol = 1e-9) {
  for (int s = 1; s <= max_s; ++s) {
    const double x = phi * s / (2.0 * std::numbers::pi);
    const double t = std::round(x);
    if (std::abs(x - t) * 2.0 * std::numbers::pi / s < tol) {
      int ti = static_cast<int>(std::fmod(t, s));
      if (ti < 0) ti += s;
      return std::make_pair(s, ti);
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct Condition2Options {
  int p_max = 12;
  int xi_grid = 256;
  int candidate_order = 24;  // root-of-unity xi tried first
  int snap_order = 120;
};

inline std::vector<Condition2Hit> condition2_scan(const LinearDecomposition& d, const Condition2Options& opt = {}) {
  std::vector<Condition2Hit> hits;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int p = 1; p <= opt.p_max; ++p)
    for (int r = 0; r < p; ++r) {
      if (std::gcd(r, p) != 1) continue;
      const cplx theta = unit_from_angle(two_pi * r / p);
      auto F = [&](double phi) { return orbit_sum(d, p, theta, std::polar(1.0, phi)); };
      bool found_exact = false;
      // Exact candidates first.  Different xi on one rotation orbit give the same sum.
      for (int s = 1; s <= opt.candidate_order && !found_exact; ++s)
        for (int t = 0; t < s; ++t) {
          if (std::gcd(t, s) != 1) continue;
          const double phi = two_pi * t / s;
          auto v = orbit_sum(d, p, theta, unit_from_angle(phi));
          if (!v || std::abs(*v) > 1e-9) continue;
          if (exact_orbit_check(d, p, r, s, t)) {
            hits.push_back({p, r, phi, *v, true, s, t});
            found_exact = true;
            break;
          }
        }
      if (found_exact) continue;
      // Sign changes on a grid over one period of the orbit sum.
      const double period = two_pi / p, h = period / opt.xi_grid;
      std::vector<std::optional<double>> vals(static_cast<std::size_t>(opt.xi_grid) + 1);
      for (int k = 0; k <= opt.xi_grid; ++k) vals[static_cast<std::size_t>(k)] = F(k * h);
      auto record = [&](double phi) {
        auto v = F(phi);
        if (!v) return;
        Condition2Hit hit{p, r, phi, *v, false, 0, 0};
        if (auto snap = detail::snap_root_of_unity(phi, opt.snap_order)) {
          if (exact_orbit_check(d, p, r, snap->first, snap->second)) {
            hit.exact = true;
            hit.xi_order = snap->first;
            hit.xi_index = snap->second;
            hit.xi_phi = two_pi * snap->second / snap->first;
          }
        }
        hits.push_back(hit);
      };
      for (int k = 0; k < opt.xi_grid; ++k) {
        const auto& a = vals[static_cast<std::size_t>(k)];
        const auto& b = vals[static_cast<std::size_t>(k + 1)];
        if (!a || !b) continue;
        if (*a == 0.0) {
          record(k * h);
          continue;
        }
        if ((*a < 0) == (*b < 0) || *b == 0.0) continue;
        double lo = k * h, hi = (k + 1) * h, flo = *a;
        bool pole = false;
        while (hi - lo > 1e-13) {
          const double mid = 0.5 * (lo + hi);
          auto fm = F(mid);
          if (!fm) {
            pole = true;
            break;
          }
          if ((*fm < 0) == (flo < 0)) {
            lo = mid;
            flo = *fm;
          } else {
            hi = mid;
          }
        }
        if (!pole) record(0.5 * (lo + hi));
      }
      // Tangential zeros: local minima of |F| that refine below tolerance.
      for (int k = 1; k < opt.xi_grid; ++k) {
        const auto &a = vals[static_cast<std::size_t>(k - 1)], &b = vals[static_cast<std::size_t>(k)],
                   &c = vals[static_cast<std::size_t>(k + 1)];
        if (!a || !b || !c) continue;
        if (!(std::abs(*b) <= std::abs(*a) && std::abs(*b) <= std::abs(*c))) continue;
        if ((*a < 0) != (*b < 0) || (*b < 0) != (*c < 0)) continue;  // already bracketed
        const double phi = detail::golden_min(
            [&](double t) {
              auto v = F(t);
              return v ? std::abs(*v) : INFINITY;
            },
            (k - 1) * h, (k + 1) * h, 80);
        auto v = F(phi);
        if (v && std::abs(*v) < 1e-8) record(phi);
      }
    }
  return hits;
}

struct EntropyResult {
  double value = 0.0;           // outer trapezoid of Jensen inner values
  double error_estimate = 0.0;  // Richardson estimate from halving the outer rule
  double cross_check = 0.0;     // outer midpoint of quadrature inner values
  int nodes = 0;
};

/// int max(m(g0(., theta)), m(g1(., theta))) dtheta.
inline EntropyResult entropy_bound(const LinearDecomposition& d, int quadrature_n = 256) {
  if (quadrature_n < 4) throw DomainError("entropy_bound needs at least 4 nodes");
  const double two_pi = 2.0 * std::numbers::pi;
  auto jensen = [&](double phi) {
    const cplx th = unit_from_angle(phi);
    return std::max(mahler_at(d.g0, th).value, mahler_at(d.g1, th).value);
  };
  auto quad = [&](double phi) {
    const cplx th = std::polar(1.0, phi);
    auto m = [&](const ZLaurent2& g) {
      const CLaurent p = at_theta(g, th);
      return p.empty() ? -INFINITY : mahler_quadrature(p, 256);
    };
    return std::max(m(d.g0), m(d.g1));
  };
  const int n = quadrature_n;
  std::vector<double> va(static_cast<std::size_t>(n)), vb(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    va[k] = jensen(two_pi * static_cast<double>(k) / n);
    vb[k] = quad(two_pi * (static_cast<double>(k) + 0.5) / n);
  });
  double full = 0.0, half = 0.0, mid = 0.0;
  for (int k = 0; k < n; ++k) {
    full += va[static_cast<std::size_t>(k)];
    if (k % 2 == 0) half += va[static_cast<std::size_t>(k)];
    mid += vb[static_cast<std::size_t>(k)];
  }
  full /= n;
  half /= (n / 2);
  mid /= n;
  EntropyResult r;
  r.value = full;
  r.error_estimate = std::abs(full - half) / 3.0;
  r.cross_check = mid;
  r.nodes = n;
  return r;
}

enum class CocycleVerdict { nonexpansive_exact, numerical_evidence, no_hit };

inline std::string to_string(CocycleVerdict v) {
  switch (v) {
    case CocycleVerdict::nonexpansive_exact: return "nonexpansive-exact";
    case CocycleVerdict::numerical_evidence: return "numerical-evidence";
    default: return "no-hit";
  }
}

struct CocycleReport {
  LinearDecomposition decomposition;
  bool precondition = false;
  std::vector<Crossing> crossings;
  std::vector<Condition2Hit> hits;
  CocycleVerdict verdict = CocycleVerdict::no_hit;
};

inline CocycleReport cocycle_analysis(const ZElement& f, int theta_grid = 256, const Condition2Options& opt = {}) {
  CocycleReport rep;
  rep.decomposition = decompose_linear(f);
  const auto c1 = condition1_scan(rep.decomposition, theta_grid);
  rep.precondition = c1.precondition;
  rep.crossings = c1.crossings;
  rep.hits = condition2_scan(rep.decomposition, opt);
  const bool exact = std::any_of(rep.hits.begin(), rep.hits.end(), [](const auto& h) { return h.exact; });
  if (exact) {
    rep.verdict = CocycleVerdict::nonexpansive_exact;
  } else if (!rep.hits.empty() || !rep.crossings.empty()) {
    rep.verdict = CocycleVerdict::numerical_evidence;
  }
  return rep;
}

}  // namespace heisendyn
