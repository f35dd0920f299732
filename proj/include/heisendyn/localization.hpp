#pragma once

// Localization at z = theta.  Each theta on the unit circle gives a quotient
// of l1(H) in which z acts as the scalar theta; there x^a y^b multiply with
// the phase theta^(-a'b).  f is invertible in l1(H) iff its image is
// invertible at every theta, and we certify that arc by arc.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/parallel.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

/// theta^m by repeated squaring, so exact unit values (+-1, +-i) stay exact.
inline cplx unit_pow(cplx theta, std::int64_t m) {
  if (m < 0) {
    theta = std::conj(theta);
    m = -m;
  }
  cplx r(1.0, 0.0);
  while (m > 0) {
    if (m & 1) r *= theta;
    m >>= 1;
    if (m > 0) theta *= theta;
  }
  return r;
}

inline void check_unit(cplx theta) {
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw ThetaError("theta must lie on the unit circle");
}

/// theta = e^{i phi}, with the exact values at multiples of pi/2.
inline cplx unit_from_angle(double phi) {
  const double quarter = phi / (std::numbers::pi / 2);
  const double r = std::round(quarter);
  if (std::abs(quarter - r) < 1e-15) {
    const long q = static_cast<long>(r) & 3;
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[q];
  }
  return std::polar(1.0, phi);
}

class TwistedElement {
 public:
  using key = std::pair<std::int64_t, std::int64_t>;

  explicit TwistedElement(cplx theta) : theta_(theta) { check_unit(theta); }

  cplx theta() const { return theta_; }
  const std::map<key, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::int64_t a, std::int64_t b, cplx v) {
    if (v == cplx(0.0, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(key{a, b}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
    }
  }

  cplx coeff(std::int64_t a, std::int64_t b) const {
    auto it = terms_.find(key{a, b});
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& [k, v] : terms_) s += std::abs(v);
    return s;
  }

 private:
  cplx theta_;
  std::map<key, cplx> terms_;
};

template <Coefficient C>
TwistedElement project(const RingElement<C>& f, cplx theta) {
  TwistedElement r(theta);
  for (const auto& [g, c] : f) r.add(g.a, g.b, coeff_cast<cplx>(c) * unit_pow(theta, g.c));
  return r;
}

inline TwistedElement twisted_mul(const TwistedElement& p, const TwistedElement& q) {
  if (std::abs(p.theta() - q.theta()) > 1e-15) throw ThetaError("twisted elements over different theta");
  TwistedElement r(p.theta());
  for (const auto& [k1, v1] : p.terms())
    for (const auto& [k2, v2] : q.terms())
      r.add(k1.first + k2.first, k1.second + k2.second, v1 * v2 * unit_pow(p.theta(), -k2.first * k1.second));
  return r;
}

/// Image of the group-ring involution: c x^a y^b -> conj(c) theta^(-ab) x^-a y^-b.
inline TwistedElement twisted_involution(const TwistedElement& p) {
  TwistedElement r(p.theta());
  for (const auto& [k, v] : p.terms())
    r.add(-k.first, -k.second, std::conj(v) * unit_pow(p.theta(), -k.first * k.second));
  return r;
}

/// Sum of |coefficient| * |z-exponent|: a Lipschitz constant of theta -> projection.
template <Coefficient C>
double central_lipschitz(const RingElement<C>& f) {
  double s = 0.0;
  for (const auto& [g, c] : f) s += std::abs(coeff_cast<cplx>(c)) * std::abs(static_cast<double>(g.c));
  return s;
}

/// max_(k,l) |f_(k,l)(theta)| - sum of the other column moduli.
template <Coefficient C>
double dominant_margin(const RingElement<C>& f, cplx theta) {
  const TwistedElement p = project(f, theta);
  double mx = 0.0, sum = 0.0;
  for (const auto& [k, v] : p.terms()) {
    const double a = std::abs(v);
    mx = std::max(mx, a);
    sum += a;
  }
  return 2.0 * mx - sum;
}

/// A = c + a with c central, B = f - A.  Powers of a are kept exactly so the
/// projected norms can be bounded uniformly over an arc.
struct Split {
  std::string label;
  ZElement central;  // c, supported on the center
  ZElement a;        // A - c
  ZElement b;        // f - A
  std::vector<ZElement> powers;  // a^0 .. a^N
  std::vector<double> power_lipschitz;
  double central_lip = 0.0;
  double b_lip = 0.0;
};

inline Split make_split(std::string label, ZElement central, ZElement a, ZElement b, int N) {
  Split s{std::move(label), std::move(central), std::move(a), std::move(b), {}, {}, 0.0, 0.0};
  s.powers.push_back(ZElement(mpz_class(1)));
  for (int n = 1; n <= N; ++n) s.powers.push_back(ring_mul(s.powers.back(), s.a));
  for (const auto& p : s.powers) s.power_lipschitz.push_back(central_lipschitz(p));
  s.central_lip = central_lipschitz(s.central);
  s.b_lip = central_lipschitz(s.b);
  return s;
}

struct SplitBound {
  double u = 0.0;        // upper bound on the inverse norm of the image of A
  double b_norm = 0.0;   // upper bound on the norm of the image of B
  double product = 0.0;  // u * b_norm; < 1 certifies
  std::string diagnostic;
};

/// Bounds valid for every theta within chord distance delta of theta0.
/// The central modulus must clear slack * max(1, ||c||_1) so that rounding
/// cannot certify an arc whose endpoint is a zero of c.
inline std::optional<SplitBound> split_bound(const Split& s, cplx theta0, double delta, std::string* why = nullptr,
                                             double slack = 1e-9) {
  const int N = static_cast<int>(s.powers.size()) - 1;
  cplx c0(0.0, 0.0);
  double scale = 1.0;
  for (const auto& [g, v] : s.central) {
    c0 += v.get_d() * unit_pow(theta0, g.c);
    scale += std::abs(v.get_d());
  }
  const double cl = std::abs(c0) - delta * s.central_lip;
  if (cl <= slack * scale) {
    if (why) *why = "central part vanishes";
    return std::nullopt;
  }
  std::vector<double> nb(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n)
    nb[static_cast<std::size_t>(n)] =
        project(s.powers[static_cast<std::size_t>(n)], theta0).norm() + delta * s.power_lipschitz[static_cast<std::size_t>(n)];
  const double na = N >= 1 ? nb[1] : project(s.a, theta0).norm() + delta * central_lipschitz(s.a);
  if (na >= cl) {
    if (why) *why = "norm of a is not below the central modulus";
    return std::nullopt;
  }
  double u = 0.0, cpow = cl;
  for (int n = 0; n <= N; ++n) {
    u += nb[static_cast<std::size_t>(n)] / cpow;
    cpow *= cl;
  }
  // cpow = cl^(N+2) now.
  const double tail1 = std::pow(na / cl, N + 1) / (cl - na);
  const double tail2 = nb[static_cast<std::size_t>(N)] * na / (cpow / cl) / (cl - na);
  u += std::min(tail1, tail2);
  SplitBound r;
  r.u = u;
  r.b_norm = project(s.b, theta0).norm() + delta * s.b_lip;
  r.product = r.u * r.b_norm;
  return r;
}

/// Single-theta version: A is given by its support within f.
inline std::optional<SplitBound> neumann_split_certificate(const ZElement& f, cplx theta,
                                                          const std::vector<GroupElement>& split, int N,
                                                          std::string* diagnostic = nullptr) {
  check_unit(theta);
  ZElement central, a, b;
  for (const auto& [g, c] : f) {
    const bool in_a = std::find(split.begin(), split.end(), g) != split.end();
    if (!in_a) {
      b.add(g, c);
    } else if (g.is_central()) {
      central.add(g, c);
    } else {
      a.add(g, c);
    }
  }
  if (central.is_zero()) {
    if (diagnostic) *diagnostic = "split has no constant term";
    return std::nullopt;
  }
  const Split s = make_split("given", central, a, b, N);
  auto r = split_bound(s, theta, 0.0, diagnostic);
  if (!r) return std::nullopt;
  if (r->product >= 1.0) {
    if (diagnostic) *diagnostic = "bound not below 1";
    return std::nullopt;
  }
  return r;
}

inline std::int64_t sign_of(const mpz_class& v) { return sgn(v) < 0 ? -1 : 1; }

/// Split family: the constant is either the whole central column of f or
/// its identity coefficient; on top of that either nothing else, or the
/// unit-sign part of a pair of non-central monomials.
inline std::vector<Split> split_family(const ZElement& f, int N) {
  std::vector<Split> out;
  ZElement column, rest;
  for (const auto& [g, c] : f) (g.is_central() ? column : rest).add(g, c);
  std::vector<std::pair<std::string, ZElement>> constants;
  if (!column.is_zero()) constants.emplace_back("column", column);
  const mpz_class c0 = f.coeff(GroupElement::identity());
  if (sgn(c0) != 0 && column.size() > 1) constants.emplace_back("identity", ZElement(c0));
  const auto ns = rest.support();
  for (const auto& [label, cst] : constants) {
    const ZElement base_b = ZElement(f) - cst;
    // Everything non-central goes to a.
    out.push_back(make_split(label + "+all", cst, rest, ZElement(base_b) - rest, N));
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j) {
        ZElement a;
        a.add(ns[i], mpz_class(sign_of(rest.coeff(ns[i]))));
        a.add(ns[j], mpz_class(sign_of(rest.coeff(ns[j]))));
        ZElement b = ZElement(base_b) - a;
        out.push_back(make_split(label + "+pair(" + to_string(ns[i]) + "," + to_string(ns[j]) + ")", cst, a, b, N));
      }
  }
  return out;
}

enum class LocalVerdict { invertible_everywhere, noninvertible_at_theta, inconclusive };

inline std::string to_string(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::invertible_everywhere: return "invertible-everywhere";
    case LocalVerdict::noninvertible_at_theta: return "noninvertible-at-theta";
    default: return "inconclusive";
  }
}

struct ArcEvidence {
  double phi = 0.0;        // arc center angle
  double half_width = 0.0; // arc half-angle
  std::string method;      // "dominant", split label, or "none"
  double value = 0.0;      // certified margin, or U*||B|| for splits
};

struct LocalizationCertificate {
  LocalVerdict verdict = LocalVerdict::inconclusive;
  int grid_size = 0;
  double step = 0.0;       // chord radius of the coarse arcs
  double lipschitz = 0.0;
  std::vector<double> margin_samples;
  std::vector<ArcEvidence> per_theta;
  std::optional<double> noninvertible_phi;
  std::vector<ArcEvidence> failed_arcs;
};

struct LocalizationOptions {
  int grid_size = 512;
  int N = 8;
  int max_depth = 6;
  double slack = 1e-9;
};

namespace detail {

inline bool certify_arc(const ZElement& f, double L, const std::vector<Split>& splits, double phi, double half,
                        int depth, int max_depth, double slack, std::vector<ArcEvidence>& ok,
                        std::vector<ArcEvidence>& failed) {
  const cplx theta = unit_from_angle(phi);
  const double delta = 2.0 * std::sin(half / 2.0);
  const double m = dominant_margin(f, theta) - delta * L;
  if (m > slack) {
    ok.push_back({phi, half, "dominant", m});
    return true;
  }
  for (const auto& s : splits) {
    auto r = split_bound(s, theta, delta, nullptr, slack);
    if (r && r->product < 1.0 - slack) {
      ok.push_back({phi, half, s.label, r->product});
      return true;
    }
  }
  if (depth >= max_depth) {
    failed.push_back({phi, half, "none", m});
    return false;
  }
  const bool left = certify_arc(f, L, splits, phi - half / 2, half / 2, depth + 1, max_depth, slack, ok, failed);
  const bool right = certify_arc(f, L, splits, phi + half / 2, half / 2, depth + 1, max_depth, slack, ok, failed);
  return left && right;
}

}  // namespace detail

/// The abelianization vanishes at a sign point (x, y) in {+-1}^2 when z = 1.
inline std::optional<std::pair<int, int>> sign_point_zero(const ZElement& f) {
  for (int sx : {1, -1})
    for (int sy : {1, -1}) {
      mpz_class s(0);
      for (const auto& [g, c] : f) {
        const int e = ((g.a & 1) && sx < 0 ? -1 : 1) * ((g.b & 1) && sy < 0 ? -1 : 1);
        s += e * c;
      }
      if (sgn(s) == 0) return std::make_pair(sx, sy);
    }
  return std::nullopt;
}

inline LocalizationCertificate certify_all_theta(const ZElement& f, const LocalizationOptions& opt = {}) {
  if (opt.grid_size < 8) throw DomainError("certify_all_theta needs grid_size >= 8");
  if (f.is_zero()) throw DomainError("certify_all_theta needs f != 0");
  LocalizationCertificate cert;
  cert.grid_size = opt.grid_size;
  const double half = std::numbers::pi / opt.grid_size;
  cert.step = 2.0 * std::sin(half / 2.0);
  cert.lipschitz = central_lipschitz(f);
  const auto splits = split_family(f, opt.N);
  const int G = opt.grid_size;
  cert.margin_samples.resize(static_cast<std::size_t>(G));
  struct ArcOut {
    bool ok = false;
    std::vector<ArcEvidence> good, bad;
  };
  std::vector<ArcOut> arcs(static_cast<std::size_t>(G));
  parallel_for(static_cast<std::size_t>(G), [&](std::size_t j) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / G;
    cert.margin_samples[j] = dominant_margin(f, unit_from_angle(phi));
    auto& out = arcs[j];
    out.ok = detail::certify_arc(f, cert.lipschitz, splits, phi, half, 0, opt.max_depth, opt.slack, out.good, out.bad);
  });
  bool all = true;
  for (auto& a : arcs) {
    all = all && a.ok;
    cert.per_theta.insert(cert.per_theta.end(), a.good.begin(), a.good.end());
    cert.failed_arcs.insert(cert.failed_arcs.end(), a.bad.begin(), a.bad.end());
  }
  if (all) {
    cert.verdict = LocalVerdict::invertible_everywhere;
  } else if (sign_point_zero(f)) {
    cert.verdict = LocalVerdict::noninvertible_at_theta;
    cert.noninvertible_phi = 0.0;
  } else {
    cert.verdict = LocalVerdict::inconclusive;
  }
  return cert;
}

}  // namespace heisendyn
