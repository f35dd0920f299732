#pragma once

// Decision ladder for expansiveness of alpha_f: invertibility certificates
// (lopsided, Neumann series, localization) against noninvertibility
// witnesses (characters, finite-dimensional representations, cocycle hits).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heisendyn/cocycle.hpp"
#include "heisendyn/columns.hpp"
#include "heisendyn/error.hpp"
#include "heisendyn/homoclinic.hpp"
#include "heisendyn/localization.hpp"
#include "heisendyn/ring.hpp"
#include "heisendyn/witnesses.hpp"

namespace heisendyn {

struct LopsidedInfo {
  GroupElement dominant;
  mpz_class margin;  // |f_g0| - sum of the others, > 0
};

inline std::optional<LopsidedInfo> lopsided_check(const ZElement& f) {
  if (f.is_zero()) return std::nullopt;
  const mpz_class total = l1_norm(f).get_num();
  for (const auto& [g, c] : f) {
    const mpz_class m = 2 * abs(c) - total;
    if (sgn(m) > 0) return LopsidedInfo{g, m};
  }
  return std::nullopt;
}

namespace detail {

/// Central column of f as a polynomial in z.
inline ZLaurent central_column(const ZElement& f) {
  ZLaurent c;
  for (const auto& [g, v] : f)
    if (g.a == 0 && g.b == 0) c += ZLaurent::monomial(g.c, v);
  return c;
}

}  // namespace detail

/// u = sum_{M <= N} (-1)^M R^M C^-(M+1) for f = C + R, C central.  C is the
/// central column when that is lopsided about its constant term, otherwise
/// the constant term alone.  C^-k is expanded as
/// sum_{j <= K} C(j+k-1, j) (-E)^j / c^(j+k) with E = C - c, so every term
/// shares the denominator |c|^(N+K+1).  Since C commutes with R, u is an
/// approximate inverse on both sides; the residual ||1 - f u||_1 is exact.
inline SeriesInverse neumann_inverse(const ZElement& f, int N, int K = -1) {
  if (N < 0) throw DomainError("neumann_inverse needs N >= 0");
  if (K < 0) K = 2 * N + 16;
  const mpz_class c = f.coeff(GroupElement::identity());
  if (sgn(c) == 0) throw DomainError("no series seed: zero constant term");

  SeriesInverse inv;
  ZLaurent E;
  const ZLaurent column = detail::central_column(f);
  {
    ZLaurent rest = column - ZLaurent(c);
    if (!rest.is_zero() && abs(c) > rest.l1_norm().get_num()) {
      E = rest;
      inv.seed = "central-column";
    } else {
      inv.seed = "constant";
    }
  }
  ZElement R = f;
  R.set(GroupElement::identity(), 0);
  for (const auto& [e, v] : E.coeffs()) R.set(GroupElement{0, 0, e}, 0);

  const mpz_class ac = abs(c);
  mpz_pow_ui(inv.denominator.get_mpz_t(), ac.get_mpz_t(), static_cast<unsigned long>(N + K + 1));

  // (-E)^j for j <= K (only j = 0 when E vanishes).
  const int J = E.is_zero() ? 0 : K;
  std::vector<ZLaurent> negE{ZLaurent(mpz_class(1))};
  for (int j = 1; j <= J; ++j) negE.push_back(negE.back() * (-E));

  auto inverse_power = [&](int k) {
    ZLaurent s;
    mpz_class binom, cp;
    for (int j = 0; j <= J; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j + k - 1), static_cast<unsigned long>(j));
      mpz_pow_ui(cp.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j + k));
      const mpz_class scale = binom * (inv.denominator / cp);
      s += scale * negE[static_cast<std::size_t>(j)];
    }
    return s;
  };

  ColumnForm power = ColumnForm::from_ring(ZElement(mpz_class(1)));
  for (int M = 0; M <= N; ++M) {
    if (M > 0) power = power.left_mul(R);
    inv.numerators.add(power.times_central(inverse_power(M + 1)), M % 2 ? mpz_class(-1) : mpz_class(1));
  }
  inv.residual = detail::residual_of(f, inv.numerators, inv.denominator);
  return inv;
}

struct LopsidedIdeal {
  ColumnForm h;   // q u, integer coefficients
  ColumnForm hf;  // lopsided element of Z[H] f
  mpz_class q;
  GroupElement dominant;
  mpz_class margin;
  mpq_class residual;
};

/// With u f = 1 - e and ||e||_1 < 1/2, h = q u is integral and h f = q (1 - e)
/// is lopsided at the identity.  Verified exactly on h f.
inline std::optional<LopsidedIdeal> lopsided_ideal_search(const ZElement& f, int N) {
  SeriesInverse inv;
  try {
    inv = neumann_inverse(f, N);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  if (inv.residual >= mpq_class(1, 2)) return std::nullopt;
  LopsidedIdeal out;
  out.hf = inv.numerators.right_mul(f);
  const auto [g, m] = out.hf.max_abs();
  const mpz_class margin = 2 * m - out.hf.l1();
  if (sgn(margin) <= 0) return std::nullopt;
  out.h = std::move(inv.numerators);
  out.q = inv.denominator;
  out.dominant = g;
  out.margin = margin;
  out.residual = inv.residual;
  return out;
}

enum class Status { expansive, nonexpansive, inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::expansive: return "expansive";
    case Status::nonexpansive: return "nonexpansive";
    default: return "inconclusive";
  }
}

struct Evidence {
  std::string module;
  std::string kind;  // "certificate", "witness" or "note"
  bool sound = false;
  std::string summary;
};

struct Budget {
  bool lopsided = true;
  bool neumann = true;
  bool localization = true;
  bool character = true;
  bool rep = true;
  bool cocycle = true;
  bool exhaustive = false;  // run every enabled stage even after a verdict
  int neumann_N = 24;
  int neumann_K = -1;
  LocalizationOptions localization_opt;
  int character_grid = 64;
  RepSearchOptions rep_opt;
  int cocycle_theta_grid = 256;
  Condition2Options cocycle_opt;
};

struct Verdict {
  Status status = Status::inconclusive;
  std::vector<Evidence> evidence;

  std::optional<LopsidedInfo> lopsided;
  std::optional<mpq_class> neumann_residual;
  std::string neumann_seed;
  std::optional<LocalizationCertificate> localization;
  std::optional<CharacterWitness> character;
  std::optional<RepWitness> rep;
  std::optional<CocycleReport> cocycle;

  bool has_certificate() const {
    for (const auto& e : evidence)
      if (e.sound && e.kind == "certificate") return true;
    return false;
  }
  bool has_witness() const {
    for (const auto& e : evidence)
      if (e.sound && e.kind == "witness") return true;
    return false;
  }
};

inline Verdict decide(const ZElement& f, const Budget& budget = {}) {
  Verdict v;
  auto open = [&] { return budget.exhaustive || v.status == Status::inconclusive; };
  auto certify = [&](std::string module, std::string summary) {
    v.evidence.push_back({std::move(module), "certificate", true, std::move(summary)});
    if (v.status == Status::inconclusive) v.status = Status::expansive;
  };
  auto witness = [&](std::string module, std::string summary) {
    v.evidence.push_back({std::move(module), "witness", true, std::move(summary)});
    if (v.status == Status::inconclusive) v.status = Status::nonexpansive;
  };
  auto note = [&](std::string module, std::string summary) {
    v.evidence.push_back({std::move(module), "note", false, std::move(summary)});
  };

  if (f.is_zero()) {
    witness("frontend", "zero element is not invertible");
    return v;
  }

  if (budget.lopsided && open()) {
    v.lopsided = lopsided_check(f);
    if (v.lopsided)
      certify("expansiveness_frontend", "lopsided at " + to_string(v.lopsided->dominant) + ", margin " +
                                            v.lopsided->margin.get_str());
    else
      note("expansiveness_frontend", "not lopsided");
  }

  if (budget.neumann && open()) {
    try {
      const auto inv = neumann_inverse(f, budget.neumann_N, budget.neumann_K);
      v.neumann_residual = inv.residual;
      v.neumann_seed = inv.seed;
      if (inv.residual < 1)
        certify("expansiveness_frontend", "Neumann residual " + inv.residual.get_str() + " < 1 (" + inv.seed + " seed)");
      else
        note("expansiveness_frontend", "Neumann residual >= 1");
    } catch (const DomainError& e) {
      note("expansiveness_frontend", e.what());
    }
  }

  if (budget.localization && open()) {
    v.localization = certify_all_theta(f, budget.localization_opt);
    switch (v.localization->verdict) {
      case LocalVerdict::invertible_everywhere:
        certify("localization", "invertible in every twisted algebra");
        break;
      case LocalVerdict::noninvertible_at_theta:
        witness("localization", "abelianization vanishes at a sign point");
        break;
      default:
        note("localization", std::to_string(v.localization->failed_arcs.size()) + " arcs uncertified");
    }
  }

  if (budget.character && open()) {
    v.character = character_witness(f, budget.character_grid);
    if (v.character)
      witness("witnesses", "character zero, residual " + std::to_string(v.character->residual));
    else
      note("witnesses", "no character zero found");
  }

  if (budget.rep && open()) {
    v.rep = rep_witness(f, budget.rep_opt);
    if (v.rep)
      witness("witnesses", std::to_string(v.rep->p) + "-dimensional representation with |det| " +
                               std::to_string(v.rep->det_residual));
    else
      note("witnesses", "no singular representation found");
  }

  if (budget.cocycle && open()) {
    try {
      v.cocycle = cocycle_analysis(f, budget.cocycle_theta_grid, budget.cocycle_opt);
      if (v.cocycle->verdict == CocycleVerdict::nonexpansive_exact)
        witness("cocycle", "atomic orbit sum vanishes, confirmed exactly");
      else if (v.cocycle->verdict == CocycleVerdict::numerical_evidence)
        note("cocycle", "numerical evidence only");
      else
        note("cocycle", "no hit");
    } catch (const NotLinearError&) {
      note("cocycle", "not linear in x or y");
    }
  }

  if (v.has_certificate() && v.has_witness())
    throw InvariantViolation("invertibility certificate and noninvertibility witness for the same element");
  return v;
}

}  // namespace heisendyn
