// Acceptance checks, one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "heisendyn/heisendyn.hpp"

using namespace heisendyn;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt >= limit_s) {
    o.ok = false;
    o.detail += " [over time limit " + std::to_string(limit_s) + " s]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-34s %8.2fs  %s\n", o.ok ? "PASS" : "FAIL", id, name, dt, o.detail.c_str());
  std::fflush(stdout);
}

ZElement family(int a, int b, int c) {
  ZElement f(mpz_class(std::abs(a) + std::abs(b) + std::abs(c)));
  f.add(GroupElement::x(), a);
  f.add(GroupElement::y(), b);
  f.add(GroupElement::z(), c);
  return f;
}

const std::vector<std::pair<const char*, Status>> kSuite{
    {"3 + x + y + z", Status::expansive},     {"3 + x + y - z", Status::nonexpansive},
    {"3 + x*y + y*x + z", Status::expansive}, {"4 + x + y + x^-1 + z", Status::expansive},
    {"3 + x^2 + y + z^2", Status::expansive}, {"3 + x^2 + y^2 - z^4", Status::nonexpansive},
    {"2 + x + y + z", Status::nonexpansive},
};

// Extra inputs for the consistency sweep.
const std::vector<const char*> kExtra{"4 + x + y + z", "2 - x^-1 - y^-1", "3 - 3z", "2 - x - y", "5 + 4x + 3y",
                                      "1 + x", "x*y - y*x", "2 + x + y - z"};

int contradictions = 0;
int sweep_runs = 0;

// decide() throws on a conflict; count it instead.
Verdict checked_decide(const ZElement& f, const Budget& b) {
  ++sweep_runs;
  try {
    Verdict v = decide(f, b);
    if (v.has_certificate() && v.has_witness()) ++contradictions;
    return v;
  } catch (const InvariantViolation&) {
    ++contradictions;
    return {};
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "central series l1 norms", 1.0, [] {
    Outcome o;
    for (int k = 1; k <= 10; ++k) {
      const int K = 40;
      mpq_class s(0);
      for (const auto& t : v_series(k, K)) s += abs(t);
      mpq_class expect(1, pow2(static_cast<unsigned long>(k)));
      expect.canonicalize();
      if (s + v_tail(k, K) != expect) {
        o.ok = false;
        o.detail += "k=" + std::to_string(k) + " ";
      }
    }
    if (o.ok) o.detail = "exact 2^-k for k = 1..10";
    return o;
  });

  criterion(2, "norms of (x+y)^2", 1.0, [] {
    const ZElement s = ring_pow(parse_poly("x + y"), 2);
    const mpz_class n = l1_norm(s).get_num();
    const double t = project(s, cplx(-1.0, 0.0)).norm();
    return Outcome{n == 4 && t == 2.0, "l1 " + n.get_str() + ", twisted at -1 " + fmt(t)};
  });

  criterion(3, "verdict suite", 60.0, [] {
    Outcome o;
    for (const auto& [s, expect] : kSuite) {
      const Verdict v = decide(parse_poly(s));
      if (v.status != expect) {
        o.ok = false;
        o.detail += std::string(s) + " -> " + to_string(v.status) + "; ";
      }
    }
    RepSearchOptions opt;
    opt.p_min = opt.p_max = 4;
    const auto w = rep_witness(parse_poly("3 + x^2 + y^2 - z^4"), opt);
    if (!w || w->p != 4 || !(w->det_residual < 1e-8)) {
      o.ok = false;
      o.detail += "no 4-dim rep witness; ";
    }
    const auto d = decompose_linear(parse_poly("2 + x + y + z"));
    const bool exact = exact_orbit_check(d, 2, 1, 12, 1);
    const double atomic = atomic_orbit_test(d, 2, cplx(-1.0, 0.0), std::polar(1.0, std::numbers::pi / 6));
    if (!exact || std::abs(atomic) > 1e-12) {
      o.ok = false;
      o.detail += "no exact cocycle hit; ";
    }
    if (o.ok) o.detail = "7 verdicts, |det| " + fmt(w->det_residual) + ", exact orbit hit at p=2 s=12";
    return o;
  });

  // The exhaustive sweep of the family serves criteria 4 and 10.
  criterion(4, "signed-coefficient law", 300.0, [&] {
    Budget b;
    b.exhaustive = true;
    Outcome o;
    int checked = 0;
    for (int a = -3; a <= 3; ++a)
      for (int bb = -3; bb <= 3; ++bb)
        for (int c = -3; c <= 3; ++c) {
          const Verdict v = checked_decide(family(a, bb, c), b);
          if (a != 0 && bb != 0 && c != 0 && std::abs(a) + std::abs(bb) > 2) {
            ++checked;
            const Status want = c > 0 ? Status::expansive : Status::nonexpansive;
            if (v.status != want) {
              o.ok = false;
              o.detail += "(" + std::to_string(a) + "," + std::to_string(bb) + "," + std::to_string(c) + ") -> " +
                          to_string(v.status) + "; ";
            }
          }
        }
    if (o.ok) o.detail = std::to_string(checked) + " triples follow the sign of c";
    return o;
  });

  criterion(5, "q-binomial identities and quotients", 120.0, [] {
    Outcome o;
    auto fail = [&](const std::string& m) {
      o.ok = false;
      if (o.detail.size() < 200) o.detail += m + "; ";
    };
    mpz_class binom;
    for (int n = 0; n <= 40; ++n) {
      const auto row = qbinom_row(n);
      const auto prev = n >= 1 ? qbinom_row(n - 1) : row;
      for (int k = 0; k <= n; ++k) {
        const ZLaurent p(0, row[static_cast<std::size_t>(k)]);
        const auto& c = p.dense();
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        if (p.at_one() != binom) fail("value at 1, n=" + std::to_string(n));
        for (std::size_t j = 0; j < c.size(); ++j)
          if (c[j] != c[c.size() - 1 - j]) fail("symmetry");
        for (std::size_t j = 1; j <= c.size() / 2; ++j)
          if (c[j - 1] > c[j]) fail("unimodality");
        if (n >= 1 && k >= 1 && k < n) {
          const ZLaurent a(0, prev[static_cast<std::size_t>(k - 1)]), b(0, prev[static_cast<std::size_t>(k)]);
          if (p != a + b.shifted(k) || p != a.shifted(n - k) + b) fail("Pascal");
        }
      }
    }
    // q-Vandermonde with m + n <= 40.
    for (int m = 0; m <= 20; ++m)
      for (int n = 0; n <= 20; n += 5)
        for (int k = 0; k <= m + n; ++k) {
          ZLaurent s;
          for (int j = std::max(0, k - m); j <= std::min(k, n); ++j)
            s += (qbinom(m, k - j).poly * qbinom(n, j).poly).shifted(j * (m - k + j));
          if (s != qbinom(m + n, k).poly) fail("Vandermonde");
        }
    int valid = 0;
    for (int n = 2; n <= 60; ++n)
      for (int k = 1; 2 * k <= n; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        for (int p = 1; p <= n; ++p) {
          ZLaurent a;
          try {
            a = a_quotient(n, k, p);
          } catch (const NotPolynomialError&) {
            continue;
          }
          ++valid;
          if (a.l1_norm() * p != binom) fail("norm (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(p) + ")");
        }
      }
    if (o.ok) o.detail = "identities for n <= 40; " + std::to_string(valid) + " polynomial quotients with ||A|| p = C(n,k)";
    return o;
  });

  criterion(6, "T(n) dyadic blocks", 600.0, [] {
    const NormSeries ns = norm_series(256);
    Outcome o;
    // blocks[j] covers (2^j, 2^(j+1)]; (16,32] is j = 4.
    for (std::size_t j = 5; j < ns.blocks.size(); ++j)
      if (!(ns.blocks[j] < ns.blocks[j - 1])) {
        o.ok = false;
        o.detail += "block " + std::to_string(j) + " ";
      }
    if (ns.blocks.size() < 8) o = {false, "only " + std::to_string(ns.blocks.size()) + " blocks"};
    if (o.ok) {
      o.detail = "blocks from (16,32]:";
      for (std::size_t j = 4; j < ns.blocks.size(); ++j) o.detail += " " + fmt(ns.blocks[j].get_d());
    }
    return o;
  });

  const LevelledKernel w64 = build_kernel(64);
  criterion(7, "homoclinic membership defect", 300.0, [&] {
    const auto x = homoclinic_point(w64, Box::heisenberg_ball(17));
    const auto d = membership_defect(x, parse_poly("2 - x^-1 - y^-1"), Box::heisenberg_ball(16));
    return Outcome{d.max_defect <= w64.boundary_mass,
                   "defect " + d.max_defect.get_str() + " <= boundary mass " + fmt(w64.boundary_mass.get_d())};
  });

  criterion(8, "entropy of 2 - x - y", 30.0, [] {
    const auto e = entropy_bound(decompose_linear(parse_poly("2 - x - y")), 256);
    const double l2 = std::numbers::ln2;
    return Outcome{std::abs(e.value - l2) < 1e-6 && std::abs(e.cross_check - l2) < 1e-6,
                   "jensen " + fmt(e.value) + ", quadrature " + fmt(e.cross_check)};
  });

  criterion(9, "symbolic cover experiment", 600.0, [&] {
    Outcome o;
    const Box window = Box::heisenberg_ball(2);
    const Box A = BoxRegion(6).box();
    int ok_trials = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Sandpile v = random_sandpile(6, seed);
      const auto t = topple_stabilize(v, 6);
      bool stable = t.terminated;
      A.for_each([&](const GroupElement& g) {
        const auto s = t.stabilized.get(g);
        stable = stable && (s == 0 || s == 1);
      });
      const auto p = cover_experiment(v, {6}, window, w64).front();
      if (stable && p.d <= p.b) ++ok_trials;
    }
    const mpq_class b2 = cover_bound(w64, 2, window), b4 = cover_bound(w64, 4, window), b8 = cover_bound(w64, 8, window);
    o.ok = ok_trials == 100 && b8 < b4 && b4 < b2;
    o.detail = std::to_string(ok_trials) + "/100 trials, b(2) " + fmt(b2.get_d()) + " b(4) " + fmt(b4.get_d()) +
               " b(8) " + fmt(b8.get_d());
    return o;
  });

  criterion(10, "no certificate-witness conflicts", 600.0, [] {
    Budget b;
    b.exhaustive = true;
    for (const auto& [s, expect] : kSuite) checked_decide(parse_poly(s), b);
    for (const char* s : kExtra) checked_decide(parse_poly(s), b);
    return Outcome{contradictions == 0,
                   std::to_string(sweep_runs) + " exhaustive verdicts, " + std::to_string(contradictions) + " conflicts"};
  });

  return failures;
}
