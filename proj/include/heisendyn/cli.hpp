#pragma once

// heisendyn command line: expansive | qbin | homoclinic | cover | entropy |
// inverse | conjecture.  Exit 0 on a completed analysis (inconclusive
// included), 1 on usage or input errors, 2 on an internal invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heisendyn/cocycle.hpp"
#include "heisendyn/cover.hpp"
#include "heisendyn/error.hpp"
#include "heisendyn/expansiveness.hpp"
#include "heisendyn/homoclinic.hpp"
#include "heisendyn/parallel.hpp"
#include "heisendyn/parse.hpp"
#include "heisendyn/qbinomial.hpp"
#include "heisendyn/report.hpp"

namespace heisendyn::cli {

struct RunConfig {
  std::string poly;
  int grid = 512;
  int N = 64;
  int K = -1;
  int neumann_N = 24;
  int inverse_N = 40;
  int p_max = 8;
  int window = 16;
  int cover_window = 2;
  std::vector<std::int64_t> M_list{2, 4, 6, 8};
  int trials = 1;
  std::uint64_t seed = 1;
  int table = 64;
  int n = 0, k = 0;
  int nodes = 256;
  int threads = 0;
  bool exhaustive = false;
  bool lopsided_search = false;
  std::vector<std::string> skip;
  std::string out, csv;
};

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

inline ZElement kernel_element() { return parse_poly("2 - x^-1 - y^-1"); }

inline report::json expansive(const RunConfig& c) {
  const ZElement f = parse_poly(c.poly);
  Budget b;
  b.exhaustive = c.exhaustive;
  b.neumann_N = c.neumann_N;
  b.localization_opt.grid_size = c.grid;
  b.rep_opt.p_max = c.p_max;
  for (const auto& s : c.skip) {
    if (s == "lopsided") b.lopsided = false;
    else if (s == "neumann") b.neumann = false;
    else if (s == "localization") b.localization = false;
    else if (s == "character") b.character = false;
    else if (s == "rep") b.rep = false;
    else if (s == "cocycle") b.cocycle = false;
    else throw CLI::ValidationError("--skip", "unknown stage " + s);
  }
  return report::verdict(c.poly, f, decide(f, b));
}

inline report::json qbin(const RunConfig& c, std::string& csv) {
  const NormSeries ns = norm_series(c.table);
  std::ostringstream s;
  s << "n,S,T,T_approx\n";
  for (int n = 0; n <= ns.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    s << n << ',' << ns.S[i].get_str() << ',' << report::rational(ns.T[i]) << ','
      << report::detail::format_double(ns.T[i].get_d()) << '\n';
  }
  csv = s.str();
  return report::norm_table(ns);
}

inline report::json homoclinic(const RunConfig& c, std::string& csv) {
  const ZElement f = kernel_element();
  const LevelledKernel w = build_kernel(c.N);
  const Box window = Box::heisenberg_ball(c.window);
  const auto x = homoclinic_point(w, window.right_dilate(f));
  const auto d = membership_defect(x, f, window);
  report::json j = report::header("homoclinic");
  j["f"] = format_poly(f);
  j["N"] = c.N;
  j["window"] = c.window;
  j["kernel_norm"] = report::rational(w.total_norm);
  j["kernel_norm_approx"] = w.total_norm.get_d();
  j["support"] = w.numerators.support_size();
  j["boundary_mass"] = report::rational(w.boundary_mass);
  j["tail_estimate"] = w.tail_estimate.get_d();
  j["defect"] = report::rational(d.max_defect);
  j["argmax"] = report::element(d.argmax);
  j["defect_le_boundary_mass"] = d.max_defect <= w.boundary_mass;
  const auto prof = decay_profile(w);
  std::ostringstream s;
  s << "r,sigma\n";
  for (std::size_t r = 0; r < prof.size(); ++r) s << r << ',' << report::detail::format_double(prof[r].get_d()) << '\n';
  csv = s.str();
  return j;
}

inline report::json cover(const RunConfig& c, std::string& csv) {
  if (c.M_list.empty()) throw CLI::ValidationError("--M-list", "empty");
  const std::int64_t Mmax = c.M_list.back();
  const LevelledKernel w = build_kernel(c.N);
  const Box window = Box::heisenberg_ball(c.cover_window);
  report::json trials = report::json::array();
  std::ostringstream s;
  s << "trial,M,topplings,outside_max,d,b\n";
  for (int t = 0; t < c.trials; ++t) {
    const Sandpile v = random_sandpile(Mmax, c.seed + static_cast<std::uint64_t>(t));
    const auto pts = cover_experiment(v, c.M_list, window, w);
    for (const auto& p : pts)
      s << t << ',' << p.M << ',' << p.topplings << ',' << p.outside_max << ','
        << report::detail::format_double(p.d.get_d()) << ',' << report::detail::format_double(p.b.get_d()) << '\n';
    trials.push_back({{"seed", c.seed + static_cast<std::uint64_t>(t)}, {"points", report::cover_points(pts)}});
  }
  csv = s.str();
  report::json j = report::header("cover");
  j["f"] = "2 - x^-1 - y^-1";
  j["N"] = c.N;
  j["window"] = c.cover_window;
  j["trials"] = trials;
  j["shift_entropy"] = shift_entropy_count(1);
  return j;
}

inline report::json entropy(const RunConfig& c) {
  const ZElement f = parse_poly(c.poly);
  return report::entropy(c.poly, entropy_bound(decompose_linear(f), c.nodes));
}

inline report::json inverse(const RunConfig& c) {
  const ZElement f = parse_poly(c.poly);
  const int N = c.inverse_N;
  const SeriesInverse inv = neumann_inverse(f, N, c.K);
  report::json j = report::header("inverse");
  j["input"] = c.poly;
  j["N"] = N;
  j["K"] = c.K < 0 ? 2 * N + 16 : c.K;
  j["seed"] = inv.seed;
  j["residual"] = report::rational(inv.residual);
  j["residual_approx"] = inv.residual.get_d();
  j["certifies"] = inv.residual < 1;
  j["identity_coefficient"] = report::rational(inv.coeff(GroupElement::identity()));
  j["support"] = inv.numerators.support_size();
  if (c.lopsided_search) {
    const auto h = lopsided_ideal_search(f, N);
    if (h)
      j["lopsided_multiple"] = {{"dominant", report::element(h->dominant)},
                                {"margin_bits", mpz_sizeinbase(h->margin.get_mpz_t(), 2)},
                                {"q_bits", mpz_sizeinbase(h->q.get_mpz_t(), 2)},
                                {"support", h->hf.support_size()}};
    else
      j["lopsided_multiple"] = nullptr;
  }
  return j;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Expansiveness and homoclinic analysis for the discrete Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--threads", c.threads, "worker threads (default: HEISENDYN_THREADS or logical cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "write the JSON report here instead of stdout");
  app.add_option("--csv", c.csv, "write the CSV series here");

  auto* exp = app.add_subcommand("expansive", "decide expansiveness of alpha_f");
  exp->add_option("poly", c.poly, "polynomial, e.g. 3+x+y+z")->required();
  exp->add_option("--grid", c.grid, "localization grid")->check(CLI::PositiveNumber);
  exp->add_option("--N", c.neumann_N, "Neumann truncation")->check(CLI::PositiveNumber);
  exp->add_option("--p-max", c.p_max, "largest representation dimension")->check(CLI::PositiveNumber);
  exp->add_flag("--exhaustive", c.exhaustive, "run every stage");
  exp->add_option("--skip", c.skip, "stages to skip: lopsided neumann localization character rep cocycle");

  auto* qb = app.add_subcommand("qbin", "exact S(n), T(n) table");
  qb->add_option("--table", c.table, "largest n")->check(CLI::PositiveNumber);

  auto* hom = app.add_subcommand("homoclinic", "kernel and membership defect for 2 - x^-1 - y^-1");
  hom->add_option("--N", c.N, "kernel levels")->check(CLI::PositiveNumber);
  hom->add_option("--window", c.window, "window radius")->check(CLI::PositiveNumber);

  auto* cov = app.add_subcommand("cover", "toppling and coding map experiment");
  cov->add_option("--M-list", c.M_list, "increasing box sizes")->delimiter(',')->check(CLI::PositiveNumber);
  cov->add_option("--trials", c.trials, "random configurations")->check(CLI::PositiveNumber);
  cov->add_option("--seed", c.seed, "first seed");
  cov->add_option("--N", c.N, "kernel levels")->check(CLI::PositiveNumber);
  cov->add_option("--window", c.cover_window, "window radius")->check(CLI::PositiveNumber);

  auto* ent = app.add_subcommand("entropy", "entropy of alpha_f for f linear in x or y");
  ent->add_option("poly", c.poly, "polynomial")->required();
  ent->add_option("--nodes", c.nodes, "outer quadrature nodes")->check(CLI::PositiveNumber);

  auto* inv = app.add_subcommand("inverse", "truncated series inverse with exact residual");
  inv->add_option("poly", c.poly, "polynomial")->required();
  inv->add_option("--N", c.inverse_N, "series order")->check(CLI::NonNegativeNumber);
  inv->add_option("--K", c.K, "central truncation (default 2N+16)");
  inv->add_flag("--lopsided", c.lopsided_search, "also search for a lopsided multiple");

  auto* con = app.add_subcommand("conjecture", "divisibility search for [n k](1-q)^3");
  con->add_option("n", c.n, "n")->required()->check(CLI::PositiveNumber);
  con->add_option("k", c.k, "k")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (c.threads > 0) set_threads(static_cast<unsigned>(c.threads));
    report::json j;
    std::string csv;
    if (exp->parsed()) j = detail::expansive(c);
    else if (qb->parsed()) j = detail::qbin(c, csv);
    else if (hom->parsed()) j = detail::homoclinic(c, csv);
    else if (cov->parsed()) j = detail::cover(c, csv);
    else if (ent->parsed()) j = detail::entropy(c);
    else if (inv->parsed()) j = detail::inverse(c);
    else j = report::conjecture(conjecture_search(c.n, c.k));

    const std::string text = report::dump(j);
    if (c.out.empty()) out << text;
    else detail::write_file(c.out, text);
    if (!c.csv.empty()) detail::write_file(c.csv, csv);
    return 0;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"heisendyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace heisendyn::cli
