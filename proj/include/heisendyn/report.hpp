#pragma once

// JSON rendering of analysis results.  Floats are written with %.17g,
// exact rationals as "num/den" strings.

#include <cmath>
#include <cstdio>
#include <string>

#include <gmpxx.h>

#include "json.hpp"

#include "heisendyn/cocycle.hpp"
#include "heisendyn/cover.hpp"
#include "heisendyn/expansiveness.hpp"
#include "heisendyn/group.hpp"
#include "heisendyn/parse.hpp"
#include "heisendyn/qbinomial.hpp"

namespace heisendyn::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

inline std::string rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline json element(const GroupElement& g) { return json::array({g.a, g.b, g.c}); }

inline json complex(const cplx& z) { return json::array({z.real(), z.imag()}); }

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (j.empty() || flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string dump(const json& j) {
  std::string out;
  detail::write(j, out, 2, 0);
  out += "\n";
  return out;
}

inline json header(const std::string& command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

inline json evidence(const Evidence& e) {
  return json{{"module", e.module}, {"kind", e.kind}, {"sound", e.sound}, {"summary", e.summary}};
}

inline json verdict(const std::string& input, const ZElement& f, const Verdict& v) {
  json j = header("expansive");
  j["input"] = input;
  j["normalized"] = format_poly(f);
  j["status"] = to_string(v.status);
  json ev = json::array();
  for (const auto& e : v.evidence) ev.push_back(evidence(e));
  j["evidence"] = ev;
  if (v.lopsided) j["lopsided"] = {{"dominant", element(v.lopsided->dominant)}, {"margin", v.lopsided->margin.get_str()}};
  if (v.neumann_residual) j["neumann"] = {{"seed", v.neumann_seed}, {"residual", rational(*v.neumann_residual)},
                                          {"residual_approx", v.neumann_residual->get_d()}};
  if (v.localization) {
    const auto& c = *v.localization;
    json l{{"verdict", to_string(c.verdict)}, {"grid_size", c.grid_size}, {"step", c.step},
           {"lipschitz", c.lipschitz}, {"arcs", c.per_theta.size()}, {"failed_arcs", c.failed_arcs.size()}};
    if (c.noninvertible_phi) l["noninvertible_phi"] = *c.noninvertible_phi;
    j["localization"] = l;
  }
  if (v.character)
    j["character"] = {{"zeta_x", complex(v.character->zeta_x)}, {"zeta_y", complex(v.character->zeta_y)},
                      {"residual", v.character->residual}};
  if (v.rep)
    j["representation"] = {{"p", v.rep->p},
                           {"theta", complex(v.rep->theta)},
                           {"zeta1", complex(v.rep->zeta1)},
                           {"zeta2", complex(v.rep->zeta2)},
                           {"det_residual", v.rep->det_residual},
                           {"sigma_min", v.rep->sigma_min}};
  if (v.cocycle) {
    json hits = json::array();
    for (const auto& h : v.cocycle->hits)
      hits.push_back({{"p", h.p}, {"r", h.r}, {"xi_phi", h.xi_phi}, {"value", h.value}, {"exact", h.exact},
                      {"xi_order", h.xi_order}, {"xi_index", h.xi_index}});
    j["cocycle"] = {{"verdict", to_string(v.cocycle->verdict)},
                    {"precondition", v.cocycle->precondition},
                    {"crossings", v.cocycle->crossings.size()},
                    {"hits", hits}};
  }
  return j;
}

inline json norm_table(const NormSeries& ns) {
  json j = header("qbin");
  j["N"] = ns.N;
  json rows = json::array();
  for (int n = 0; n <= ns.N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    rows.push_back({{"n", n}, {"S", ns.S[i].get_str()}, {"T", rational(ns.T[i])}, {"T_approx", ns.T[i].get_d()}});
  }
  j["rows"] = rows;
  json blocks = json::array();
  for (std::size_t b = 0; b < ns.blocks.size(); ++b)
    blocks.push_back({{"lo", 1L << b}, {"hi", 1L << (b + 1)}, {"sum", rational(ns.blocks[b])},
                      {"approx", ns.blocks[b].get_d()}});
  j["blocks"] = blocks;
  return j;
}

inline json conjecture(const ConjectureResult& r) {
  json j = header("conjecture");
  j["n"] = r.n;
  j["k"] = r.k;
  j["found"] = r.m.has_value();
  if (r.m) {
    j["m"] = *r.m;
    j["quotient"] = r.quotient->to_string("q");
  }
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back({{"m", f.m}, {"reason", f.reason}});
  j["failures"] = fails;
  j["status"] = "evidence only";
  return j;
}

inline json cover_points(const std::vector<CoverPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts)
    a.push_back({{"M", p.M}, {"topplings", p.topplings}, {"outside_max", p.outside_max},
                 {"terminated", p.terminated}, {"d", rational(p.d)}, {"b", rational(p.b)},
                 {"b_approx", p.b.get_d()}, {"d_le_b", p.d <= p.b}});
  return a;
}

inline json entropy(const std::string& input, const EntropyResult& e) {
  json j = header("entropy");
  j["input"] = input;
  j["value"] = e.value;
  j["error_estimate"] = e.error_estimate;
  j["cross_check"] = e.cross_check;
  j["nodes"] = e.nodes;
  return j;
}

}  // namespace heisendyn::report
