#ifndef FOLSYM_CLI_HPP
#define FOLSYM_CLI_HPP

// Command dispatch for the folsym tool. Exit codes: 0 the computed property holds,
// 1 it fails (or the action is obstructed), 2 not applicable or bad input.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "folsym/foliation.hpp"
#include "folsym/infalgd.hpp"
#include "folsym/obstruction.hpp"
#include "folsym/problem.hpp"
#include "folsym/symaction.hpp"

namespace folsym {

struct RunOptions {
  std::optional<std::string> point;
  std::optional<std::size_t> depth;
  GroebnerOptions groebner{};
};

struct Report {
  std::string command;
  nlohmann::json input;
  std::vector<std::string> steps;
  nlohmann::json result = nlohmann::json::object();
  std::string summary;
  int exit_code = 2;

  nlohmann::json to_json() const {
    return {{"command", command}, {"input", input}, {"steps", steps}, {"result", result}, {"summary", summary},
            {"exit_code", exit_code}};
  }
  std::string text() const {
    std::ostringstream os;
    os << "folsym " << command << "\n";
    for (const auto& s : steps) os << "  " << s << "\n";
    os << summary << "\n";
    return os.str();
  }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"check-foliation", "check-action", "eta",     "chi",
                                          "isotropy",        "resolve",      "brackets", "obstruction"};
  return c;
}

namespace detail {

inline nlohmann::json poly_list(const ModuleElement& w, const std::vector<std::string>& ring) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < w.rank(); ++i) a.push_back(to_string(w[i], ring));
  return a;
}

inline nlohmann::json scalar_list(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : v) a.push_back(to_string(s));
  return a;
}

inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(scalar_list(row));
  }
  return rows;
}

inline std::string witness_text(const ModuleElement& w, const std::vector<std::string>& ring) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) s += (i ? ", " : "") + to_string(w[i], ring);
  return s + ")";
}

inline std::string pair_key(const std::vector<std::string>& names, std::size_t a, std::size_t b) {
  return names[a] + "," + names[b];
}

inline std::vector<std::string> generator_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("X" + std::to_string(i + 1));
  return out;
}

inline Vector select_point(const ProblemFile& p, const RunOptions& o, std::string& name) {
  if (o.point) {
    name = *o.point;
  } else if (p.options.contains("point") && p.options["point"].is_string()) {
    name = p.options["point"].get<std::string>();
  } else if (!p.points.empty()) {
    name = p.points.front().first;
  } else {
    throw ProblemError("no point given: add \"points\" to the problem file or pass --point");
  }
  auto v = p.point(name);
  if (!v) throw ProblemError("unknown point " + name);
  return *v;
}

inline WeakAction make_action(const ProblemFile& p, const FoliationPresentation& f) {
  if (!p.action) throw ProblemError("this command needs \"lie_algebra\" and \"action\"");
  return WeakAction(p.algebra, *p.action, f);
}

inline std::string point_text(const std::string& name, const Vector& v) { return name + " = " + to_string(v); }

}  // namespace detail

inline Report run(const std::string& command, const ProblemFile& p, const RunOptions& opts = {}) {
  using namespace detail;
  Report rep;
  rep.command = command;
  rep.input = emit_problem_json(p);
  const auto& ring = p.ring;
  try {
    bool known = false;
    for (const auto& c : commands()) known = known || c == command;
    if (!known) throw ProblemError("unknown command " + command);

    FoliationPresentation f = p.foliation(opts.groebner);
    const auto names = generator_names(f.size());
    rep.steps.push_back("foliation: " + std::to_string(f.size()) + " generators in " + std::to_string(f.nvars()) +
                        " variables");

    if (command == "check-foliation") {
      const auto& inv = f.involutivity();
      rep.result["involutive"] = inv.involutive();
      if (!inv.involutive()) {
        auto [l, b] = *inv.counterexample;
        rep.result["counterexample"] = {l, b};
        rep.summary = "not involutive: [" + names[l] + ", " + names[b] + "] is not in the module";
        rep.exit_code = 1;
        return rep;
      }
      nlohmann::json sf = nlohmann::json::object();
      for (std::size_t l = 0; l < f.size(); ++l)
        for (std::size_t b = l + 1; b < f.size(); ++b) {
          const auto& c = (*inv.structure_functions)[l][b];
          sf[pair_key(names, l, b)] = poly_list(c, ring);
          rep.steps.push_back("[" + names[l] + ", " + names[b] + "] = " + witness_text(c, ring));
        }
      rep.result["structure_functions"] = sf;
      rep.summary = "involutive; structure functions reconstruct every generator bracket";
      rep.exit_code = 0;
      return rep;
    }

    if (command == "resolve") {
      std::size_t depth = opts.depth.value_or(p.options.value("depth", std::size_t{3}));
      TruncatedResolution res = resolve_foliation(f, depth);
      rep.result["ranks"] = res.ranks;
      rep.result["length"] = res.length();
      rep.result["complete"] = res.complete;
      nlohmann::json diffs = nlohmann::json::array();
      for (std::size_t i = 1; i < res.differentials.size(); ++i) {
        nlohmann::json cols = nlohmann::json::array();
        for (const auto& c : res.differentials[i]) cols.push_back(poly_list(c, ring));
        diffs.push_back(cols);
        rep.steps.push_back("d(" + std::to_string(i + 1) + "): " + std::to_string(res.differentials[i].size()) +
                            " columns of rank " + std::to_string(res.ranks[i]));
      }
      rep.result["differentials"] = diffs;
      if (opts.point || !p.points.empty()) {
        std::string pname;
        Vector m = select_point(p, opts, pname);
        auto mr = minimality_at_point(res, m);
        rep.result["point"] = pname;
        rep.result["minimal"] = mr.minimal;
        rep.result["minimal_per_level"] = mr.per_level;
        rep.steps.push_back(std::string("minimal at ") + point_text(pname, m) + ": " + (mr.minimal ? "yes" : "no"));
      }
      rep.summary = "resolution length " + std::to_string(res.length()) +
                    (res.complete ? " (complete)" : " (truncated at depth " + std::to_string(depth) + ")");
      rep.exit_code = 0;
      return rep;
    }

    if (command == "isotropy") {
      std::string pname;
      Vector m = select_point(p, opts, pname);
      if (!f.involutivity().involutive()) {
        rep.summary = "generators are not involutive; no isotropy Lie algebra";
        rep.exit_code = 1;
        return rep;
      }
      IsotropyData iso = isotropy_lie_algebra(f, m);
      rep.result["point"] = pname;
      rep.result["dim"] = iso.dim();
      rep.result["abelian"] = iso.is_abelian();
      rep.result["fiber_relations"] = iso.relations.size();
      nlohmann::json basis = nlohmann::json::array();
      for (const auto& b : iso.kernel_basis()) basis.push_back(scalar_list(b));
      rep.result["basis"] = basis;
      nlohmann::json br = nlohmann::json::object();
      for (std::size_t a = 0; a < iso.dim(); ++a)
        for (std::size_t b = a + 1; b < iso.dim(); ++b) {
          Vector v = iso.algebra.bracket(a, b);
          if (!is_zero(v)) br[std::to_string(a) + "," + std::to_string(b)] = scalar_list(v);
        }
      rep.result["brackets"] = br;
      rep.steps.push_back("ker rho_m has dimension " + std::to_string(iso.dim() + iso.relations.size()) + ", " +
                          std::to_string(iso.relations.size()) + " relations from syzygies");
      rep.summary = "isotropy at " + point_text(pname, m) + ": dim " + std::to_string(iso.dim()) + ", " +
                    (iso.is_abelian() ? "abelian" : "non-abelian");
      rep.exit_code = 0;
      return rep;
    }

    WeakAction a = make_action(p, f);
    if (command == "obstruction") {
      std::string pname;
      Vector m = select_point(p, opts, pname);
      ObstructionOptions oo;
      oo.ideal = p.ideal;
      ObstructionReport o = obstruction_verdict(a, m, oo);
      rep.result["point"] = pname;
      rep.result["verdict"] = to_string(o.verdict);
      nlohmann::json log = nlohmann::json::array();
      for (const auto& h : o.hypothesis_log) {
        log.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
        rep.steps.push_back(h.name + ": " + (h.holds ? "yes" : "no") + (h.detail.empty() ? "" : " (" + h.detail + ")"));
      }
      rep.result["hypotheses"] = log;
      if (o.verdict == Verdict::NotApplicable) {
        rep.result["reason"] = o.reason;
        rep.summary = "NOT_APPLICABLE: " + o.reason;
        rep.exit_code = 2;
        return rep;
      }
      const auto& nu = *o.nu;
      nlohmann::json nuj = nlohmann::json::array(), nuz = nlohmann::json::array();
      for (std::size_t i = 0; i < nu.on_isotropy.size(); ++i) {
        nuj.push_back(matrix_json(nu.on_isotropy[i]));
        nuz.push_back(matrix_json(nu.on_center.action[i]));
      }
      rep.result["isotropy_dim"] = o.isotropy->dim();
      rep.result["center_dim"] = nu.center_basis.size();
      rep.result["nu"] = nuj;
      rep.result["nu_on_center"] = nuz;
      nlohmann::json eta = nlohmann::json::object();
      for (const auto& t : o.eta_at_m->tuples()) {
        Vector v = o.eta_at_m->value(t);
        if (!is_zero(v)) eta[p.basis[t[0]] + "," + p.basis[t[1]]] = scalar_list(v);
      }
      rep.result["eta_at_point"] = eta;
      rep.result["h2_dim"] = o.eta_class->h2_dim;
      rep.result["class_coordinates"] = scalar_list(*o.class_coordinates);
      rep.steps.push_back("H^2(g, Z(g_m)) has dimension " + std::to_string(o.eta_class->h2_dim));
      rep.steps.push_back("class of eta|m: " + to_string(*o.class_coordinates));
      if (o.verdict == Verdict::Obstructed) {
        rep.summary = "OBSTRUCTED at " + point_text(pname, m) +
                      ": eta|m is not a coboundary, so no equivalent strict action exists";
        rep.exit_code = 1;
      } else {
        rep.summary = "UNOBSTRUCTED_AT_POINT at " + point_text(pname, m) + ": eta|m is a coboundary";
        rep.exit_code = 0;
      }
      return rep;
    }

    ActionReport ar = validate_weak_action(a);
    rep.result["valid"] = ar.valid;
    if (!ar.valid) {
      rep.result["failure"] = ar.failure;
      rep.summary = "not a weak symmetry action: " + ar.failure;
      rep.exit_code = 1;
      return rep;
    }
    rep.result["strict"] = ar.strict;

    if (command == "check-action") {
      nlohmann::json defects = nlohmann::json::object();
      for (const auto& [ij, w] : ar.defects) defects[pair_key(p.basis, ij.first, ij.second)] = poly_list(*w, ring);
      rep.result["defect_witnesses"] = defects;
      rep.summary = std::string("valid weak symmetry action, ") + (ar.strict ? "strict" : "not strict");
      rep.exit_code = 0;
      return rep;
    }
    if (command == "eta") {
      EtaData eta = eta_witness(a);
      nlohmann::json e = nlohmann::json::object();
      for (const auto& [ij, w] : eta.values()) {
        e[pair_key(p.basis, ij.first, ij.second)] = poly_list(w, ring);
        rep.steps.push_back("eta(" + p.basis[ij.first] + ", " + p.basis[ij.second] + ") = " + witness_text(w, ring));
      }
      rep.result["eta"] = e;
      rep.summary = "eta reconstructs every defect through the anchor";
      rep.exit_code = 0;
      return rep;
    }
    if (command == "chi") {
      ChiData chi = chi_witness(a);
      nlohmann::json c = nlohmann::json::object();
      for (std::size_t i = 0; i < chi.values.size(); ++i)
        for (std::size_t l = 0; l < f.size(); ++l) {
          c[p.basis[i] + "," + names[l]] = poly_list(chi.at(i, l), ring);
          rep.steps.push_back("chi(" + p.basis[i] + ", " + names[l] + ") = " + witness_text(chi.at(i, l), ring));
        }
      rep.result["chi"] = c;
      rep.summary = "chi reconstructs every bracket [rho(x), X]";
      rep.exit_code = 0;
      return rep;
    }
    // brackets
    std::size_t depth = opts.depth.value_or(p.options.value("depth", std::size_t{2}));
    TruncatedResolution res = resolve_foliation(f, depth);
    BinaryBracketData b = extend_binary_bracket(a, res);
    std::vector<std::string> all = p.basis;
    all.insert(all.end(), names.begin(), names.end());
    nlohmann::json table = nlohmann::json::object();
    for (std::size_t u = 0; u < b.basis_size(); ++u)
      for (std::size_t v = u + 1; v < b.basis_size(); ++v) {
        Section s = b.bracket_basis(u, v);
        if (s.is_zero()) continue;
        nlohmann::json gpart = nlohmann::json::array();
        for (const auto& c : s.g_part) gpart.push_back(to_string(c, ring));
        table[all[u] + "," + all[v]] = {{"g", gpart}, {"E", poly_list(s.e_part, ring)}};
      }
    rep.result["l2"] = table;
    rep.result["anchor_morphism"] = true;
    rep.summary = "l'_2 on g[1] + E_-1 built; anchor is a bracket morphism on all basis pairs";
    rep.exit_code = 0;
    return rep;
  } catch (const ProblemError& e) {
    rep.summary = std::string("input error: ") + e.what();
  } catch (const DegreeCapExceeded& e) {
    rep.summary = std::string("degree cap exceeded: ") + e.what();
  } catch (const std::exception& e) {
    rep.summary = std::string("error: ") + e.what();
  }
  rep.exit_code = 2;
  return rep;
}

}  // namespace folsym

#endif  // FOLSYM_CLI_HPP
