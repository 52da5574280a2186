#ifndef FOLSYM_PROBLEM_HPP
#define FOLSYM_PROBLEM_HPP

// JSON problem files:
//
// {
//   "ring": ["x", "y"],
//   "foliation": {"generators": [{"d/dx": "y^2 - x^4"}, {"d/dy": "y^2 - x^4"}]},
//     or       {"ideal_times_vector_fields": ["x^2", "x*y", "y^2"]},
//   "lie_algebra": {"basis": ["e1", "e2"], "brackets": {"e1,e2": {"e1": "1/2"}}},
//   "action": {"e1": {"d/dx": "...", "d/dy": "..."}, "e2": {...}},
//   "points": {"origin": ["0", "0"]},
//   "options": {"point": "origin", "depth": 3}
// }
//
// Only "ring" and "foliation" are required. Vector-field components that are omitted are zero.
// Rationals are strings. Bracket entries may be given for either ordering of a pair.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "folsym/foliation.hpp"
#include "folsym/liealg.hpp"
#include "folsym/parse.hpp"
#include "folsym/vect.hpp"

namespace folsym {

class ProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemFile {
  std::vector<std::string> ring;
  std::vector<VectorField> generators;
  /// Set when the foliation was given as I * X(K^d); generators are then derived from it.
  std::optional<std::vector<Poly>> ideal;
  std::vector<std::string> basis;
  LieAlgebraData algebra;
  std::optional<std::vector<VectorField>> action;
  std::vector<std::pair<std::string, Vector>> points;
  nlohmann::json options = nlohmann::json::object();

  std::size_t nvars() const { return ring.size(); }
  FoliationPresentation foliation(GroebnerOptions opts = {}) const {
    return FoliationPresentation(nvars(), generators, opts);
  }
  std::optional<Vector> point(const std::string& name) const {
    for (const auto& [n, p] : points)
      if (n == name) return p;
    return std::nullopt;
  }
  bool operator==(const ProblemFile& o) const {
    return ring == o.ring && generators == o.generators && ideal == o.ideal && basis == o.basis &&
           algebra.dim() == o.algebra.dim() && same_constants(o) && action == o.action && points == o.points &&
           options == o.options;
  }

 private:
  bool same_constants(const ProblemFile& o) const {
    for (std::size_t i = 0; i < algebra.dim(); ++i)
      for (std::size_t j = 0; j < algebra.dim(); ++j)
        if (algebra.bracket(i, j) != o.algebra.bracket(i, j)) return false;
    return true;
  }
};

namespace detail {

inline std::string component_key(const std::string& var) { return "d/d" + var; }

inline Poly parse_field_poly(const nlohmann::json& j, const std::vector<std::string>& ring, const std::string& where) {
  if (!j.is_string()) throw ProblemError(where + ": expected a polynomial string");
  try {
    return parse_poly(j.get<std::string>(), ring);
  } catch (const ParseError& e) {
    throw ProblemError(where + ": " + e.what());
  }
}

inline VectorField parse_vector_field(const nlohmann::json& j, const std::vector<std::string>& ring,
                                      const std::string& where) {
  if (!j.is_object()) throw ProblemError(where + ": a vector field is an object keyed by \"d/d<var>\"");
  VectorField v(ring.size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t idx = ring.size();
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (it.key() == component_key(ring[i])) idx = i;
    if (idx == ring.size()) throw ProblemError(where + ": unknown component " + it.key());
    v[idx] = parse_field_poly(it.value(), ring, where + "." + it.key());
  }
  return v;
}

inline Scalar parse_rational(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw ProblemError(where + ": rationals must be strings or integers");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ProblemError(where + ": " + e.what());
  }
}

inline std::size_t index_of(const std::vector<std::string>& names, const std::string& n, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  throw ProblemError(where + ": unknown basis element " + n);
}

inline nlohmann::json emit_vector_field(const VectorField& v, const std::vector<std::string>& ring) {
  nlohmann::json o = nlohmann::json::object();
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (!v[i].is_zero()) o[component_key(ring[i])] = to_string(v[i], ring);
  return o;
}

}  // namespace detail

inline ProblemFile parse_problem_json(const nlohmann::json& j) {
  using detail::parse_vector_field;
  ProblemFile p;
  if (!j.is_object()) throw ProblemError("problem: top level must be an object");
  if (!j.contains("ring") || !j["ring"].is_array() || j["ring"].empty())
    throw ProblemError("ring: expected a non-empty list of variable names");
  for (const auto& v : j["ring"]) {
    if (!v.is_string()) throw ProblemError("ring: variable names must be strings");
    std::string name = v.get<std::string>();
    try {
      parse_poly(name, {name});
    } catch (const ParseError&) {
      throw ProblemError("ring: invalid variable name " + name);
    }
    for (const auto& r : p.ring)
      if (r == name) throw ProblemError("ring: duplicate variable " + name);
    p.ring.push_back(name);
  }
  const std::size_t d = p.ring.size();

  if (!j.contains("foliation") || !j["foliation"].is_object()) throw ProblemError("foliation: missing");
  const auto& fol = j["foliation"];
  const bool has_gens = fol.contains("generators"), has_ideal = fol.contains("ideal_times_vector_fields");
  if (has_gens == has_ideal)
    throw ProblemError("foliation: give exactly one of \"generators\" or \"ideal_times_vector_fields\"");
  if (has_gens) {
    if (!fol["generators"].is_array()) throw ProblemError("foliation.generators: expected a list");
    std::size_t k = 0;
    for (const auto& g : fol["generators"])
      p.generators.push_back(parse_vector_field(g, p.ring, "foliation.generators[" + std::to_string(k++) + "]"));
  } else {
    if (!fol["ideal_times_vector_fields"].is_array())
      throw ProblemError("foliation.ideal_times_vector_fields: expected a list");
    std::vector<Poly> ideal;
    std::size_t k = 0;
    for (const auto& f : fol["ideal_times_vector_fields"])
      ideal.push_back(detail::parse_field_poly(f, p.ring, "foliation.ideal_times_vector_fields[" +
                                                              std::to_string(k++) + "]"));
    for (const auto& f : ideal)
      for (std::size_t i = 0; i < d; ++i) p.generators.push_back(f * VectorField::coordinate(d, i));
    p.ideal = std::move(ideal);
  }

  if (j.contains("lie_algebra")) {
    const auto& la = j["lie_algebra"];
    if (!la.contains("basis") || !la["basis"].is_array()) throw ProblemError("lie_algebra.basis: expected a list");
    for (const auto& b : la["basis"]) {
      if (!b.is_string()) throw ProblemError("lie_algebra.basis: names must be strings");
      for (const auto& e : p.basis)
        if (e == b.get<std::string>()) throw ProblemError("lie_algebra.basis: duplicate " + e);
      p.basis.push_back(b.get<std::string>());
    }
    const std::size_t n = p.basis.size();
    p.algebra = LieAlgebraData(n);
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    if (la.contains("brackets")) {
      if (!la["brackets"].is_object()) throw ProblemError("lie_algebra.brackets: expected an object");
      for (auto it = la["brackets"].begin(); it != la["brackets"].end(); ++it) {
        const std::string where = "lie_algebra.brackets[\"" + it.key() + "\"]";
        auto comma = it.key().find(',');
        if (comma == std::string::npos) throw ProblemError(where + ": key must be \"a,b\"");
        std::size_t a = detail::index_of(p.basis, it.key().substr(0, comma), where);
        std::size_t b = detail::index_of(p.basis, it.key().substr(comma + 1), where);
        if (!it.value().is_object()) throw ProblemError(where + ": expected an object of coefficients");
        Vector v = zero_vector(n);
        for (auto c = it.value().begin(); c != it.value().end(); ++c)
          v[detail::index_of(p.basis, c.key(), where)] = detail::parse_rational(c.value(), where + "." + c.key());
        if (a == b) {
          if (!is_zero(v)) throw ProblemError(where + ": bracket table is not antisymmetric");
          continue;
        }
        if (seen[b][a]) {
          if (p.algebra.bracket(b, a) != zero_vector(n) - v) throw ProblemError(where + ": bracket table is not antisymmetric");
        } else if (seen[a][b]) {
          throw ProblemError(where + ": duplicate bracket entry");
        } else {
          p.algebra.set_bracket(a, b, v);
        }
        seen[a][b] = true;
      }
    }
  }

  if (j.contains("action")) {
    const auto& act = j["action"];
    if (!act.is_object()) throw ProblemError("action: expected an object keyed by basis names");
    std::vector<std::optional<VectorField>> fields(p.basis.size());
    for (auto it = act.begin(); it != act.end(); ++it) {
      std::size_t i = detail::index_of(p.basis, it.key(), "action");
      fields[i] = parse_vector_field(it.value(), p.ring, "action." + it.key());
    }
    std::vector<VectorField> out;
    for (std::size_t i = 0; i < fields.size(); ++i) out.push_back(fields[i] ? *fields[i] : VectorField(d));
    p.action = std::move(out);
  }

  if (j.contains("points")) {
    if (!j["points"].is_object()) throw ProblemError("points: expected an object of named coordinate lists");
    for (auto it = j["points"].begin(); it != j["points"].end(); ++it) {
      const std::string where = "points." + it.key();
      if (!it.value().is_array() || it.value().size() != d)
        throw ProblemError(where + ": expected " + std::to_string(d) + " coordinates");
      Vector v;
      for (const auto& c : it.value()) v.push_back(detail::parse_rational(c, where));
      p.points.emplace_back(it.key(), std::move(v));
    }
  }

  if (j.contains("options")) {
    if (!j["options"].is_object()) throw ProblemError("options: expected an object");
    p.options = j["options"];
  }
  return p;
}

inline ProblemFile parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProblemError(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem_json(j);
}

inline nlohmann::json emit_problem_json(const ProblemFile& p) {
  nlohmann::json j;
  j["ring"] = p.ring;
  if (p.ideal) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& f : *p.ideal) list.push_back(to_string(f, p.ring));
    j["foliation"]["ideal_times_vector_fields"] = list;
  } else {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& g : p.generators) list.push_back(detail::emit_vector_field(g, p.ring));
    j["foliation"]["generators"] = list;
  }
  if (!p.basis.empty()) {
    j["lie_algebra"]["basis"] = p.basis;
    nlohmann::json br = nlohmann::json::object();
    for (std::size_t a = 0; a < p.basis.size(); ++a)
      for (std::size_t b = a + 1; b < p.basis.size(); ++b) {
        Vector v = p.algebra.bracket(a, b);
        if (is_zero(v)) continue;
        nlohmann::json coeffs = nlohmann::json::object();
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != 0) coeffs[p.basis[k]] = to_string(v[k]);
        br[p.basis[a] + "," + p.basis[b]] = coeffs;
      }
    j["lie_algebra"]["brackets"] = br;
  }
  if (p.action) {
    nlohmann::json act = nlohmann::json::object();
    for (std::size_t i = 0; i < p.action->size(); ++i)
      act[p.basis.at(i)] = detail::emit_vector_field((*p.action)[i], p.ring);
    j["action"] = act;
  }
  if (!p.points.empty()) {
    nlohmann::json pts = nlohmann::json::object();
    for (const auto& [name, v] : p.points) {
      nlohmann::json c = nlohmann::json::array();
      for (const auto& s : v) c.push_back(to_string(s));
      pts[name] = c;
    }
    j["points"] = pts;
  }
  if (!p.options.empty()) j["options"] = p.options;
  return j;
}

inline std::string emit_problem(const ProblemFile& p) { return emit_problem_json(p).dump(2); }

}  // namespace folsym

#endif  // FOLSYM_PROBLEM_HPP
