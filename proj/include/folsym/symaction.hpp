#ifndef FOLSYM_SYMACTION_HPP
#define FOLSYM_SYMACTION_HPP

// Weak symmetry actions of a Lie algebra on a singular foliation.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folsym/foliation.hpp"
#include "folsym/liealg.hpp"
#include "folsym/vect.hpp"

namespace folsym {

struct ActionReport;
class WeakAction;
ActionReport validate_weak_action(WeakAction& a);

/// A linear map rho: g -> X(K^d) given on a basis of g.
class WeakAction {
 public:
  WeakAction(LieAlgebraData g, std::vector<VectorField> fields, FoliationPresentation f)
      : g_(std::move(g)), fields_(std::move(fields)), f_(std::move(f)) {
    if (fields_.size() != g_.dim()) throw DimensionError("action needs one vector field per Lie algebra basis element");
    for (const auto& x : fields_)
      if (x.dim() != f_.nvars()) throw DimensionError("action field has wrong dimension");
  }

  const LieAlgebraData& algebra() const { return g_; }
  const std::vector<VectorField>& fields() const { return fields_; }
  const FoliationPresentation& foliation() const { return f_; }
  std::size_t nvars() const { return f_.nvars(); }
  bool validated() const { return validated_; }

  /// rho(sum x_i e_i).
  VectorField image(const Vector& x) const {
    VectorField out(nvars());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) out += x[i] * fields_[i];
    return out;
  }
  /// rho([e_i, e_j]) - [rho(e_i), rho(e_j)].
  VectorField defect(std::size_t i, std::size_t j) const {
    return image(g_.bracket(i, j)) - bracket(fields_[i], fields_[j]);
  }

 private:
  friend ActionReport validate_weak_action(WeakAction& a);
  LieAlgebraData g_;
  std::vector<VectorField> fields_;
  FoliationPresentation f_;
  bool validated_ = false;
};

struct ActionReport {
  bool valid = false;
  bool strict = false;
  std::string failure;
  std::vector<SymmetryReport> symmetry;
  /// Membership witness for each defect, keyed by (i, j) with i < j.
  std::map<std::pair<std::size_t, std::size_t>, std::optional<Witness>> defects;
};

inline bool strictness_check(const WeakAction& a) {
  for (std::size_t i = 0; i < a.algebra().dim(); ++i)
    for (std::size_t j = i + 1; j < a.algebra().dim(); ++j)
      if (!a.defect(i, j).is_zero()) return false;
  return true;
}

/// Checks [rho(x), F] in F for each basis x and rho([x,y]) - [rho(x), rho(y)] in F for each pair.
/// Sets the action's validated flag on success.
inline ActionReport validate_weak_action(WeakAction& a) {
  ActionReport rep;
  const auto& g = a.algebra();
  if (!jacobi_check(g)) {
    rep.failure = "Lie algebra structure constants violate antisymmetry or the Jacobi identity";
    return rep;
  }
  rep.valid = true;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    rep.symmetry.push_back(symmetry_check(a.foliation(), a.fields()[i]));
    if (rep.valid && !rep.symmetry.back().is_symmetry) {
      rep.valid = false;
      rep.failure = "rho(e" + std::to_string(i) + ") is not a symmetry: bracket with generator " +
                    std::to_string(*rep.symmetry.back().first_failure) + " leaves the foliation";
    }
  }
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      auto w = member_witness(a.foliation(), a.defect(i, j));
      if (!w && rep.valid) {
        rep.valid = false;
        rep.failure = "defect of pair (e" + std::to_string(i) + ", e" + std::to_string(j) + ") is not in the foliation";
      }
      rep.defects[{i, j}] = std::move(w);
    }
  rep.strict = rep.valid && strictness_check(a);
  if (rep.valid) a.validated_ = true;
  return rep;
}

/// eta(e_i, e_j) in E_{-1} = O^n with rho(eta(e_i, e_j)) = rho([e_i,e_j]) - [rho(e_i), rho(e_j)].
class EtaData {
 public:
  EtaData() = default;
  EtaData(std::size_t g_dim, std::size_t nvars, std::size_t n_gens) : g_dim_(g_dim), nvars_(nvars), n_gens_(n_gens) {}

  std::size_t g_dim() const { return g_dim_; }
  std::size_t n_generators() const { return n_gens_; }
  void set(std::size_t i, std::size_t j, Witness w) { values_[{i, j}] = std::move(w); }
  /// Alternating extension to all index pairs.
  Witness at(std::size_t i, std::size_t j) const {
    if (i == j) return ModuleElement(nvars_, n_gens_);
    if (i < j) return values_.at({i, j});
    return -values_.at({j, i});
  }
  const std::map<std::pair<std::size_t, std::size_t>, Witness>& values() const { return values_; }

 private:
  std::size_t g_dim_ = 0, nvars_ = 0, n_gens_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Witness> values_;
};

/// chi(e_i, e_l) in O^n with rho(chi(e_i, e_l)) = [rho(e_i), X_l].
struct ChiData {
  std::vector<std::vector<Witness>> values;  // [i][l]
  const Witness& at(std::size_t i, std::size_t l) const { return values.at(i).at(l); }
};

class ActionNotValidated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline EtaData eta_witness(const WeakAction& a) {
  if (!a.validated()) throw ActionNotValidated("eta_witness requires a validated weak action");
  const auto& f = a.foliation();
  EtaData eta(a.algebra().dim(), f.nvars(), f.size());
  for (std::size_t i = 0; i < a.algebra().dim(); ++i)
    for (std::size_t j = i + 1; j < a.algebra().dim(); ++j) {
      VectorField def = a.defect(i, j);
      auto w = member_witness(f, def);
      if (!w) throw InvariantViolation("defect left the foliation after validation");
      if (!(f.anchor(*w) == def)) throw InvariantViolation("eta witness does not reconstruct the defect");
      eta.set(i, j, std::move(*w));
    }
  return eta;
}

inline ChiData chi_witness(const WeakAction& a) {
  if (!a.validated()) throw ActionNotValidated("chi_witness requires a validated weak action");
  const auto& f = a.foliation();
  ChiData chi;
  for (std::size_t i = 0; i < a.algebra().dim(); ++i) {
    std::vector<Witness> row;
    for (std::size_t l = 0; l < f.size(); ++l) {
      VectorField br = bracket(a.fields()[i], f.generator(l));
      auto w = member_witness(f, br);
      if (!w) throw InvariantViolation("[rho(x), X] left the foliation after validation");
      if (!(f.anchor(*w) == br)) throw InvariantViolation("chi witness does not reconstruct the bracket");
      row.push_back(std::move(*w));
    }
    chi.values.push_back(std::move(row));
  }
  return chi;
}

struct TransformedAction {
  WeakAction action;
  ActionReport report;
  EtaData eta;
};

/// rho'(x) = rho(x) + rho_F(beta(x)) with beta given per basis element as a section of E_{-1};
/// the new defect witnesses are solved afresh.
inline TransformedAction transform_by_beta(const WeakAction& a, const std::vector<Witness>& beta) {
  if (!a.validated()) throw ActionNotValidated("transform_by_beta requires a validated weak action");
  if (beta.size() != a.algebra().dim()) throw DimensionError("beta needs one section per basis element");
  std::vector<VectorField> fields;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i].rank() != a.foliation().size()) throw DimensionError("beta section has wrong rank");
    fields.push_back(a.fields()[i] + a.foliation().anchor(beta[i]));
  }
  WeakAction b(a.algebra(), std::move(fields), a.foliation());
  ActionReport rep = validate_weak_action(b);
  if (!rep.valid) throw InvariantViolation("equivalent action failed validation: " + rep.failure);
  EtaData eta = eta_witness(b);
  return {std::move(b), std::move(rep), std::move(eta)};
}

}  // namespace folsym

#endif  // FOLSYM_SYMACTION_HPP
