#ifndef FOLSYM_INFALGD_HPP
#define FOLSYM_INFALGD_HPP

// Truncated geometric resolutions of a foliation and the binary bracket l'_2 on
// g[1] (+) E_{-1} induced by a weak symmetry action.

#include <optional>
#include <string>
#include <vector>

#include "folsym/foliation.hpp"
#include "folsym/groebner.hpp"
#include "folsym/symaction.hpp"

namespace folsym {

/// ... -> O^{r_2} -> O^{r_1} -> X(K^d). differentials[0] holds d^(1) (the generators,
/// columns of rank d); differentials[i-1] holds the columns of d^(i), each of rank r_{i-1}.
struct TruncatedResolution {
  std::size_t nvars = 0;
  std::vector<std::size_t> ranks;  // r_0 = d, r_1 = #generators, ...
  std::vector<std::vector<ModuleElement>> differentials;
  /// True once a syzygy module came out zero, so the resolution is finite and fully known.
  bool complete = false;

  std::size_t depth() const { return differentials.size(); }
  /// Number of free modules E_{-1}..E_{-length}.
  std::size_t length() const {
    std::size_t len = 0;
    for (std::size_t i = 0; i < differentials.size(); ++i)
      if (!differentials[i].empty() || i == 0) len = i + 1;
    return len;
  }
  const std::vector<ModuleElement>& d(std::size_t i) const { return differentials.at(i - 1); }
  bool has_level(std::size_t i) const { return i >= 1 && i <= differentials.size() && !differentials[i - 1].empty(); }
};

inline TruncatedResolution resolve_foliation(const FoliationPresentation& f, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("resolve_foliation: depth must be at least 1");
  TruncatedResolution res;
  res.nvars = f.nvars();
  res.ranks = {f.nvars(), f.size()};
  res.differentials.push_back(f.generator_columns());
  if (f.size() == 0) {
    res.complete = true;
    return res;
  }
  for (std::size_t level = 2; level <= depth; ++level) {
    const auto& prev = res.differentials.back();
    std::vector<ModuleElement> next =
        level == 2 ? f.syzygies() : syzygy_basis(prev, f.nvars(), res.ranks[level - 2], f.options());
    if (next.empty()) {
      res.complete = true;
      break;
    }
    res.ranks.push_back(next.size());
    res.differentials.push_back(std::move(next));
  }
  // d^(i) o d^(i+1) == 0
  for (std::size_t i = 1; i < res.differentials.size(); ++i)
    for (const auto& col : res.differentials[i])
      if (!combine(col, res.differentials[i - 1], res.nvars, res.ranks[i - 1]).is_zero())
        throw InvariantViolation("resolution differentials do not compose to zero");
  return res;
}

struct MinimalityReport {
  bool minimal = true;
  /// per_level[i] refers to d^(i + 2).
  std::vector<bool> per_level;
};

/// Minimal at m iff every d^(i), i >= 2, vanishes at m (vacuous without syzygies).
inline MinimalityReport minimality_at_point(const TruncatedResolution& res, std::span<const Scalar> m) {
  MinimalityReport rep;
  for (std::size_t i = 1; i < res.differentials.size(); ++i) {
    bool zero = true;
    for (const auto& v : evaluate_columns(res.differentials[i], m)) zero = zero && is_zero(v);
    rep.per_level.push_back(zero);
    rep.minimal = rep.minimal && zero;
  }
  return rep;
}

/// Section of g[1] (+) E_{-1}: O-coefficients on the basis of g and on the generators e_l.
struct Section {
  std::vector<Poly> g_part;
  ModuleElement e_part;

  static Section zero(std::size_t nvars, std::size_t g_dim, std::size_t n) {
    return {std::vector<Poly>(g_dim, Poly(nvars)), ModuleElement(nvars, n)};
  }
  bool is_zero() const {
    for (const auto& p : g_part)
      if (!p.is_zero()) return false;
    return e_part.is_zero();
  }
  std::size_t size() const { return g_part.size() + e_part.rank(); }
  const Poly& coeff(std::size_t k) const { return k < g_part.size() ? g_part[k] : e_part[k - g_part.size()]; }
  Poly& coeff(std::size_t k) { return k < g_part.size() ? g_part[k] : e_part[k - g_part.size()]; }

  friend Section operator+(Section a, const Section& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a.coeff(k) += b.coeff(k);
    return a;
  }
  friend Section operator-(Section a, const Section& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a.coeff(k) -= b.coeff(k);
    return a;
  }
  friend Section operator*(const Poly& f, Section a) {
    for (std::size_t k = 0; k < a.size(); ++k) a.coeff(k) = f * a.coeff(k);
    return a;
  }
  bool operator==(const Section& o) const { return g_part == o.g_part && e_part == o.e_part; }
};

/// l'_2 on g[1] (+) E_{-1}, given on basis elements and extended by the Leibniz rule
/// with respect to the anchor rho'(x_i (+) e_l) = rho(x_i) + X_l:
///   l'_2(e_l, e_b) = sum_a c^a_lb e_a
///   l'_2(x_i, e_l) = chi(x_i, e_l)
///   l'_2(x_i, x_j) = [x_i, x_j]_g (+) (-eta(x_i, x_j))
/// The sign on eta makes rho' a bracket morphism under
/// rho(eta(x,y)) = rho([x,y]) - [rho(x), rho(y)].
struct BinaryBracketData {
  std::size_t nvars = 0;
  LieAlgebraData algebra;
  std::vector<VectorField> action_fields;
  std::vector<VectorField> generators;
  StructureFunctions structure;
  ChiData chi;
  EtaData eta;

  std::size_t g_dim() const { return algebra.dim(); }
  std::size_t rank() const { return generators.size(); }
  std::size_t basis_size() const { return g_dim() + rank(); }

  /// Basis element k: x_k for k < dim g, else e_{k - dim g}.
  Section basis(std::size_t k) const {
    Section s = Section::zero(nvars, g_dim(), rank());
    s.coeff(k) = Poly::constant(nvars, 1);
    return s;
  }
  Section from_e(const ModuleElement& e) const {
    Section s = Section::zero(nvars, g_dim(), rank());
    s.e_part = e;
    return s;
  }

  VectorField anchor_basis(std::size_t k) const { return k < g_dim() ? action_fields[k] : generators[k - g_dim()]; }
  VectorField anchor(const Section& s) const {
    VectorField out(nvars);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!s.coeff(k).is_zero()) out += s.coeff(k) * anchor_basis(k);
    return out;
  }

  Section bracket_basis(std::size_t p, std::size_t q) const {
    const std::size_t gd = g_dim();
    if (p == q) return Section::zero(nvars, gd, rank());
    if (p >= gd && q >= gd) return from_e(structure[p - gd][q - gd]);
    if (p < gd && q >= gd) return from_e(chi.at(p, q - gd));
    if (p >= gd && q < gd) return from_e(-chi.at(q, p - gd));
    Section s = from_e(-eta.at(p, q));
    Vector br = algebra.bracket(p, q);
    for (std::size_t k = 0; k < gd; ++k) s.g_part[k] = Poly::constant(nvars, br[k]);
    return s;
  }

  /// l'_2(u, v) = sum F_p G_q l'_2(b_p, b_q) + sum_q rho'(u)[G_q] b_q - sum_p rho'(v)[F_p] b_p.
  Section bracket(const Section& u, const Section& v) const {
    Section out = Section::zero(nvars, g_dim(), rank());
    for (std::size_t p = 0; p < u.size(); ++p) {
      if (u.coeff(p).is_zero()) continue;
      for (std::size_t q = 0; q < v.size(); ++q) {
        if (v.coeff(q).is_zero() || p == q) continue;
        out = out + (u.coeff(p) * v.coeff(q)) * bracket_basis(p, q);
      }
    }
    VectorField au = anchor(u), av = anchor(v);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out.coeff(k) += apply(au, v.coeff(k));
      out.coeff(k) -= apply(av, u.coeff(k));
    }
    return out;
  }

  /// Replaces c_lb by c_lb + s (and c_bl by c_bl - s); s must be a syzygy of the generators.
  void shift_structure(std::size_t l, std::size_t b, const ModuleElement& s) {
    structure.at(l).at(b) += s;
    structure.at(b).at(l) -= s;
  }
};

/// First basis pair (p, q) where rho'(l'_2(b_p, b_q)) != [rho'(b_p), rho'(b_q)], if any.
inline std::optional<std::pair<std::size_t, std::size_t>> anchor_morphism_violation(const BinaryBracketData& b) {
  for (std::size_t p = 0; p < b.basis_size(); ++p)
    for (std::size_t q = p + 1; q < b.basis_size(); ++q)
      if (!(b.anchor(b.bracket_basis(p, q)) == bracket(b.anchor_basis(p), b.anchor_basis(q))))
        return std::make_pair(p, q);
  return std::nullopt;
}

inline BinaryBracketData extend_binary_bracket(const WeakAction& a) {
  if (!a.validated()) throw ActionNotValidated("extend_binary_bracket requires a validated weak action");
  const auto& f = a.foliation();
  BinaryBracketData b;
  b.nvars = f.nvars();
  b.algebra = a.algebra();
  b.action_fields = a.fields();
  b.generators = f.generators();
  b.structure = f.structure_functions();
  b.chi = chi_witness(a);
  b.eta = eta_witness(a);
  if (auto bad = anchor_morphism_violation(b))
    throw InvariantViolation("anchor is not a bracket morphism on basis pair (" + std::to_string(bad->first) + ", " +
                             std::to_string(bad->second) + ")");
  return b;
}

inline BinaryBracketData extend_binary_bracket(const WeakAction& a, const TruncatedResolution& res) {
  if (res.ranks.size() < 2 || res.ranks[1] != a.foliation().size() || res.nvars != a.nvars())
    throw DimensionError("extend_binary_bracket: resolution does not belong to the action's foliation");
  return extend_binary_bracket(a);
}

struct JacobiatorLift {
  Section jacobiator;
  /// L with d^(2) L == jacobiator's E_{-1} part.
  std::optional<ModuleElement> lift;
  /// "zero", "lifted", or "needs deeper resolution".
  std::string status;
};

/// J = l'_2(l'_2(u,v),w) + cyclic; J lies in ker rho' so its E-part is lifted through d^(2).
inline JacobiatorLift jacobiator_lift(const BinaryBracketData& b, const TruncatedResolution& res, const Section& u,
                                     const Section& v, const Section& w) {
  JacobiatorLift out;
  out.jacobiator = b.bracket(b.bracket(u, v), w) + b.bracket(b.bracket(v, w), u) + b.bracket(b.bracket(w, u), v);
  const Section& j = out.jacobiator;
  if (!b.anchor(j).is_zero()) throw InvariantViolation("anchor of the Jacobiator does not vanish");
  for (const auto& p : j.g_part)
    if (!p.is_zero()) throw InvariantViolation("Jacobiator has a nonzero g-component");
  if (j.e_part.is_zero()) {
    out.lift = ModuleElement(b.nvars, res.has_level(2) ? res.ranks[2] : 0);
    out.status = "zero";
    return out;
  }
  if (!res.has_level(2)) {
    if (res.complete) throw InvariantViolation("nonzero Jacobiator in the kernel of an injective anchor");
    out.status = "needs deeper resolution";
    return out;
  }
  auto l = submodule_membership(j.e_part, res.d(2), GroebnerOptions{});
  if (!l) throw InvariantViolation("Jacobiator is in ker rho but not in the image of d^(2)");
  if (!(combine(*l, res.d(2), b.nvars, res.ranks[1]) == j.e_part))
    throw InvariantViolation("Jacobiator lift does not reconstruct");
  out.lift = std::move(*l);
  out.status = "lifted";
  return out;
}

inline JacobiatorLift jacobiator_lift(const BinaryBracketData& b, const TruncatedResolution& res, std::size_t p,
                                     std::size_t q, std::size_t r) {
  return jacobiator_lift(b, res, b.basis(p), b.basis(q), b.basis(r));
}

}  // namespace folsym

#endif  // FOLSYM_INFALGD_HPP
