#ifndef FOLSYM_GROEBNER_HPP
#define FOLSYM_GROEBNER_HPP

// Groebner bases of submodules of free modules O^r, O = Q[x_1..x_d].
//
// Monomial order on O is grevlex; on O^r it is position-over-term with the lowest
// component index largest. Every basis element carries a row of the transformation
// matrix expressing it in the input generators, so reductions yield membership
// witnesses against the original generators and Schreyer syzygies can be pulled back.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folsym/kernel.hpp"

namespace folsym {

class DegreeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of the free module O^rank.
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(std::size_t nvars, std::size_t rank) : nvars_(nvars), comps_(rank, Poly(nvars)) {}
  explicit ModuleElement(std::vector<Poly> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw DimensionError("module element needs at least one component");
    nvars_ = comps_.front().nvars();
    for (const auto& c : comps_)
      if (c.nvars() != nvars_) throw DimensionError("module element components from different rings");
  }
  ModuleElement(std::size_t nvars, std::vector<Poly> comps) : nvars_(nvars), comps_(std::move(comps)) {
    for (const auto& c : comps_)
      if (c.nvars() != nvars_) throw DimensionError("module element components from different rings");
  }

  /// The standard basis vector e_i of O^rank.
  static ModuleElement unit(std::size_t nvars, std::size_t rank, std::size_t i) {
    ModuleElement e(nvars, rank);
    e.comps_.at(i) = Poly::constant(nvars, 1);
    return e;
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return comps_.size(); }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }
  Poly& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
  }
  /// Index of the component holding the leading term; rank() for the zero element.
  std::size_t lead_position() const {
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!comps_[i].is_zero()) return i;
    return comps_.size();
  }
  const Term& leading_term() const { return comps_.at(lead_position()).leading_term(); }
  std::uint32_t max_degree() const {
    std::uint32_t d = 0;
    for (const auto& c : comps_) d = std::max(d, c.total_degree());
    return d;
  }
  std::size_t nonzero_components() const {
    return static_cast<std::size_t>(
        std::count_if(comps_.begin(), comps_.end(), [](const Poly& p) { return !p.is_zero(); }));
  }

  ModuleElement mul_term(const Monomial& m, const Scalar& c) const {
    ModuleElement r = *this;
    for (auto& p : r.comps_) p = p.mul_term(m, c);
    return r;
  }

  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) {
    check_shape(a, b);
    for (std::size_t i = 0; i < a.rank(); ++i) a.comps_[i] += b.comps_[i];
    return a;
  }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) {
    check_shape(a, b);
    for (std::size_t i = 0; i < a.rank(); ++i) a.comps_[i] -= b.comps_[i];
    return a;
  }
  ModuleElement operator-() const {
    ModuleElement r = *this;
    for (auto& p : r.comps_) p = -p;
    return r;
  }
  ModuleElement& operator+=(const ModuleElement& b) { return *this = *this + b; }
  ModuleElement& operator-=(const ModuleElement& b) { return *this = *this - b; }
  friend ModuleElement operator*(const Poly& f, ModuleElement a) {
    for (auto& p : a.comps_) p = f * p;
    return a;
  }
  friend ModuleElement operator*(const Scalar& c, ModuleElement a) {
    for (auto& p : a.comps_) p = c * p;
    return a;
  }

  bool operator==(const ModuleElement& o) const { return nvars_ == o.nvars_ && comps_ == o.comps_; }

 private:
  static void check_shape(const ModuleElement& a, const ModuleElement& b) {
    if (a.rank() != b.rank() || a.nvars_ != b.nvars_) throw DimensionError("module element shape mismatch");
  }

  std::size_t nvars_ = 0;
  std::vector<Poly> comps_;
};

/// Coefficients (one per generator) certifying a membership: sum_k w[k] * gens[k] == f.
using Witness = ModuleElement;

/// sum_k coeffs[k] * gens[k]; `rank` and `nvars` fix the shape when the family is empty.
inline ModuleElement combine(const ModuleElement& coeffs, const std::vector<ModuleElement>& gens, std::size_t nvars,
                             std::size_t rank) {
  if (coeffs.rank() != gens.size() && !(gens.empty() && coeffs.rank() == 0))
    throw DimensionError("combine: coefficient count does not match generator count");
  ModuleElement out(nvars, rank);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!coeffs[k].is_zero()) out += coeffs[k] * gens[k];
  return out;
}

inline std::size_t env_degree_cap() {
  if (const char* env = std::getenv("FOLSYM_DEGREE_CAP")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 24;
}

struct GroebnerOptions {
  std::size_t degree_cap = env_degree_cap();
};

class GroebnerBasis {
 public:
  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleElement>& inputs() const { return inputs_; }
  const std::vector<ModuleElement>& elements() const { return elements_; }
  /// Row k expresses elements()[k] in inputs().
  const std::vector<ModuleElement>& transformation() const { return transformation_; }
  const GroebnerOptions& options() const { return options_; }

 private:
  friend GroebnerBasis groebner_basis(const std::vector<ModuleElement>&, std::size_t, std::size_t,
                                      const GroebnerOptions&);
  std::size_t nvars_ = 0, rank_ = 0;
  std::vector<ModuleElement> inputs_;
  std::vector<ModuleElement> elements_;
  std::vector<ModuleElement> transformation_;
  GroebnerOptions options_;
};

struct Reduction {
  /// Quotients against the Groebner basis elements.
  ModuleElement quotients;
  /// The same decomposition re-expressed against the original generators.
  Witness witness;
  ModuleElement remainder;
};

namespace detail {

/// Full reduction of f by `basis`; divides by the lowest-index usable element first.
inline std::pair<ModuleElement, ModuleElement> divide(const ModuleElement& f, const std::vector<ModuleElement>& basis,
                                                      std::size_t skip = static_cast<std::size_t>(-1)) {
  const std::size_t nv = f.nvars();
  ModuleElement quot(nv, basis.size());
  ModuleElement rem(nv, f.rank());
  ModuleElement g = f;
  std::vector<std::size_t> lead_pos(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) lead_pos[k] = basis[k].lead_position();
  while (!g.is_zero()) {
    const std::size_t p = g.lead_position();
    const Term lt = g[p].leading_term();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || lead_pos[k] != p) continue;
      const Term& blt = basis[k][p].leading_term();
      if (!blt.mono.divides(lt.mono)) continue;
      Monomial m = lt.mono / blt.mono;
      Scalar c = lt.coeff / blt.coeff;
      g -= basis[k].mul_term(m, c);
      quot[k] += Poly::monomial(m, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem[p] += Poly::monomial(lt.mono, lt.coeff);
      g[p] = g[p].tail();
    }
  }
  return {std::move(quot), std::move(rem)};
}

inline void check_cap(const ModuleElement& e, const GroebnerOptions& opts) {
  if (e.max_degree() > opts.degree_cap)
    throw DegreeCapExceeded("Groebner computation exceeded degree cap " + std::to_string(opts.degree_cap) +
                            " (set FOLSYM_DEGREE_CAP to raise it)");
}

inline void check_uniform(const std::vector<ModuleElement>& gens, std::size_t nvars, std::size_t rank) {
  for (const auto& g : gens)
    if (g.rank() != rank || g.nvars() != nvars) throw DimensionError("generators must share rank and ring");
}

}  // namespace detail

/// Buchberger's algorithm with the product criterion (single-component elements only;
/// it does not hold for general module elements) and the chain criterion.
/// The result is a reduced basis; inputs are kept for witness pull-back.
inline GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, std::size_t nvars, std::size_t rank,
                                    const GroebnerOptions& opts = {}) {
  detail::check_uniform(gens, nvars, rank);
  GroebnerBasis gb;
  gb.nvars_ = nvars;
  gb.rank_ = rank;
  gb.inputs_ = gens;
  gb.options_ = opts;
  const std::size_t n = gens.size();

  std::vector<ModuleElement> basis, trans;
  auto make_monic = [](ModuleElement& g, ModuleElement& t) {
    Scalar inv = 1 / g.leading_term().coeff;
    g = inv * g;
    t = inv * t;
  };
  for (std::size_t l = 0; l < n; ++l) {
    if (gens[l].is_zero()) continue;
    detail::check_cap(gens[l], opts);
    ModuleElement g = gens[l], t = ModuleElement::unit(nvars, n, l);
    make_monic(g, t);
    basis.push_back(std::move(g));
    trans.push_back(std::move(t));
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  // pending[i][j] (i < j) is true while the pair is still queued
  std::vector<std::vector<bool>> pending;
  auto grow_pending = [&]() {
    for (auto& row : pending) row.resize(basis.size(), false);
    pending.resize(basis.size(), std::vector<bool>(basis.size(), false));
  };
  auto add_pairs_for = [&](std::size_t j) {
    grow_pending();
    for (std::size_t i = 0; i < j; ++i) {
      if (basis[i].lead_position() != basis[j].lead_position()) continue;
      pairs.push_back({i, j, lcm(basis[i].leading_term().mono, basis[j].leading_term().mono)});
      pending[i][j] = true;
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

  auto is_pending = [&](std::size_t a, std::size_t b) { return a < b ? pending[a][b] : pending[b][a]; };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      auto c = grevlex(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = *best;
    pairs.erase(best);
    pending[pr.i][pr.j] = false;

    const auto& gi = basis[pr.i];
    const auto& gj = basis[pr.j];
    const Term& ti = gi.leading_term();
    const Term& tj = gj.leading_term();
    if (gi.nonzero_components() == 1 && gj.nonzero_components() == 1 && coprime(ti.mono, tj.mono)) continue;
    bool chain = false;
    const std::size_t pos = gi.lead_position();
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || basis[k].lead_position() != pos) continue;
      if (!basis[k].leading_term().mono.divides(pr.lcm)) continue;
      if (!is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;

    Monomial mi = pr.lcm / ti.mono, mj = pr.lcm / tj.mono;
    Scalar ci = 1 / ti.coeff, cj = 1 / tj.coeff;
    ModuleElement s = gi.mul_term(mi, ci) - gj.mul_term(mj, cj);
    ModuleElement st = trans[pr.i].mul_term(mi, ci) - trans[pr.j].mul_term(mj, cj);
    auto [q, r] = detail::divide(s, basis);
    if (r.is_zero()) continue;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!q[k].is_zero()) st -= q[k] * trans[k];
    detail::check_cap(r, opts);
    make_monic(r, st);
    basis.push_back(std::move(r));
    trans.push_back(std::move(st));
    add_pairs_for(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading term is divisible by another's.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto pi = basis[i].lead_position();
    const auto& mi = basis[i].leading_term().mono;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == i || !keep[k] || basis[k].lead_position() != pi) continue;
      const auto& mk = basis[k].leading_term().mono;
      if (mk.divides(mi) && (mk != mi || k < i)) {
        keep[i] = false;
        break;
      }
    }
  }
  std::vector<ModuleElement> mb, mt;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) {
      mb.push_back(basis[i]);
      mt.push_back(trans[i]);
    }
  // Interreduce tails; leading terms are untouched because the basis is minimal.
  for (std::size_t i = 0; i < mb.size(); ++i) {
    auto [q, r] = detail::divide(mb[i], mb, i);
    // r keeps mb[i]'s leading term, and q carries the rest of the decomposition
    ModuleElement t = mt[i];
    for (std::size_t k = 0; k < mb.size(); ++k)
      if (!q[k].is_zero()) t -= q[k] * mt[k];
    mb[i] = std::move(r);
    mt[i] = std::move(t);
  }
  gb.elements_ = std::move(mb);
  gb.transformation_ = std::move(mt);
  return gb;
}

inline GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, const GroebnerOptions& opts = {}) {
  if (gens.empty()) throw DimensionError("groebner_basis: cannot infer ring from an empty generator list");
  return groebner_basis(gens, gens.front().nvars(), gens.front().rank(), opts);
}

/// Division of f by gb: f == sum quotients*elements + remainder == sum witness*inputs + remainder,
/// and no term of the remainder is divisible by a leading term of gb.
inline Reduction reduce_with_witness(const ModuleElement& f, const GroebnerBasis& gb) {
  if (f.rank() != gb.rank() || f.nvars() != gb.nvars()) throw DimensionError("reduce_with_witness: rank mismatch");
  auto [q, r] = detail::divide(f, gb.elements());
  Witness w = combine(q, gb.transformation(), gb.nvars(), gb.inputs().size());
  return {std::move(q), std::move(w), std::move(r)};
}

/// Throws InvariantViolation unless sum w[k] gens[k] == f.
inline void verify_witness(const ModuleElement& f, const std::vector<ModuleElement>& gens, const Witness& w,
                           const char* what = "membership witness") {
  if (combine(w, gens, f.nvars(), f.rank()) != f)
    throw InvariantViolation(std::string(what) + " does not reconstruct its target");
}

inline std::optional<Witness> submodule_membership(const ModuleElement& f, const GroebnerBasis& gb) {
  auto red = reduce_with_witness(f, gb);
  if (!red.remainder.is_zero()) return std::nullopt;
  verify_witness(f, gb.inputs(), red.witness);
  return std::move(red.witness);
}

inline std::optional<Witness> submodule_membership(const ModuleElement& f, const std::vector<ModuleElement>& gens,
                                                   const GroebnerOptions& opts = {}) {
  if (gens.empty()) {
    if (f.is_zero()) return ModuleElement(f.nvars(), 0);
    return std::nullopt;
  }
  return submodule_membership(f, groebner_basis(gens, f.nvars(), f.rank(), opts));
}

namespace detail {

/// Scale so the leading coefficient is 1.
inline ModuleElement monic(const ModuleElement& e) {
  if (e.is_zero()) return e;
  return (1 / e.leading_term().coeff) * e;
}

/// POT comparison of leading terms, smaller degree first; used to order syzygy candidates.
inline bool candidate_less(const ModuleElement& a, const ModuleElement& b) {
  if (a.max_degree() != b.max_degree()) return a.max_degree() < b.max_degree();
  auto pa = a.lead_position(), pb = b.lead_position();
  if (pa != pb) return pa > pb;
  return grevlex(a.leading_term().mono, b.leading_term().mono) < 0;
}

}  // namespace detail

/// Generators of {g : sum g[k] gens[k] == 0}, by Schreyer's construction on the
/// Groebner basis pulled back through the transformation matrix, then pruned of
/// zero, duplicate and redundant vectors.
inline std::vector<ModuleElement> syzygy_basis(const std::vector<ModuleElement>& gens, std::size_t nvars,
                                               std::size_t rank, const GroebnerOptions& opts = {}) {
  const std::size_t n = gens.size();
  if (n == 0) return {};
  GroebnerBasis gb = groebner_basis(gens, nvars, rank, opts);
  const auto& el = gb.elements();
  const auto& tr = gb.transformation();

  std::vector<ModuleElement> candidates;
  // Pairwise S-syzygies of the basis; every pair with a common leading position
  // contributes, including pairs the criteria skipped during completion.
  for (std::size_t j = 0; j < el.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (el[i].lead_position() != el[j].lead_position()) continue;
      const Term& ti = el[i].leading_term();
      const Term& tj = el[j].leading_term();
      Monomial l = lcm(ti.mono, tj.mono);
      Monomial mi = l / ti.mono, mj = l / tj.mono;
      Scalar ci = 1 / ti.coeff, cj = 1 / tj.coeff;
      ModuleElement s = el[i].mul_term(mi, ci) - el[j].mul_term(mj, cj);
      auto [q, r] = detail::divide(s, el);
      if (!r.is_zero()) throw InvariantViolation("S-polynomial of a Groebner basis did not reduce to zero");
      ModuleElement sigma = -q;
      sigma[i] += Poly::monomial(mi, ci);
      sigma[j] -= Poly::monomial(mj, cj);
      candidates.push_back(combine(sigma, tr, nvars, n));
    }
  // Each input minus its expression through the basis.
  for (std::size_t l = 0; l < n; ++l) {
    auto [q, r] = detail::divide(gens[l], el);
    if (!r.is_zero()) throw InvariantViolation("input generator not reduced to zero by its own Groebner basis");
    candidates.push_back(ModuleElement::unit(nvars, n, l) - combine(q, tr, nvars, n));
  }

  std::vector<ModuleElement> cleaned;
  for (auto& c : candidates) {
    if (c.is_zero()) continue;
    auto m = detail::monic(c);
    if (std::find(cleaned.begin(), cleaned.end(), m) == cleaned.end()) cleaned.push_back(std::move(m));
  }
  std::stable_sort(cleaned.begin(), cleaned.end(), detail::candidate_less);

  std::vector<ModuleElement> kept;
  for (auto& c : cleaned) {
    if (!kept.empty() && submodule_membership(c, groebner_basis(kept, nvars, n, opts))) continue;
    kept.push_back(std::move(c));
  }
  for (const auto& s : kept)
    if (!combine(s, gens, nvars, rank).is_zero()) throw InvariantViolation("computed syzygy is not a relation");
  return kept;
}

inline std::vector<ModuleElement> syzygy_basis(const std::vector<ModuleElement>& gens,
                                               const GroebnerOptions& opts = {}) {
  if (gens.empty()) return {};
  return syzygy_basis(gens, gens.front().nvars(), gens.front().rank(), opts);
}

}  // namespace folsym

#endif  // FOLSYM_GROEBNER_HPP
