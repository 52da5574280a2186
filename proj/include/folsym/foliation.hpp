#ifndef FOLSYM_FOLIATION_HPP
#define FOLSYM_FOLIATION_HPP

// Singular foliations generated by finitely many polynomial vector fields.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folsym/groebner.hpp"
#include "folsym/liealg.hpp"
#include "folsym/linalg.hpp"
#include "folsym/vect.hpp"

namespace folsym {

/// c[l][b] holds the coefficients of [X_l, X_b] in the generators: [X_l, X_b] = sum_a c[l][b][a] X_a.
using StructureFunctions = std::vector<std::vector<Witness>>;

struct InvolutivityResult {
  std::optional<StructureFunctions> structure_functions;
  /// First generator pair whose bracket is not in the foliation.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
  bool involutive() const { return structure_functions.has_value(); }
};

class FoliationPresentation;
InvolutivityResult involutivity_certificate(const FoliationPresentation& f);

/// Ordered generators X_1..X_n with a Groebner basis of the generated submodule of O^d.
/// Structure functions and syzygies are computed on first use, once, under a lock.
class FoliationPresentation {
 public:
  FoliationPresentation(std::size_t nvars, std::vector<VectorField> generators, GroebnerOptions opts = {})
      : nvars_(nvars), generators_(std::move(generators)), opts_(opts), cache_(std::make_shared<Cache>()) {
    for (const auto& g : generators_)
      if (g.dim() != nvars_) throw DimensionError("foliation generator has wrong dimension");
    std::vector<ModuleElement> cols;
    for (const auto& g : generators_) cols.push_back(g.as_module_element());
    gb_ = std::make_shared<const GroebnerBasis>(groebner_basis(cols, nvars_, nvars_, opts_));
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<VectorField>& generators() const { return generators_; }
  const VectorField& generator(std::size_t i) const { return generators_.at(i); }
  const GroebnerBasis& groebner() const { return *gb_; }
  const GroebnerOptions& options() const { return opts_; }

  std::vector<ModuleElement> generator_columns() const { return gb_->inputs(); }

  /// Anchor map: sum_l w[l] X_l.
  VectorField anchor(const Witness& w) const {
    return VectorField::from_module_element(combine(w, gb_->inputs(), nvars_, nvars_));
  }

  const InvolutivityResult& involutivity() const {
    std::call_once(cache_->involutivity_once, [&] { cache_->involutivity = involutivity_certificate(*this); });
    return cache_->involutivity;
  }
  /// Structure functions; throws if the generators are not involutive.
  const StructureFunctions& structure_functions() const {
    const auto& inv = involutivity();
    if (!inv.involutive())
      throw std::invalid_argument("generators are not involutive: bracket of generators " +
                                  std::to_string(inv.counterexample->first) + " and " +
                                  std::to_string(inv.counterexample->second) + " leaves the module");
    return *inv.structure_functions;
  }
  const std::vector<ModuleElement>& syzygies() const {
    std::call_once(cache_->syzygies_once, [&] { cache_->syzygies = syzygy_basis(gb_->inputs(), nvars_, nvars_, opts_); });
    return cache_->syzygies;
  }

  FoliationPresentation permuted(const std::vector<std::size_t>& order) const {
    std::vector<VectorField> g;
    for (auto i : order) g.push_back(generators_.at(i));
    return FoliationPresentation(nvars_, std::move(g), opts_);
  }

 private:
  struct Cache {
    std::once_flag involutivity_once, syzygies_once;
    InvolutivityResult involutivity;
    std::vector<ModuleElement> syzygies;
  };
  std::size_t nvars_;
  std::vector<VectorField> generators_;
  GroebnerOptions opts_;
  std::shared_ptr<const GroebnerBasis> gb_;
  std::shared_ptr<Cache> cache_;
};

inline std::optional<Witness> member_witness(const FoliationPresentation& f, const VectorField& x) {
  if (x.dim() != f.nvars()) throw DimensionError("member_witness: ring mismatch");
  if (f.size() == 0) {
    if (x.is_zero()) return ModuleElement(f.nvars(), 0);
    return std::nullopt;
  }
  return submodule_membership(x.as_module_element(), f.groebner());
}

inline InvolutivityResult involutivity_certificate(const FoliationPresentation& f) {
  const std::size_t n = f.size();
  StructureFunctions c(n, std::vector<Witness>(n, ModuleElement(f.nvars(), n)));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t b = l + 1; b < n; ++b) {
      auto w = member_witness(f, bracket(f.generator(l), f.generator(b)));
      if (!w) return {std::nullopt, std::make_pair(l, b)};
      c[l][b] = *w;
      c[b][l] = -*w;
    }
  return {std::move(c), std::nullopt};
}

struct SymmetryReport {
  bool is_symmetry = true;
  /// Witness for [X, X_l] per generator; nullopt where membership fails.
  std::vector<std::optional<Witness>> witnesses;
  std::optional<std::size_t> first_failure;
};

/// X is an infinitesimal symmetry iff [X, X_l] lies in the foliation for every generator.
inline SymmetryReport symmetry_check(const FoliationPresentation& f, const VectorField& x) {
  SymmetryReport rep;
  for (std::size_t l = 0; l < f.size(); ++l) {
    auto w = member_witness(f, bracket(x, f.generator(l)));
    if (!w && rep.is_symmetry) {
      rep.is_symmetry = false;
      rep.first_failure = l;
    }
    rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

/// Generators f_j d/dx_i of I * X(K^d), j outer and i inner.
inline FoliationPresentation ideal_foliation_generators(std::size_t nvars, const std::vector<Poly>& ideal,
                                                        GroebnerOptions opts = {}) {
  std::vector<VectorField> gens;
  for (const auto& f : ideal) {
    if (f.nvars() != nvars) throw DimensionError("ideal generator from a different ring");
    for (std::size_t i = 0; i < nvars; ++i) gens.push_back(f * VectorField::coordinate(nvars, i));
  }
  return FoliationPresentation(nvars, std::move(gens), opts);
}

struct StrongSingularity {
  bool strongly_singular = false;
  std::vector<std::string> diagnostics;
};

/// True iff every ideal generator and its gradient vanish at p. That suffices for the
/// whole ideal: d(h f) = f dh + h df vanishes at p once f(p) = 0 and df(p) = 0.
inline StrongSingularity strongly_singular_check(const std::vector<Poly>& ideal, std::span<const Scalar> p) {
  StrongSingularity out{true, {}};
  for (std::size_t j = 0; j < ideal.size(); ++j) {
    const auto& f = ideal[j];
    Scalar v = evaluate(f, p);
    if (v != 0) {
      out.strongly_singular = false;
      out.diagnostics.push_back("generator " + std::to_string(j) + " does not vanish at the point (value " +
                                v.get_str() + ")");
      continue;
    }
    Vector grad;
    for (std::size_t i = 0; i < f.nvars(); ++i) grad.push_back(evaluate(derive(f, i), p));
    if (!is_zero(grad)) {
      out.strongly_singular = false;
      out.diagnostics.push_back("gradient of generator " + std::to_string(j) + " is " + to_string(grad));
    }
  }
  if (out.strongly_singular)
    out.diagnostics.push_back("all generators and gradients vanish; by Leibniz every element of the ideal has zero differential");
  return out;
}

/// Isotropy Lie algebra g_m = ker(rho_m) / (syzygies at m) on the generator fiber K^n.
struct IsotropyData {
  Vector point;
  std::size_t n_generators = 0;
  /// dim of K^n modulo evaluated syzygies.
  std::size_t fiber_dim = 0;
  Matrix rho_m;  // d x n, columns X_l(m)
  /// Evaluated syzygies spanning the fiber relations.
  std::vector<Vector> relations;
  /// kernel_basis()[a] is a representative in K^n of the a-th basis vector of g_m.
  QuotientSpace kernel{0, {}, {}};
  LieAlgebraData algebra;
  /// c^a_{lb}(m), indexed [l][b] -> vector over a.
  std::vector<std::vector<Vector>> structure_at_m;

  std::size_t dim() const { return kernel.dim(); }
  const std::vector<Vector>& kernel_basis() const { return kernel.basis(); }
  bool is_abelian() const { return algebra.is_abelian(); }

  /// Fiber-level bracket sum_{l,b} u_l v_b c_{lb}(m).
  Vector fiber_bracket(const Vector& u, const Vector& v) const {
    Vector r = zero_vector(n_generators);
    for (std::size_t l = 0; l < n_generators; ++l) {
      if (u[l] == 0) continue;
      for (std::size_t b = 0; b < n_generators; ++b) {
        if (v[b] == 0) continue;
        r = r + (u[l] * v[b]) * structure_at_m[l][b];
      }
    }
    return r;
  }
  /// Coordinates in g_m of a fiber vector lying in ker(rho_m); nullopt otherwise.
  std::optional<Vector> coords(const Vector& v) const { return kernel.coords(v); }
};

inline std::vector<Vector> evaluate_columns(const std::vector<ModuleElement>& cols, std::span<const Scalar> m) {
  std::vector<Vector> out;
  for (const auto& s : cols) {
    Vector v;
    for (std::size_t i = 0; i < s.rank(); ++i) v.push_back(evaluate(s[i], m));
    out.push_back(std::move(v));
  }
  return out;
}

inline IsotropyData isotropy_lie_algebra(const FoliationPresentation& f, std::span<const Scalar> m) {
  if (m.size() != f.nvars()) throw DimensionError("isotropy_lie_algebra: point dimension mismatch");
  const std::size_t n = f.size(), d = f.nvars();
  const auto& c = f.structure_functions();
  IsotropyData iso;
  iso.point.assign(m.begin(), m.end());
  iso.n_generators = n;
  iso.rho_m = Matrix(d, n);
  for (std::size_t l = 0; l < n; ++l) {
    Vector x = evaluate_at(f.generator(l), m);
    for (std::size_t i = 0; i < d; ++i) iso.rho_m(i, l) = x[i];
  }
  iso.relations = independent_subset(n, evaluate_columns(f.syzygies(), m));
  iso.fiber_dim = n - iso.relations.size();
  auto ker = nullspace(iso.rho_m);
  for (const auto& r : iso.relations)
    if (!is_zero(iso.rho_m * r)) throw InvariantViolation("evaluated syzygy is not in ker(rho_m)");
  iso.kernel = QuotientSpace(n, ker, iso.relations);

  iso.structure_at_m.assign(n, std::vector<Vector>(n));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t b = 0; b < n; ++b) {
      Vector v;
      for (std::size_t a = 0; a < n; ++a) v.push_back(evaluate(c[l][b][a], m));
      iso.structure_at_m[l][b] = std::move(v);
    }

  const std::size_t k = iso.dim();
  iso.algebra = LieAlgebraData(k);
  const auto& basis = iso.kernel_basis();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      auto coords = iso.coords(iso.fiber_bracket(basis[a], basis[b]));
      if (!coords) throw InvariantViolation("isotropy bracket leaves ker(rho_m); generators do not form a foliation");
      iso.algebra.set_bracket(a, b, *coords);
    }
  if (!jacobi_check(iso.algebra)) throw InvariantViolation("isotropy bracket violates the Jacobi identity");
  return iso;
}

}  // namespace folsym

#endif  // FOLSYM_FOLIATION_HPP
