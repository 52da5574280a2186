#ifndef FOLSYM_VECT_HPP
#define FOLSYM_VECT_HPP

// Polynomial vector fields on K^d.

#include <span>
#include <string>
#include <vector>

#include "folsym/groebner.hpp"
#include "folsym/kernel.hpp"
#include "folsym/linalg.hpp"

namespace folsym {

/// sum_i components[i] * d/dx_i.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::size_t d) : comps_(d, Poly(d)) {}
  explicit VectorField(std::vector<Poly> comps) : comps_(std::move(comps)) {
    for (const auto& c : comps_)
      if (c.nvars() != comps_.size()) throw DimensionError("vector field needs one component per ring variable");
  }

  /// The coordinate field d/dx_i.
  static VectorField coordinate(std::size_t d, std::size_t i) {
    VectorField v(d);
    v.comps_.at(i) = Poly::constant(d, 1);
    return v;
  }

  std::size_t dim() const { return comps_.size(); }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }
  Poly& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }
  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  ModuleElement as_module_element() const { return ModuleElement(dim(), comps_); }
  static VectorField from_module_element(const ModuleElement& e) {
    if (e.rank() != e.nvars()) throw DimensionError("module element rank differs from ring dimension");
    return VectorField(e.components());
  }

  friend VectorField operator+(VectorField a, const VectorField& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a.comps_[i] += b.comps_[i];
    return a;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a.comps_[i] -= b.comps_[i];
    return a;
  }
  VectorField operator-() const {
    VectorField r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
  }
  VectorField& operator+=(const VectorField& b) { return *this = *this + b; }
  friend VectorField operator*(const Poly& f, VectorField v) {
    for (auto& c : v.comps_) c = f * c;
    return v;
  }
  friend VectorField operator*(const Scalar& s, VectorField v) {
    for (auto& c : v.comps_) c = s * c;
    return v;
  }
  bool operator==(const VectorField& o) const { return comps_ == o.comps_; }

 private:
  static void check(const VectorField& a, const VectorField& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector fields on different spaces");
  }
  std::vector<Poly> comps_;
};

/// X[f] = sum_i X_i df/dx_i.
inline Poly apply(const VectorField& x, const Poly& f) {
  if (f.nvars() != x.dim()) throw DimensionError("apply: ring mismatch");
  Poly out(f.nvars());
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero()) out += x[i] * derive(f, i);
  return out;
}

/// [X, Y]_i = X[Y_i] - Y[X_i].
inline VectorField bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw DimensionError("bracket: ring mismatch");
  std::vector<Poly> comps;
  comps.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) comps.push_back(apply(x, y[i]) - apply(y, x[i]));
  return VectorField(std::move(comps));
}

inline Vector evaluate_at(const VectorField& x, std::span<const Scalar> point) {
  if (point.size() != x.dim()) throw DimensionError("evaluate_at: point dimension mismatch");
  Vector v;
  v.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) v.push_back(evaluate(x[i], point));
  return v;
}

/// {F, G} = dF/dy dG/dx - dF/dx dG/dy on Q[x, y].
inline Poly poisson_bracket(const Poly& f, const Poly& g) {
  if (f.nvars() != 2 || g.nvars() != 2) throw DimensionError("poisson_bracket needs a two-variable ring");
  return derive(f, 1) * derive(g, 0) - derive(f, 0) * derive(g, 1);
}

/// X_H = dH/dy d/dx - dH/dx d/dy on Q[x, y].
inline VectorField hamiltonian(const Poly& h) {
  if (h.nvars() != 2) throw DimensionError("hamiltonian needs a two-variable ring");
  return VectorField(std::vector<Poly>{derive(h, 1), -derive(h, 0)});
}

inline std::string to_string(const VectorField& v, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v[i], names) + ")*d/d" + names.at(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace folsym

#endif  // FOLSYM_VECT_HPP
