#ifndef FOLSYM_LIEALG_HPP
#define FOLSYM_LIEALG_HPP

// Finite-dimensional Lie algebras by structure constants, their modules, and the
// Chevalley-Eilenberg complex in degrees 0..3.
//
// Sign convention (standard):
//   (d w)(x_0..x_k) = sum_i (-1)^i nu(x_i) w(..^x_i..)
//                   + sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..^x_i..^x_j..)
// so (d b)(x,y) = nu(x)b(y) - nu(y)b(x) - b([x,y]) and, for 2-cochains,
// (d w)(x,y,z) = nu(z)w(x,y) - w([x,y],z) + cyclic(x,y,z).

#include <optional>
#include <string>
#include <vector>

#include "folsym/kernel.hpp"
#include "folsym/linalg.hpp"

namespace folsym {

/// [e_i, e_j] = sum_k f^k_ij e_k.
class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  explicit LieAlgebraData(std::size_t dim) : dim_(dim), f_(dim * dim * dim, Scalar(0)) {}

  static LieAlgebraData abelian(std::size_t dim) { return LieAlgebraData(dim); }
  /// Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  static LieAlgebraData sl2() {
    LieAlgebraData g(3);
    g.set_bracket(0, 1, {0, 2, 0});
    g.set_bracket(0, 2, {0, 0, -2});
    g.set_bracket(1, 2, {1, 0, 0});
    return g;
  }
  /// Basis (e1, e2, z) with [e1, e2] = z.
  static LieAlgebraData heisenberg() {
    LieAlgebraData g(3);
    g.set_bracket(0, 1, {0, 0, 1});
    return g;
  }
  /// gl_n on matrix units E_ij (index i*n + j): [E_ij, E_kl] = d_jk E_il - d_li E_kj.
  static LieAlgebraData gl(std::size_t n) {
    LieAlgebraData g(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            std::size_t a = i * n + j, b = k * n + l;
            if (a >= b) continue;
            Vector r = zero_vector(n * n);
            if (j == k) r[i * n + l] += 1;
            if (l == i) r[k * n + j] -= 1;
            g.set_bracket(a, b, r);
          }
    return g;
  }

  std::size_t dim() const { return dim_; }
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const { return f_[(i * dim_ + j) * dim_ + k]; }

  /// Sets [e_i, e_j] and, by antisymmetry, [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, const Vector& value) {
    if (i >= dim_ || j >= dim_ || value.size() != dim_) throw DimensionError("set_bracket: index out of range");
    if (i == j && !is_zero(value)) throw std::invalid_argument("bracket of a basis element with itself must vanish");
    for (std::size_t k = 0; k < dim_; ++k) {
      f_[(i * dim_ + j) * dim_ + k] = value[k];
      f_[(j * dim_ + i) * dim_ + k] = -value[k];
    }
  }
  void set_constant(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) { f_[(i * dim_ + j) * dim_ + k] = v; }

  Vector bracket(std::size_t i, std::size_t j) const {
    Vector r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = constant(i, j, k);
    return r;
  }
  Vector bracket(const Vector& u, const Vector& v) const {
    Vector r = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (v[j] == 0) continue;
        Scalar c = u[i] * v[j];
        for (std::size_t k = 0; k < dim_; ++k) r[k] += c * constant(i, j, k);
      }
    }
    return r;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (constant(i, j, k) != -constant(j, i, k)) return false;
    return true;
  }
  bool is_abelian() const {
    for (const auto& c : f_)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const LieAlgebraData&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar> f_;
};

/// Exact check of antisymmetry and [[e_i,e_j],e_k] + cyclic = 0 on all basis triples.
inline bool jacobi_check(const LieAlgebraData& g) {
  if (!g.is_antisymmetric()) return false;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector ei = zero_vector(n), ej = zero_vector(n), ek = zero_vector(n);
        ei[i] = ej[j] = ek[k] = 1;
        Vector s = g.bracket(g.bracket(ei, ej), ek) + g.bracket(g.bracket(ej, ek), ei) + g.bracket(g.bracket(ek, ei), ej);
        if (!is_zero(s)) return false;
      }
  return true;
}

/// Basis of the center {z : [e_i, z] = 0 for all i}.
inline std::vector<Vector> center(const LieAlgebraData& g) {
  const std::size_t n = g.dim();
  Matrix ad(n * n, n);  // row (i, k), column j: f^k_ij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) ad(i * n + k, j) = g.constant(i, j, k);
  return nullspace(ad);
}

/// A g-module: one dim x dim matrix per basis element of g.
struct GModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;

  static GModule trivial(const LieAlgebraData& g, std::size_t dim) {
    return GModule{dim, std::vector<Matrix>(g.dim(), Matrix(dim, dim))};
  }
  Matrix act(const Vector& x) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < action.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) += x[i] * action[i](r, c);
    }
    return m;
  }
};

/// First basis pair (i, j) where action([e_i,e_j]) != [action(e_i), action(e_j)], if any.
inline std::optional<std::pair<std::size_t, std::size_t>> module_violation(const LieAlgebraData& g, const GModule& v) {
  if (v.action.size() != g.dim()) throw DimensionError("module action count differs from Lie algebra dimension");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      Matrix lhs = v.act(g.bracket(i, j));
      Matrix rhs = v.action[i] * v.action[j] - v.action[j] * v.action[i];
      if (!(lhs == rhs)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

class ModuleAxiomViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Increasing index tuples (i_1 < ... < i_k) over {0..n-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Alternating k-linear map g^k -> V, stored on increasing basis tuples.
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t degree, std::size_t g_dim, std::size_t v_dim)
      : degree_(degree), g_dim_(g_dim), v_dim_(v_dim), tuples_(increasing_tuples(g_dim, degree)) {
    if (degree > 3) throw DimensionError("cochains are supported up to degree 3");
    values_.assign(tuples_.size(), zero_vector(v_dim));
  }

  std::size_t degree() const { return degree_; }
  std::size_t g_dim() const { return g_dim_; }
  std::size_t v_dim() const { return v_dim_; }
  const std::vector<std::vector<std::size_t>>& tuples() const { return tuples_; }
  std::size_t flat_dim() const { return tuples_.size() * v_dim_; }

  /// Value on an arbitrary index tuple, using alternation.
  Vector value(std::vector<std::size_t> idx) const {
    int sign = sort_with_sign(idx);
    if (sign == 0) return zero_vector(v_dim_);
    Vector v = values_[index_of(idx)];
    return sign > 0 ? v : Scalar(-1) * v;
  }
  /// Sets the value on idx (any order), storing the alternated value.
  void set(std::vector<std::size_t> idx, const Vector& v) {
    if (v.size() != v_dim_) throw DimensionError("cochain value has wrong dimension");
    int sign = sort_with_sign(idx);
    if (sign == 0) throw std::invalid_argument("alternating cochain cannot be set on a repeated index");
    values_[index_of(idx)] = sign > 0 ? v : Scalar(-1) * v;
  }

  Vector flatten() const {
    Vector out;
    out.reserve(flat_dim());
    for (const auto& v : values_) out.insert(out.end(), v.begin(), v.end());
    return out;
  }
  static Cochain unflatten(std::size_t degree, std::size_t g_dim, std::size_t v_dim, const Vector& flat) {
    Cochain c(degree, g_dim, v_dim);
    if (flat.size() != c.flat_dim()) throw DimensionError("unflatten: wrong length");
    for (std::size_t t = 0; t < c.tuples_.size(); ++t)
      for (std::size_t a = 0; a < v_dim; ++a) c.values_[t][a] = flat[t * v_dim + a];
    return c;
  }
  bool is_zero() const {
    for (const auto& v : values_)
      if (!folsym::is_zero(v)) return false;
    return true;
  }
  friend Cochain operator-(Cochain a, const Cochain& b) {
    for (std::size_t t = 0; t < a.values_.size(); ++t) a.values_[t] = a.values_[t] - b.values_.at(t);
    return a;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) {
    for (std::size_t t = 0; t < a.values_.size(); ++t) a.values_[t] = a.values_[t] + b.values_.at(t);
    return a;
  }
  bool operator==(const Cochain&) const = default;

 private:
  static int sort_with_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return 0;
    return sign;
  }
  std::size_t index_of(const std::vector<std::size_t>& sorted) const {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), sorted);
    if (it == tuples_.end() || *it != sorted) throw DimensionError("cochain index out of range");
    return static_cast<std::size_t>(it - tuples_.begin());
  }

  std::size_t degree_ = 0, g_dim_ = 0, v_dim_ = 0;
  std::vector<std::vector<std::size_t>> tuples_;
  std::vector<Vector> values_;
};

/// Chevalley-Eilenberg differential of a cochain of degree <= 2.
inline Cochain ce_differential(const Cochain& c, const LieAlgebraData& g, const GModule& v) {
  if (c.degree() > 2) throw DimensionError("ce_differential: degree must be at most 2");
  if (c.g_dim() != g.dim() || c.v_dim() != v.dim || v.action.size() != g.dim())
    throw DimensionError("ce_differential: shape mismatch");
  if (auto bad = module_violation(g, v))
    throw ModuleAxiomViolation("not a module: action fails on basis pair (" + std::to_string(bad->first) + ", " +
                               std::to_string(bad->second) + ")");
  const std::size_t k = c.degree();
  Cochain out(k + 1, g.dim(), v.dim);
  for (const auto& tup : out.tuples()) {
    Vector acc = zero_vector(v.dim);
    for (std::size_t i = 0; i <= k; ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t a = 0; a <= k; ++a)
        if (a != i) rest.push_back(tup[a]);
      Vector term = v.action[tup[i]] * c.value(rest);
      acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) {
        std::vector<std::size_t> rest;
        for (std::size_t a = 0; a <= k; ++a)
          if (a != i && a != j) rest.push_back(tup[a]);
        // w([x_i, x_j], rest) expanded by linearity in the first slot
        Vector br = g.bracket(tup[i], tup[j]);
        Vector term = zero_vector(v.dim);
        for (std::size_t m = 0; m < g.dim(); ++m) {
          if (br[m] == 0) continue;
          std::vector<std::size_t> args{m};
          args.insert(args.end(), rest.begin(), rest.end());
          term = term + br[m] * c.value(args);
        }
        acc = ((i + j) % 2 == 0) ? acc + term : acc - term;
      }
    out.set(tup, acc);
  }
  return out;
}

/// Matrix of d: C^k -> C^{k+1} in flattened coordinates.
inline Matrix ce_matrix(std::size_t k, const LieAlgebraData& g, const GModule& v) {
  Cochain probe(k, g.dim(), v.dim);
  Cochain target(k + 1, g.dim(), v.dim);
  Matrix m(target.flat_dim(), probe.flat_dim());
  for (std::size_t col = 0; col < probe.flat_dim(); ++col) {
    Vector e = zero_vector(probe.flat_dim());
    e[col] = 1;
    Vector img = ce_differential(Cochain::unflatten(k, g.dim(), v.dim, e), g, v).flatten();
    for (std::size_t r = 0; r < img.size(); ++r) m(r, col) = img[r];
  }
  return m;
}

class NotACocycle : public std::invalid_argument {
 public:
  NotACocycle(const std::string& what, Cochain differential)
      : std::invalid_argument(what), differential_(std::move(differential)) {}
  const Cochain& differential() const { return differential_; }

 private:
  Cochain differential_;
};

/// H^k(g, V) = ker d^k / im d^{k-1} with explicit representatives.
class CohomologySpace {
 public:
  CohomologySpace(const LieAlgebraData& g, const GModule& v, std::size_t k)
      : g_(g), v_(v), degree_(k), cocycles_(0, {}, {}) {
    if (k > 2) throw DimensionError("cohomology_space supports degrees 0..2");
    Matrix dk = ce_matrix(k, g, v);
    auto z = nullspace(dk);
    std::vector<Vector> b;
    const std::size_t flat = Cochain(k, g.dim(), v.dim).flat_dim();
    if (k > 0) {
      Matrix dprev = ce_matrix(k - 1, g, v);
      for (std::size_t c = 0; c < dprev.cols(); ++c) b.push_back(dprev.column(c));
      rank_prev_ = rank(dprev);
    }
    kernel_dim_ = z.size();
    cocycles_ = QuotientSpace(flat, z, b);
  }

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return cocycles_.dim(); }
  std::size_t kernel_dim() const { return kernel_dim_; }
  std::size_t coboundary_rank() const { return rank_prev_; }

  std::vector<Cochain> representatives() const {
    std::vector<Cochain> reps;
    for (const auto& b : cocycles_.basis()) reps.push_back(Cochain::unflatten(degree_, g_.dim(), v_.dim, b));
    return reps;
  }

  /// Class coordinates of a cocycle on representatives(); throws NotACocycle otherwise.
  Vector class_coordinates(const Cochain& c) const {
    if (degree_ < 3) {
      Cochain dc = ce_differential(c, g_, v_);
      if (!dc.is_zero()) throw NotACocycle("cochain is not a cocycle", dc);
    }
    auto x = cocycles_.coords(c.flatten());
    if (!x) throw InvariantViolation("cocycle outside the computed kernel");
    return *x;
  }

 private:
  LieAlgebraData g_;
  GModule v_;
  std::size_t degree_;
  QuotientSpace cocycles_;
  std::size_t kernel_dim_ = 0, rank_prev_ = 0;
};

inline CohomologySpace cohomology_space(const LieAlgebraData& g, const GModule& v, std::size_t k = 2) {
  return CohomologySpace(g, v, k);
}

struct CoboundaryResult {
  /// beta with d(beta) == cocycle, when one exists.
  std::optional<Cochain> primitive;
  /// Otherwise a linear functional (on flattened 2-cochains) that kills every
  /// coboundary but not the cocycle.
  Vector certificate;
};

inline CoboundaryResult coboundary_solve(const Cochain& cocycle, const LieAlgebraData& g, const GModule& v) {
  if (cocycle.degree() != 2) throw DimensionError("coboundary_solve expects a 2-cochain");
  Cochain dc = ce_differential(cocycle, g, v);
  if (!dc.is_zero()) throw NotACocycle("coboundary_solve: input is not a cocycle", dc);
  Matrix d1 = ce_matrix(1, g, v);
  Vector rhs = cocycle.flatten();
  if (auto beta = solve(d1, rhs)) {
    Cochain b = Cochain::unflatten(1, g.dim(), v.dim, *beta);
    if (!(ce_differential(b, g, v) == cocycle)) throw InvariantViolation("coboundary primitive does not reproduce cocycle");
    return {b, {}};
  }
  Matrix d1t(d1.cols(), d1.rows());
  for (std::size_t r = 0; r < d1.rows(); ++r)
    for (std::size_t c = 0; c < d1.cols(); ++c) d1t(c, r) = d1(r, c);
  for (const auto& y : nullspace(d1t)) {
    Scalar pairing = 0;
    for (std::size_t i = 0; i < y.size(); ++i) pairing += y[i] * rhs[i];
    if (pairing != 0) return {std::nullopt, y};
  }
  throw InvariantViolation("inconsistent coboundary system without a separating functional");
}

}  // namespace folsym

#endif  // FOLSYM_LIEALG_HPP
