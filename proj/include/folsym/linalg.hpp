#ifndef FOLSYM_LINALG_HPP
#define FOLSYM_LINALG_HPP

// Dense exact linear algebra over Q: row reduction, kernels, solves, quotient coordinates.

#include <cstddef>
#include <optional>
#include <vector>

#include "folsym/kernel.hpp"

namespace folsym {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vector operator-(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vector operator*(const Scalar& c, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector operator*(const Vector& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    Vector r = zero_vector(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x *= c;
    return r;
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Scalar inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {v : m v = 0}, one vector per free column.
inline std::vector<Vector> nullspace(const Matrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw DimensionError("solve: right-hand side size mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  Vector x = zero_vector(a.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == a.cols()) return std::nullopt;
    x[pivots[k]] = r(k, a.cols());
  }
  return x;
}

/// Incrementally maintained echelon form used to test linear independence in O(n^2) per vector.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t dim) : dim_(dim) {}

  /// Adds v if it is independent of the vectors added so far; returns whether it was added.
  bool add(const Vector& v) {
    Vector w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && w[p] == 0) ++p;
    if (p == dim_) return false;
    Scalar inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }
  bool contains(const Vector& v) const { return folsym::is_zero(reduce(v)); }
  std::size_t rank() const { return rows_.size(); }

 private:
  Vector reduce(Vector w) const {
    if (w.size() != dim_) throw DimensionError("echelon: vector size mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar f = w[pivots_[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (rows_[k][j] != 0) w[j] -= f * rows_[k][j];
    }
    return w;
  }

  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// A maximal linearly independent subfamily, chosen greedily in order.
inline std::vector<Vector> independent_subset(std::size_t dim, const std::vector<Vector>& vs) {
  EchelonBuilder eb(dim);
  std::vector<Vector> kept;
  for (const auto& v : vs)
    if (eb.add(v)) kept.push_back(v);
  return kept;
}

/// Vector space V / W presented by representatives: `basis` completes a basis of W
/// (`relations`) to a basis of V (`ambient`). Coordinates are taken modulo W.
class QuotientSpace {
 public:
  QuotientSpace(std::size_t dim, const std::vector<Vector>& ambient, const std::vector<Vector>& relations)
      : dim_(dim) {
    EchelonBuilder eb(dim);
    for (const auto& r : relations)
      if (eb.add(r)) relations_.push_back(r);
    for (const auto& v : ambient)
      if (eb.add(v)) basis_.push_back(v);
    std::vector<Vector> cols = basis_;
    cols.insert(cols.end(), relations_.begin(), relations_.end());
    frame_ = Matrix::from_columns(dim, cols);
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<Vector>& relations() const { return relations_; }

  /// Coordinates of v modulo the relations, or nullopt if v is outside the ambient span.
  std::optional<Vector> coords(const Vector& v) const {
    if (frame_.cols() == 0) {
      if (folsym::is_zero(v)) return Vector{};
      return std::nullopt;
    }
    auto x = solve(frame_, v);
    if (!x) return std::nullopt;
    return Vector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(basis_.size()));
  }

  Vector lift(const Vector& c) const {
    Vector v = zero_vector(dim_);
    for (std::size_t k = 0; k < basis_.size(); ++k) v = v + c[k] * basis_[k];
    return v;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> basis_;
  std::vector<Vector> relations_;
  Matrix frame_;
};

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace folsym

#endif  // FOLSYM_LINALG_HPP
