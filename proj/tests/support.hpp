#ifndef FOLSYM_TESTS_SUPPORT_HPP
#define FOLSYM_TESTS_SUPPORT_HPP

#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "folsym/groebner.hpp"
#include "folsym/kernel.hpp"
#include "folsym/vect.hpp"

namespace testing_support {

using folsym::ModuleElement;
using folsym::Monomial;
using folsym::Poly;
using folsym::Scalar;
using folsym::VectorField;

struct Rng {
  explicit Rng(unsigned seed) : gen(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  std::mt19937 gen;
};

inline Scalar random_scalar(Rng& r, int range = 5, bool fractions = true) {
  int num = r.uniform(-range, range);
  int den = fractions ? r.uniform(1, 3) : 1;
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

inline Scalar random_nonzero_scalar(Rng& r, int range = 5) {
  Scalar s = 0;
  while (s == 0) s = random_scalar(r, range);
  return s;
}

inline Monomial random_monomial(Rng& r, std::size_t nvars, unsigned max_deg) {
  Monomial m(nvars);
  unsigned budget = static_cast<unsigned>(r.uniform(0, static_cast<int>(max_deg)));
  for (unsigned k = 0; k < budget; ++k) m = m * Monomial::variable(nvars, static_cast<std::size_t>(r.uniform(0, static_cast<int>(nvars) - 1)));
  return m;
}

inline Poly random_poly(Rng& r, std::size_t nvars, int max_terms, unsigned max_deg) {
  Poly p(nvars);
  int terms = r.uniform(0, max_terms);
  for (int k = 0; k < terms; ++k) p += Poly::monomial(random_monomial(r, nvars, max_deg), random_nonzero_scalar(r));
  return p;
}

inline VectorField random_field(Rng& r, std::size_t d, int max_terms, unsigned max_deg) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < d; ++i) c.push_back(random_poly(r, d, max_terms, max_deg));
  return VectorField(std::move(c));
}

inline ModuleElement random_element(Rng& r, std::size_t nvars, std::size_t rank, int max_terms, unsigned max_deg) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < rank; ++i) c.push_back(random_poly(r, nvars, max_terms, max_deg));
  return ModuleElement(nvars, std::move(c));
}

inline std::vector<Scalar> random_point(Rng& r, std::size_t d) {
  std::vector<Scalar> p;
  for (std::size_t i = 0; i < d; ++i) p.push_back(random_scalar(r, 4));
  return p;
}

/// All monomials of total degree <= deg.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned deg) {
  std::vector<Monomial> out{Monomial(nvars)};
  std::size_t start = 0;
  for (unsigned d = 1; d <= deg; ++d) {
    std::size_t end = out.size();
    std::vector<Monomial> next;
    for (std::size_t k = start; k < end; ++k)
      for (std::size_t i = 0; i < nvars; ++i) {
        Monomial m = out[k] * Monomial::variable(nvars, i);
        bool dup = false;
        for (const auto& e : next) dup = dup || e == m;
        if (!dup) next.push_back(m);
      }
    start = end;
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

/// Dense Gauss-Jordan over Q, written independently of the library's linear algebra.
struct DenseSystem {
  std::vector<std::vector<Scalar>> rows;
  std::size_t cols = 0;

  /// Reduced row echelon in place; returns pivot columns.
  std::vector<std::size_t> eliminate() {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && rows[p][c] == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      Scalar inv = 1 / rows[r][c];
      for (auto& v : rows[r]) v *= inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c] == 0) continue;
        Scalar f = rows[i][c];
        for (std::size_t k = c; k < rows[i].size(); ++k) rows[i][k] -= f * rows[r][k];
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }
};

inline std::size_t oracle_rank(std::vector<std::vector<Scalar>> rows, std::size_t cols) {
  DenseSystem s{std::move(rows), cols};
  return s.eliminate().size();
}

/// Solves A x = b (A given by rows); nullopt if inconsistent.
inline std::optional<std::vector<Scalar>> oracle_solve(const std::vector<std::vector<Scalar>>& a,
                                                       const std::vector<Scalar>& b, std::size_t cols) {
  DenseSystem s;
  s.cols = cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto row = a[i];
    row.push_back(b[i]);
    s.rows.push_back(std::move(row));
  }
  auto piv = s.eliminate();
  for (auto p : piv)
    if (p == cols) return std::nullopt;
  for (const auto& row : s.rows) {
    bool zero = true;
    for (std::size_t c = 0; c < cols; ++c) zero = zero && row[c] == 0;
    if (zero && row[cols] != 0) return std::nullopt;
  }
  std::vector<Scalar> x(cols, Scalar(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = s.rows[k][cols];
  return x;
}

inline std::vector<std::vector<Scalar>> oracle_nullspace(const std::vector<std::vector<Scalar>>& a, std::size_t cols) {
  DenseSystem s{a, cols};
  auto piv = s.eliminate();
  std::vector<bool> is_piv(cols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -s.rows[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

/// Linear map (r_1..r_n) -> sum r_k gens[k], with deg r_k <= deg, written as a matrix
/// from coefficient space to (position, monomial) space.
struct BoundedCombination {
  std::vector<Monomial> basis;  // candidate monomials for each coefficient
  std::vector<std::vector<Scalar>> rows;
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, std::size_t> row_index;
  std::size_t cols = 0;
  std::size_t nvars = 0;

  std::size_t row_of(std::size_t pos, const Monomial& m) {
    std::vector<std::uint32_t> key;
    for (std::size_t i = 0; i < m.nvars(); ++i) key.push_back(m[i]);
    auto [it, fresh] = row_index.emplace(std::make_pair(pos, key), rows.size());
    if (fresh) rows.emplace_back(cols, Scalar(0));
    return it->second;
  }
};

inline BoundedCombination bounded_combination(const std::vector<ModuleElement>& gens, std::size_t nvars, unsigned deg) {
  BoundedCombination bc;
  bc.nvars = nvars;
  bc.basis = monomials_up_to(nvars, deg);
  bc.cols = gens.size() * bc.basis.size();
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t b = 0; b < bc.basis.size(); ++b) {
      std::size_t col = k * bc.basis.size() + b;
      for (std::size_t pos = 0; pos < gens[k].rank(); ++pos)
        for (const auto& t : gens[k][pos].terms()) {
          std::size_t row = bc.row_of(pos, t.mono * bc.basis[b]);
          bc.rows[row][col] += t.coeff;
        }
    }
  return bc;
}

/// Is f a combination of gens with coefficient degrees <= deg? Returns the coefficients.
inline std::optional<std::vector<Poly>> bounded_membership(const ModuleElement& f, const std::vector<ModuleElement>& gens,
                                                           std::size_t nvars, unsigned deg) {
  BoundedCombination bc = bounded_combination(gens, nvars, deg);
  std::vector<Scalar> rhs;
  for (std::size_t pos = 0; pos < f.rank(); ++pos)
    for (const auto& t : f[pos].terms()) bc.row_of(pos, t.mono);
  rhs.assign(bc.rows.size(), Scalar(0));
  for (std::size_t pos = 0; pos < f.rank(); ++pos)
    for (const auto& t : f[pos].terms()) rhs[bc.row_of(pos, t.mono)] = t.coeff;
  auto x = oracle_solve(bc.rows, rhs, bc.cols);
  if (!x) return std::nullopt;
  std::vector<Poly> coeffs;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Poly p(nvars);
    for (std::size_t b = 0; b < bc.basis.size(); ++b)
      if ((*x)[k * bc.basis.size() + b] != 0) p += Poly::monomial(bc.basis[b], (*x)[k * bc.basis.size() + b]);
    coeffs.push_back(std::move(p));
  }
  return coeffs;
}

/// Relations sum r_k gens[k] = 0 with deg r_k <= deg, as a spanning set over Q.
inline std::vector<ModuleElement> bounded_syzygies(const std::vector<ModuleElement>& gens, std::size_t nvars,
                                                   unsigned deg) {
  BoundedCombination bc = bounded_combination(gens, nvars, deg);
  std::vector<ModuleElement> out;
  for (const auto& v : oracle_nullspace(bc.rows, bc.cols)) {
    ModuleElement s(nvars, gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t b = 0; b < bc.basis.size(); ++b)
        if (v[k * bc.basis.size() + b] != 0) s[k] += Poly::monomial(bc.basis[b], v[k * bc.basis.size() + b]);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string read_problem(const std::string& name) {
  std::ifstream in(std::string(FOLSYM_PROBLEMS_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace testing_support

#endif  // FOLSYM_TESTS_SUPPORT_HPP
