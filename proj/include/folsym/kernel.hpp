#ifndef FOLSYM_KERNEL_HPP
#define FOLSYM_KERNEL_HPP

// Exact rationals and sparse multivariate polynomials over Q.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace folsym {

/// Exact rational scalar. GMP keeps mpq_class values canonical (reduced, positive denominator).
using Scalar = mpq_class;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an identity that must hold by construction fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::string to_string(const Scalar& s) { return s.get_str(); }

inline Scalar parse_scalar(const std::string& text) {
  Scalar s;
  if (s.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (s.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  s.canonicalize();
  return s;
}

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps_.at(i) = power;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const { return exps_; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.nvars(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    return r;
  }
  /// Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.nvars(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
    return r;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.nvars(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.nvars(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded reverse lexicographic order with x_1 > x_2 > ... > x_d.
inline std::strong_ordering grevlex(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Element of Q[x_1..x_d]. Terms are stored in strictly decreasing grevlex order with
/// no zero coefficients, so equality of Polys is equality of term lists.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Scalar& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("variable index out of range");
    Poly p(nvars);
    p.terms_.push_back({Monomial::variable(nvars, i), Scalar(1)});
    return p;
  }
  static Poly monomial(const Monomial& m, const Scalar& c) {
    Poly p(m.nvars());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds a Poly from arbitrary (possibly repeated, unordered) terms.
  static Poly from_terms(std::size_t nvars, const std::vector<Term>& terms) {
    std::map<Monomial, Scalar, GrevlexGreater> acc;
    for (const auto& t : terms) acc[t.mono] += t.coeff;
    return from_map(nvars, acc);
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }
  Scalar constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  /// This polynomial with its leading term removed.
  Poly tail() const {
    Poly r(nvars_);
    if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, Scalar(1)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, Scalar(-1)); }
  Poly& operator+=(const Poly& b) { return *this = merge(*this, b, Scalar(1)); }
  Poly& operator-=(const Poly& b) { return *this = merge(*this, b, Scalar(-1)); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::map<Monomial, Scalar, GrevlexGreater> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
    return from_map(a.nvars_, acc);
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend Poly operator*(const Scalar& c, const Poly& p) {
    if (c == 0) return Poly(p.nvars_);
    Poly r = p;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend Poly operator*(const Poly& p, const Scalar& c) { return c * p; }

  /// Multiply by c * m; grevlex is a monomial order so term order is preserved.
  Poly mul_term(const Monomial& m, const Scalar& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
  }

  Poly pow(unsigned n) const {
    Poly r = constant(nvars_, 1);
    Poly base = *this;
    while (n) {
      if (n & 1u) r *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

 private:
  static void check_ring(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("polynomials from different rings");
  }

  static Poly from_map(std::size_t nvars, const std::map<Monomial, Scalar, GrevlexGreater>& acc) {
    Poly r(nvars);
    r.terms_.reserve(acc.size());
    for (const auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    return r;
  }

  static Poly merge(const Poly& a, const Poly& b, const Scalar& sign) {
    check_ring(a, b);
    Poly r(a.nvars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      auto c = grevlex(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].mono, sign * b.terms_[j].coeff});
        ++j;
      } else {
        Scalar s = a.terms_[i].coeff + sign * b.terms_[j].coeff;
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i, ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back({b.terms_[j].mono, sign * b.terms_[j].coeff});
    return r;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Partial derivative with respect to variable i.
inline Poly derive(const Poly& p, std::size_t i) {
  if (i >= p.nvars()) throw DimensionError("derive: variable index " + std::to_string(i) + " out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    auto e = t.mono[i];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps(t.mono.exponents().begin(), t.mono.exponents().end());
    exps[i] -= 1;
    out.push_back({Monomial(std::move(exps)), t.coeff * e});
  }
  // Distinct monomials stay distinct after lowering one exponent; order may change.
  return Poly::from_terms(p.nvars(), out);
}

inline Scalar evaluate(const Poly& p, std::span<const Scalar> point) {
  if (point.size() != p.nvars())
    throw DimensionError("evaluate: point has " + std::to_string(point.size()) + " coordinates, ring has " +
                         std::to_string(p.nvars()));
  Scalar sum = 0;
  for (const auto& t : p.terms()) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

inline std::vector<std::string> default_variable_names(std::size_t nvars) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i)
    names.push_back(nvars <= 3 ? small[i] : "x" + std::to_string(i + 1));
  return names;
}

/// Renders p in the input grammar, e.g. "-x^4 + y^2 - 1/2".
inline std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || t.mono.is_one()) {
      os << c.get_str();
      if (!t.mono.is_one()) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << names.at(i);
      if (t.mono[i] > 1) os << "^" << t.mono[i];
    }
  }
  return os.str();
}

inline std::string to_string(const Poly& p) { return to_string(p, default_variable_names(p.nvars())); }

}  // namespace folsym

#endif  // FOLSYM_KERNEL_HPP
