#ifndef FOLSYM_PARSE_HPP
#define FOLSYM_PARSE_HPP

// Recursive-descent parser for polynomial expressions over Q:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*        division only by nonzero constants
//   factor := atom ['^' natural]
//   atom   := natural | name | '(' expr ')'

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "folsym/kernel.hpp"

namespace folsym {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : std::invalid_argument(msg + " at " + std::to_string(line) + ":" + std::to_string(col)), line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        skip();
        std::size_t at = pos_;
        Poly d = factor();
        if (d.is_zero()) fail_at("division by zero", at);
        if (!d.is_constant()) fail_at("division by a non-constant", at);
        Scalar inv = 1 / d.constant_term();
        acc = inv * acc;
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 4) fail_at("exponent too large", start);
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(vars_.size(), Scalar(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Poly::variable(vars_.size(), i);
      fail_at("unknown variable " + name, start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return detail::PolyParser(text, vars).parse();
}

}  // namespace folsym

#endif  // FOLSYM_PARSE_HPP
