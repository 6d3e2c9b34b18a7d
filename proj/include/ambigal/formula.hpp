#pragma once

#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arith.hpp"

namespace ambigal {

// Symbols appearing in the multiplicity tables. `z2` is the single ceiling
// ceil((i+b3-4b2+2b1)/8), an alternative reading of the pair zbar+b1.
enum class Sym { a, abar, b, bbar, c, cbar, d, dbar, w, wbar, y, ybar, zbar, z2, m, e0, b1, count_ };

inline constexpr std::array<std::string_view, static_cast<std::size_t>(Sym::count_)> kSymNames = {
    "a", "abar", "b", "bbar", "c", "cbar", "d", "dbar", "w", "wbar", "y", "ybar", "zbar", "z2", "m", "e0", "b1"};

using SymValues = std::array<i64, static_cast<std::size_t>(Sym::count_)>;

// An integer linear form in the table symbols.
struct Linear {
  std::array<i64, static_cast<std::size_t>(Sym::count_)> coef{};
  i64 constant = 0;

  i64 eval(const SymValues& v) const {
    i64 s = constant;
    for (std::size_t k = 0; k < coef.size(); ++k) s += coef[k] * v[k];
    return s;
  }
  Linear& add(const Linear& o, i64 scale) {
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] += scale * o.coef[k];
    constant += scale * o.constant;
    return *this;
  }
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Linear parse() {
    Linear out = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const char* why) const {
    throw std::invalid_argument("bad formula '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  Linear expr() {
    Linear out;
    i64 sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    out.add(term(), sign);
    for (;;) {
      if (eat('+')) out.add(term(), 1);
      else if (eat('-')) out.add(term(), -1);
      else return out;
    }
  }
  Linear term() {
    skip();
    i64 k = 1;
    bool have_num = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        k = 10 * k + (s_[pos_++] - '0');
      have_num = true;
      eat('*');
    }
    Linear atom;
    skip();
    if (eat('(')) {
      atom = expr();
      if (!eat(')')) fail("missing ')'");
    } else if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      std::size_t k2 = 0;
      while (k2 < kSymNames.size() && kSymNames[k2] != id) ++k2;
      if (k2 == kSymNames.size()) fail("unknown symbol");
      atom.coef[k2] = 1;
    } else if (have_num) {
      atom.constant = 1;
    } else {
      fail("expected term");
    }
    Linear out;
    return out.add(atom, k);
  }
};

}  // namespace detail

inline Linear parse_formula(std::string_view s) { return detail::FormulaParser(s).parse(); }

}  // namespace ambigal
