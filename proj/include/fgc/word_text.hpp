#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "fgc/word.hpp"

namespace fgc {

/// Canonical text form: generators `x1`, `x2`, ..., inverses `x1^-1`, letters
/// joined by `*`; the empty word prints as `1`.
inline std::string print_word(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    Letter x = w[i];
    out += 'x';
    out += std::to_string(x > 0 ? x : -x);
    if (x < 0) out += "^-1";
  }
  return out;
}

namespace detail {

class WordParser {
 public:
  WordParser(const std::string& text, int rank) : s_(text), rank_(rank) {}

  FreeWord parse() {
    FreeWord w = parse_product();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return w;
  }

 private:
  FreeWord parse_product() {
    FreeWord w(rank_);
    bool first = true;
    for (;;) {
      skip_ws();
      if (pos_ == s_.size()) break;
      char c = s_[pos_];
      if (c == ')' || c == ',' || c == ']') break;
      if (c == '*') {
        ++pos_;
        continue;
      }
      FreeWord atom = parse_atom();
      long long e = parse_exponent();
      w.push_word(pow(atom, e));
      first = false;
    }
    if (first && s_.empty()) return w;
    return w;
  }

  FreeWord parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected atom");
    char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return FreeWord(rank_);
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      long long idx = parse_int(false);
      if (idx <= 0 || idx > rank_) fail("generator index out of range");
      return FreeWord(rank_, {static_cast<Letter>(idx)});
    }
    if (c == '(') {
      ++pos_;
      FreeWord inner = parse_product();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      FreeWord u = parse_product();
      expect(',');
      FreeWord v = parse_product();
      expect(']');
      return commutator(u, v);
    }
    fail(std::string("unexpected character '") + c + "'");
    return FreeWord(rank_);
  }

  long long parse_exponent() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return parse_int(true);
    }
    return 1;
  }

  long long parse_int(bool allow_sign) {
    skip_ws();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = (s_[pos_] == '-');
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected integer");
    }
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse_word: " + msg + " at position " + std::to_string(pos_) +
                                " in \"" + s_ + "\"");
  }

  const std::string& s_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the word grammar: products of atoms with optional `*`, atoms are
/// `xN`, `1`, parenthesized products and commutators `[u,v]`; any atom takes
/// an optional integer exponent `^k`. print_word output always parses back
/// to the same word.
inline FreeWord parse_word(const std::string& text, int rank) {
  return detail::WordParser(text, rank).parse();
}

}  // namespace fgc
