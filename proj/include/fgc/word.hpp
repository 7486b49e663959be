#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgc/rng.hpp"

namespace fgc {

/// A letter is a signed 1-based generator index: +i is the i-th generator,
/// -i its inverse. 0 is never a letter.
using Letter = int;

/// Reduced word in a free group of fixed finite rank. The letter sequence is
/// the canonical form: two FreeWords are equal in the group iff they compare
/// equal letterwise. All operations preserve reducedness.
class FreeWord {
 public:
  FreeWord() = default;

  explicit FreeWord(int rank) : rank_(check_rank(rank)) {}

  /// Reduces the given letter sequence. Throws on a malformed letter.
  FreeWord(int rank, const std::vector<Letter>& letters) : rank_(check_rank(rank)) {
    letters_.reserve(letters.size());
    for (Letter x : letters) push(x);
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Appends one letter with cancellation against the current last letter.
  void push(Letter x) {
    check_letter(x);
    if (!letters_.empty() && letters_.back() == -x) {
      letters_.pop_back();
    } else {
      letters_.push_back(x);
    }
  }

  /// Appends a whole word with cancellation at the junction.
  void push_word(const FreeWord& w) {
    if (w.rank_ != rank_) throw std::invalid_argument("FreeWord: rank mismatch");
    for (Letter x : w.letters_) {
      if (!letters_.empty() && letters_.back() == -x) {
        letters_.pop_back();
      } else {
        letters_.push_back(x);
      }
    }
  }

  void push_inverse_word(const FreeWord& w) {
    if (w.rank_ != rank_) throw std::invalid_argument("FreeWord: rank mismatch");
    for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) {
      Letter x = -*it;
      if (!letters_.empty() && letters_.back() == -x) {
        letters_.pop_back();
      } else {
        letters_.push_back(x);
      }
    }
  }

  friend bool operator==(const FreeWord& a, const FreeWord& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const FreeWord& a, const FreeWord& b) { return !(a == b); }

  /// Deterministic total order: length first, then letters by
  /// (generator index, sign), positive before negative.
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      if (a.letters_[i] != b.letters_[i]) return letter_key(a.letters_[i]) < letter_key(b.letters_[i]);
    }
    return false;
  }

  static std::pair<int, int> letter_key(Letter x) { return {x < 0 ? -x : x, x < 0 ? 1 : 0}; }

 private:
  static int check_rank(int rank) {
    if (rank <= 0) throw std::invalid_argument("FreeWord: rank must be positive");
    return rank;
  }
  void check_letter(Letter x) const {
    if (x == 0 || x > rank_ || x < -rank_) {
      throw std::invalid_argument("FreeWord: letter " + std::to_string(x) +
                                  " out of range for rank " + std::to_string(rank_));
    }
  }

  int rank_ = 1;
  std::vector<Letter> letters_;
};

struct FreeWordHash {
  std::size_t operator()(const FreeWord& w) const {
    std::size_t h = 1469598103934665603ULL ^ static_cast<std::size_t>(w.rank());
    for (Letter x : w.letters()) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

inline FreeWord empty_word(int rank) { return FreeWord(rank); }

/// Reduces a raw letter sequence to canonical form. Confluent: the result is
/// independent of cancellation order.
inline FreeWord reduce(int rank, const std::vector<Letter>& letters) {
  return FreeWord(rank, letters);
}

inline FreeWord concat(const FreeWord& u, const FreeWord& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("concat: rank mismatch");
  FreeWord r = u;
  r.push_word(v);
  return r;
}

inline FreeWord invert(const FreeWord& w) {
  FreeWord r(w.rank());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) r.push(-*it);
  return r;
}

/// conjugate(w, u) = u w u^-1. Formulas of the shape c^-1 w c are spelled
/// conjugate(w, invert(c)).
inline FreeWord conjugate(const FreeWord& w, const FreeWord& u) {
  if (u.rank() != w.rank()) throw std::invalid_argument("conjugate: rank mismatch");
  FreeWord r = u;
  r.push_word(w);
  r.push_inverse_word(u);
  return r;
}

inline FreeWord pow(const FreeWord& w, long long k) {
  if (k < 0) return pow(invert(w), -k);
  FreeWord r(w.rank());
  for (long long i = 0; i < k; ++i) r.push_word(w);
  return r;
}

inline FreeWord commutator(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  r.push_word(b);
  r.push_inverse_word(a);
  r.push_inverse_word(b);
  return r;
}

inline bool commutes(const FreeWord& a, const FreeWord& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("commutes: rank mismatch");
  return commutator(a, b).empty();
}

/// w = conjugator * core * conjugator^-1 with core cyclically reduced and of
/// minimal length; the three factors concatenate without cancellation.
struct CyclicDecomp {
  FreeWord conjugator;
  FreeWord core;
};

inline CyclicDecomp cyclic_decompose(const FreeWord& w) {
  if (w.empty()) throw std::invalid_argument("cyclic_decompose: trivial word");
  const auto& xs = w.letters();
  std::size_t i = 0, j = xs.size() - 1;
  while (i < j && xs[i] == -xs[j]) {
    ++i;
    --j;
  }
  FreeWord conj(w.rank());
  for (std::size_t t = 0; t < i; ++t) conj.push(xs[t]);
  FreeWord core(w.rank());
  for (std::size_t t = i; t <= j; ++t) core.push(xs[t]);
  return {std::move(conj), std::move(core)};
}

inline bool cyclically_reduced(const FreeWord& w) {
  return w.empty() || w.letters().front() != -w.letters().back();
}

struct PrimitiveRoot {
  FreeWord root;
  long long exponent = 1;
};

/// w = root^exponent with root not a proper power; the centralizer of w is
/// the cyclic group generated by root.
inline PrimitiveRoot primitive_root(const FreeWord& w) {
  if (w.empty()) throw std::invalid_argument("primitive_root: trivial word");
  CyclicDecomp d = cyclic_decompose(w);
  const auto& c = d.core.letters();
  const std::size_t n = c.size();
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t t = 0; t + p < n && ok; ++t) ok = (c[t] == c[t + p]);
    if (ok) {
      period = p;
      break;
    }
  }
  FreeWord root_core(w.rank());
  for (std::size_t t = 0; t < period; ++t) root_core.push(c[t]);
  return {conjugate(root_core, d.conjugator), static_cast<long long>(n / period)};
}

/// Membership in the cyclic group generated by c (c need not be primitive or
/// cyclically reduced).
inline bool is_power_of(const FreeWord& w, const FreeWord& c) {
  if (c.empty()) return w.empty();
  if (w.empty()) return true;
  CyclicDecomp d = cyclic_decompose(c);
  FreeWord x = conjugate(w, invert(d.conjugator));
  if (x.empty() || x.size() % d.core.size() != 0) return false;
  long long k = static_cast<long long>(x.size() / d.core.size());
  return x == pow(d.core, k) || x == pow(d.core, -k);
}

/// Substitution homomorphism. images[i-1] is the image of generator i; all
/// images must live in the same target rank.
inline FreeWord apply_hom(const std::vector<FreeWord>& images, const FreeWord& w) {
  if (images.empty()) throw std::invalid_argument("apply_hom: no images");
  const int target_rank = images[0].rank();
  if (static_cast<int>(images.size()) < w.rank()) {
    throw std::invalid_argument("apply_hom: missing generator image");
  }
  for (const auto& im : images) {
    if (im.rank() != target_rank) throw std::invalid_argument("apply_hom: mixed target ranks");
  }
  FreeWord r(target_rank);
  for (Letter x : w.letters()) {
    if (x > 0) {
      r.push_word(images[static_cast<std::size_t>(x) - 1]);
    } else {
      r.push_inverse_word(images[static_cast<std::size_t>(-x) - 1]);
    }
  }
  return r;
}

inline std::vector<FreeWord> identity_images(int rank) {
  std::vector<FreeWord> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int i = 1; i <= rank; ++i) images.push_back(FreeWord(rank, {i}));
  return images;
}

/// Uniform reduced word of length exactly len (no cancelling neighbor is ever
/// drawn, so the result has the requested length). Letter choices are
/// enumerated ascending by (index, sign) so the sequence is reproducible from
/// the rng alone.
inline FreeWord random_reduced_word_of_length(CounterRng& rng, int rank, std::size_t len) {
  FreeWord w(rank);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Letter> options;
    options.reserve(static_cast<std::size_t>(2 * rank));
    for (int g = 1; g <= rank; ++g) {
      for (Letter cand : {g, -g}) {
        if (!w.empty() && w.letters().back() == -cand) continue;
        options.push_back(cand);
      }
    }
    w.push(options[static_cast<std::size_t>(rng.below(options.size()))]);
  }
  return w;
}

inline FreeWord random_reduced_word(CounterRng& rng, int rank, std::size_t max_len,
                                    std::size_t min_len = 0) {
  std::size_t len = min_len + static_cast<std::size_t>(rng.below(max_len - min_len + 1));
  return random_reduced_word_of_length(rng, rank, len);
}

/// All reduced words of length <= radius, ordered by (length, lex).
inline std::vector<FreeWord> ball(int rank, int radius) {
  std::vector<FreeWord> out;
  out.push_back(FreeWord(rank));
  std::size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (Letter x : {g, -g}) {
          const FreeWord& w = out[i];
          if (!w.empty() && w.letters().back() == -x) continue;
          FreeWord next = w;
          next.push(x);
          out.push_back(std::move(next));
        }
      }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(level_end), out.end());
    level_begin = level_end;
  }
  return out;
}

}  // namespace fgc
