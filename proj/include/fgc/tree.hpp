#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgc/word.hpp"
#include "fgc/word_text.hpp"

namespace fgc {

/// Axis of a hyperbolic element w = conjugator * core * conjugator^-1. The
/// axis vertices are conjugator * (prefixes of core^inf and core^-inf); the
/// translation length is |core|. Axes are kept symbolic; vertex enumeration
/// happens only inside axis_overlap and tests.
struct AxisDesc {
  FreeWord conjugator;
  FreeWord core;  // cyclically reduced, nonempty

  long long translation_length() const { return static_cast<long long>(core.size()); }
};

inline AxisDesc axis_of(const FreeWord& w) {
  if (w.empty()) throw std::invalid_argument("axis_of: trivial word");
  CyclicDecomp d = cyclic_decompose(w);
  return {std::move(d.conjugator), std::move(d.core)};
}

/// Eventually periodic boundary ray prefix * period^inf, normalized to the
/// shortest prefix and primitive period. Normalized values are canonical:
/// two rays are the same boundary point iff they compare equal.
class BoundaryRay {
 public:
  BoundaryRay(FreeWord prefix, FreeWord period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("BoundaryRay: empty period");
    if (prefix_.rank() != period_.rank()) throw std::invalid_argument("BoundaryRay: rank mismatch");
    if (!cyclically_reduced(period_)) {
      throw std::invalid_argument("BoundaryRay: period not cyclically reduced");
    }
    if (!prefix_.empty() && prefix_.letters().back() == -period_.letters().front()) {
      throw std::invalid_argument("BoundaryRay: cancellation at prefix/period junction");
    }
    normalize();
  }

  const FreeWord& prefix() const { return prefix_; }
  const FreeWord& period() const { return period_; }
  int rank() const { return period_.rank(); }

  /// i-th letter (0-based) of the infinite reduced word.
  Letter at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  FreeWord vertex(std::size_t depth) const {
    FreeWord v(rank());
    for (std::size_t i = 0; i < depth; ++i) v.push(at(i));
    return v;
  }

  friend bool operator==(const BoundaryRay& a, const BoundaryRay& b) {
    return a.prefix_ == b.prefix_ && a.period_ == b.period_;
  }
  friend bool operator!=(const BoundaryRay& a, const BoundaryRay& b) { return !(a == b); }

 private:
  void normalize() {
    // Primitive period: smallest rotation period of the cyclic word.
    const auto& c = period_.letters();
    const std::size_t n = c.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0) continue;
      bool ok = true;
      for (std::size_t t = 0; t + p < n && ok; ++t) ok = (c[t] == c[t + p]);
      if (ok) {
        FreeWord q(period_.rank());
        for (std::size_t t = 0; t < p; ++t) q.push(c[t]);
        period_ = std::move(q);
        break;
      }
    }
    // Shortest prefix: absorb trailing prefix letters that agree with the
    // periodic tail by rotating the period right.
    while (!prefix_.empty() && prefix_.letters().back() == period_.letters().back()) {
      Letter moved = period_.letters().back();
      std::vector<Letter> rot;
      rot.reserve(period_.size());
      rot.push_back(moved);
      for (std::size_t i = 0; i + 1 < period_.size(); ++i) rot.push_back(period_[i]);
      period_ = FreeWord(period_.rank(), rot);
      std::vector<Letter> shorter(prefix_.letters().begin(), prefix_.letters().end() - 1);
      prefix_ = FreeWord(prefix_.rank(), shorter);
    }
  }

  FreeWord prefix_;
  FreeWord period_;
};

struct Endpoints {
  BoundaryRay plus;
  BoundaryRay minus;
};

/// plus is the limit of w^n, minus of w^-n.
inline Endpoints endpoints(const FreeWord& w) {
  AxisDesc ax = axis_of(w);
  return {BoundaryRay(ax.conjugator, ax.core), BoundaryRay(ax.conjugator, invert(ax.core))};
}

/// Left action of g on the boundary: the normalized form of g * r.
inline BoundaryRay translate_ray(const FreeWord& g, const BoundaryRay& r) {
  if (g.rank() != r.rank()) throw std::invalid_argument("translate_ray: rank mismatch");
  FreeWord head = concat(g, r.prefix());
  const FreeWord& q = r.period();
  std::size_t j = 0;
  while (!head.empty() && head.letters().back() == -q[j]) {
    std::vector<Letter> shorter(head.letters().begin(), head.letters().end() - 1);
    head = FreeWord(head.rank(), shorter);
    j = (j + 1) % q.size();
  }
  std::vector<Letter> rot;
  rot.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) rot.push_back(q[(j + i) % q.size()]);
  return BoundaryRay(std::move(head), FreeWord(q.rank(), rot));
}

/// Depth of the common prefix of two distinct rays (the branch vertex depth).
inline std::size_t ray_lcp(const BoundaryRay& a, const BoundaryRay& b) {
  if (a == b) throw std::invalid_argument("ray_lcp: rays coincide");
  std::size_t cap = a.prefix().size() + b.prefix().size() +
                    a.period().size() * b.period().size() + 2;
  for (std::size_t i = 0; i < cap; ++i) {
    if (a.at(i) != b.at(i)) return i;
  }
  throw std::logic_error("ray_lcp: distinct normalized rays agree beyond the periodicity bound");
}

namespace detail {

/// Signed parameter of v on the axis, if v lies on it: +d means v is the
/// depth-d vertex toward core^inf, -d toward core^-inf.
inline std::optional<long long> axis_coordinate(const AxisDesc& ax, const FreeWord& v) {
  FreeWord x = concat(invert(ax.conjugator), v);
  if (x.empty()) return 0;
  const auto& c = ax.core.letters();
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < x.size() && (plus || minus); ++i) {
    if (plus && x[i] != c[i % c.size()]) plus = false;
    if (minus && x[i] != -c[c.size() - 1 - (i % c.size())]) minus = false;
  }
  if (plus) return static_cast<long long>(x.size());
  if (minus) return -static_cast<long long>(x.size());
  return std::nullopt;
}

inline FreeWord axis_vertex(const AxisDesc& ax, long long t) {
  FreeWord v = ax.conjugator;
  const auto& c = ax.core.letters();
  if (t >= 0) {
    for (long long i = 0; i < t; ++i) v.push(c[static_cast<std::size_t>(i) % c.size()]);
  } else {
    for (long long i = 0; i < -t; ++i) {
      v.push(-c[c.size() - 1 - (static_cast<std::size_t>(i) % c.size())]);
    }
  }
  return v;
}

/// Parameter of the vertex of the axis closest to the basepoint. The distance
/// to the basepoint changes by exactly 1 per step along the axis and is
/// convex, so a local walk finds the projection.
inline long long basepoint_projection(const AxisDesc& ax) {
  auto dist = [&](long long t) {
    return static_cast<long long>(axis_vertex(ax, t).size());
  };
  long long t = 0;
  long long here = dist(0);
  long long dir = 0;
  if (dist(1) < here) {
    dir = 1;
  } else if (dist(-1) < here) {
    dir = -1;
  } else {
    return 0;
  }
  for (;;) {
    long long next = dist(t + dir);
    if (next >= here) return t;
    t += dir;
    here = next;
  }
}

}  // namespace detail

struct Overlap {
  bool infinite = false;
  long long edges = 0;  // meaningful when finite

  static Overlap make_infinite() { return {true, 0}; }
  static Overlap finite(long long e) { return {false, e}; }

  friend bool operator==(const Overlap& a, const Overlap& b) {
    return a.infinite == b.infinite && (a.infinite || a.edges == b.edges);
  }
};

/// Exact edge length of axis(a) cap axis(b); Infinite iff the axes coincide
/// as vertex sets, which happens iff a and b commute. For the finite case the
/// common part of two geodesics in a tree is connected, so once both ends of
/// the walk leave the other axis the intersection is complete. The walk is
/// anchored at a certified common vertex first: when the intersection is
/// nonempty it contains the basepoint projection of one of the two axes.
inline Overlap axis_overlap(const FreeWord& a, const FreeWord& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("axis_overlap: trivial word");
  if (commutes(a, b)) return Overlap::make_infinite();

  AxisDesc A = axis_of(a), B = axis_of(b);
  FreeWord pa = detail::axis_vertex(A, detail::basepoint_projection(A));
  FreeWord pb = detail::axis_vertex(B, detail::basepoint_projection(B));

  long long anchor;
  if (detail::axis_coordinate(B, pa).has_value()) {
    anchor = *detail::axis_coordinate(A, pa);
  } else if (detail::axis_coordinate(A, pb).has_value()) {
    anchor = *detail::axis_coordinate(A, pb);
  } else {
    return Overlap::finite(0);
  }

  // Distinct axes overlap in less than the sum of the translation lengths.
  const long long cap = static_cast<long long>(A.core.size() + B.core.size()) + 4;
  long long hi = anchor;
  while (hi - anchor <= cap &&
         detail::axis_coordinate(B, detail::axis_vertex(A, hi + 1)).has_value()) {
    ++hi;
  }
  long long lo = anchor;
  while (anchor - lo <= cap &&
         detail::axis_coordinate(B, detail::axis_vertex(A, lo - 1)).has_value()) {
    --lo;
  }
  if (hi - anchor > cap || anchor - lo > cap) {
    throw std::logic_error("axis_overlap: overlap exceeds the commutation bound");
  }
  return Overlap::finite(hi - lo);
}

/// Basic open subset of the boundary: all rays through the directed edge
/// (base, base*dir). Equivalently, all infinite reduced words starting with
/// base*dir. The inward choice dir == -last(base) denotes a complement-type
/// set, not a prefix set, and is rejected.
class Cylinder {
 public:
  Cylinder(FreeWord base, Letter dir) : base_(std::move(base)), dir_(dir) {
    if (dir == 0 || dir > base_.rank() || dir < -base_.rank()) {
      throw std::invalid_argument("Cylinder: bad direction letter");
    }
    if (!base_.empty() && base_.letters().back() == -dir) {
      throw std::invalid_argument("Cylinder: inward direction is not a basic cylinder");
    }
  }

  const FreeWord& base() const { return base_; }
  Letter dir() const { return dir_; }
  int rank() const { return base_.rank(); }

  /// base * dir as one reduced word; nonempty, determines the set.
  FreeWord word() const {
    FreeWord w = base_;
    w.push(dir_);
    return w;
  }

  std::size_t depth() const { return base_.size() + 1; }

  friend bool operator==(const Cylinder& a, const Cylinder& b) {
    return a.base_ == b.base_ && a.dir_ == b.dir_;
  }
  friend bool operator!=(const Cylinder& a, const Cylinder& b) { return !(a == b); }

 private:
  FreeWord base_;
  Letter dir_;
};

/// Cylinder whose word is the first `depth` letters of the ray.
inline Cylinder cylinder_around(const BoundaryRay& r, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("cylinder_around: depth must be positive");
  return Cylinder(r.vertex(depth - 1), r.at(depth - 1));
}

inline bool cylinder_contains(const Cylinder& c, const BoundaryRay& r) {
  FreeWord w = c.word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (r.at(i) != w[i]) return false;
  }
  return true;
}

inline bool is_prefix(const FreeWord& p, const FreeWord& w) {
  if (p.size() > w.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != w[i]) return false;
  }
  return true;
}

/// c1 subset of c2 iff word(c2) is a prefix of word(c1).
inline bool cylinder_subset(const Cylinder& c1, const Cylinder& c2) {
  return is_prefix(c2.word(), c1.word());
}

/// Two basic cylinders are either nested or disjoint.
inline bool cylinder_disjoint(const Cylinder& c1, const Cylinder& c2) {
  FreeWord w1 = c1.word(), w2 = c2.word();
  return !is_prefix(w1, w2) && !is_prefix(w2, w1);
}

/// Exact image g * C. The image of a basic cylinder is again basic unless g
/// cancels the whole cylinder word (the directed edge turns inward); that
/// degenerate case is rejected.
inline Cylinder cylinder_image(const FreeWord& g, const Cylinder& c) {
  if (g.rank() != c.rank()) throw std::invalid_argument("cylinder_image: rank mismatch");
  FreeWord w = c.word();
  FreeWord s = concat(g, w);
  std::size_t cancelled = (g.size() + w.size() - s.size()) / 2;
  if (cancelled >= w.size()) {
    throw std::invalid_argument("cylinder_image: degenerate image (cylinder word cancelled)");
  }
  std::vector<Letter> base(s.letters().begin(), s.letters().end() - 1);
  return Cylinder(FreeWord(s.rank(), base), s.letters().back());
}

/// The complement of a cylinder as a disjoint union of basic cylinders: one
/// bundle of deviations at every depth along the cylinder word.
inline std::vector<Cylinder> cylinder_complement(const Cylinder& c) {
  const FreeWord w = c.word();
  const int rank = c.rank();
  std::vector<Cylinder> pieces;
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::vector<Letter> base(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
    for (int g = 1; g <= rank; ++g) {
      for (Letter x : {static_cast<Letter>(g), static_cast<Letter>(-g)}) {
        if (x == w[k]) continue;
        if (k > 0 && x == -w[k - 1]) continue;
        pieces.emplace_back(FreeWord(rank, base), x);
      }
    }
  }
  return pieces;
}

inline std::string to_string(const BoundaryRay& r) {
  return print_word(r.prefix()) + "|(" + print_word(r.period()) + ")^inf";
}

inline std::string to_string(const Cylinder& c) {
  return "Cyl(" + print_word(c.base()) + "; " + print_word(FreeWord(c.rank(), {c.dir()})) + ")";
}

}  // namespace fgc
