#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fgc {

// ---------------------------------------------------------------------------
// SL2 over Z/p^k
// ---------------------------------------------------------------------------

struct Mat2ModPk {
  std::uint64_t a = 1, b = 0, c = 0, d = 1;  // row-major

  friend bool operator==(const Mat2ModPk& x, const Mat2ModPk& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const Mat2ModPk& x, const Mat2ModPk& y) { return !(x == y); }
  friend bool operator<(const Mat2ModPk& x, const Mat2ModPk& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }
};

struct Mat2ModPkHash {
  std::size_t operator()(const Mat2ModPk& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint64_t v : {m.a, m.b, m.c, m.d}) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

namespace detail {

inline long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/// All x mod m with a*x == b (mod m).
inline std::vector<std::uint64_t> solve_linear_mod(std::uint64_t a, std::uint64_t b,
                                                   std::uint64_t m) {
  long long x, y;
  long long g = egcd(static_cast<long long>(a % m), static_cast<long long>(m), x, y);
  if (g == 0) g = static_cast<long long>(m);
  std::vector<std::uint64_t> out;
  if (b % static_cast<std::uint64_t>(g) != 0) return out;
  std::uint64_t step = m / static_cast<std::uint64_t>(g);
  long long x0 = (x % static_cast<long long>(m) + static_cast<long long>(m)) %
                 static_cast<long long>(m);
  std::uint64_t base =
      (static_cast<std::uint64_t>(x0) * ((b / static_cast<std::uint64_t>(g)) % m)) % m;
  base %= step;
  for (std::uint64_t t = base; t < m; t += step) out.push_back(t);
  return out;
}

}  // namespace detail

/// Group context for SL2(Z/p^k): exact modular arithmetic on determinant-one
/// matrices, with full enumeration when the group order stays under the cap.
class Sl2ModPk {
 public:
  using Elem = Mat2ModPk;

  Sl2ModPk(long long p, int k, std::uint64_t modulus_cap = 625,
           std::uint64_t enumeration_cap = 200000)
      : p_(p), k_(k), enumeration_cap_(enumeration_cap) {
    if (p < 2) throw std::invalid_argument("Sl2ModPk: p must be prime");
    for (long long q = 2; q * q <= p; ++q) {
      if (p % q == 0) throw std::invalid_argument("Sl2ModPk: p = " + std::to_string(p) +
                                                  " is not prime");
    }
    if (k < 1) throw std::invalid_argument("Sl2ModPk: k must be positive");
    std::uint64_t m = 1;
    for (int i = 0; i < k; ++i) {
      m *= static_cast<std::uint64_t>(p);
      if (m > modulus_cap) {
        throw std::invalid_argument("Sl2ModPk: p^k exceeds the modulus cap " +
                                    std::to_string(modulus_cap));
      }
    }
    m_ = m;
  }

  long long p() const { return p_; }
  int k() const { return k_; }
  std::uint64_t modulus() const { return m_; }

  /// p^{3k-2} (p^2 - 1)
  std::uint64_t order() const {
    std::uint64_t o = static_cast<std::uint64_t>(p_) * static_cast<std::uint64_t>(p_) - 1;
    for (int i = 0; i < 3 * k_ - 2; ++i) o *= static_cast<std::uint64_t>(p_);
    return o;
  }

  Elem identity() const { return {1 % m_, 0, 0, 1 % m_}; }

  Elem make(long long a, long long b, long long c, long long d) const {
    Elem e{red(a), red(b), red(c), red(d)};
    if (det(e) != 1 % m_) {
      throw std::invalid_argument("Sl2ModPk: determinant is not 1 mod " + std::to_string(m_));
    }
    return e;
  }

  std::uint64_t det(const Elem& e) const {
    return ((e.a * e.d) % m_ + m_ - (e.b * e.c) % m_) % m_;
  }

  Elem mul(const Elem& x, const Elem& y) const {
    return {(x.a * y.a + x.b * y.c) % m_, (x.a * y.b + x.b * y.d) % m_,
            (x.c * y.a + x.d * y.c) % m_, (x.c * y.b + x.d * y.d) % m_};
  }

  Elem inv(const Elem& x) const { return {x.d, (m_ - x.b) % m_, (m_ - x.c) % m_, x.a}; }

  bool commute(const Elem& x, const Elem& y) const { return mul(x, y) == mul(y, x); }

  bool is_scalar_mod_p(const Elem& x) const {
    return x.b % static_cast<std::uint64_t>(p_) == 0 &&
           x.c % static_cast<std::uint64_t>(p_) == 0 &&
           (x.a + static_cast<std::uint64_t>(p_) - x.d % static_cast<std::uint64_t>(p_)) %
                   static_cast<std::uint64_t>(p_) ==
               0;
  }

  /// Deterministic full enumeration (lexicographic in (a, b, c, d)).
  const std::vector<Elem>& enumerate() const {
    if (!elements_.empty()) return elements_;
    if (order() > enumeration_cap_) {
      throw std::runtime_error("Sl2ModPk: order " + std::to_string(order()) +
                               " exceeds the enumeration cap");
    }
    for (std::uint64_t a = 0; a < m_; ++a) {
      for (std::uint64_t b = 0; b < m_; ++b) {
        for (std::uint64_t c = 0; c < m_; ++c) {
          std::uint64_t rhs = (1 + b * c) % m_;
          for (std::uint64_t d : detail::solve_linear_mod(a, rhs, m_)) {
            elements_.push_back({a, b, c, d});
          }
        }
      }
    }
    return elements_;
  }

 private:
  std::uint64_t red(long long v) const {
    long long m = static_cast<long long>(m_);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
  }

  long long p_;
  int k_;
  std::uint64_t m_ = 1;
  std::uint64_t enumeration_cap_;
  mutable std::vector<Elem> elements_;
};

// ---------------------------------------------------------------------------
// SL2 over exact integers
// ---------------------------------------------------------------------------

struct Mat2Int {
  mpz_class a = 1, b = 0, c = 0, d = 1;

  friend bool operator==(const Mat2Int& x, const Mat2Int& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const Mat2Int& x, const Mat2Int& y) { return !(x == y); }
};

/// Group context for SL2(Z) with exact big-integer arithmetic.
class Sl2Int {
 public:
  using Elem = Mat2Int;

  Elem identity() const { return {}; }

  Elem make(const mpz_class& a, const mpz_class& b, const mpz_class& c,
            const mpz_class& d) const {
    if (a * d - b * c != 1) throw std::invalid_argument("Sl2Int: determinant is not 1");
    return {a, b, c, d};
  }

  Elem mul(const Elem& x, const Elem& y) const {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }

  Elem inv(const Elem& x) const { return {x.d, -x.b, -x.c, x.a}; }

  bool commute(const Elem& x, const Elem& y) const { return mul(x, y) == mul(y, x); }
};

/// True iff no nontrivial reduced word of length <= max_len in A, B evaluates
/// to the identity (exact arithmetic). Monotone in max_len by construction.
inline bool free_pair_check(const Mat2Int& A, const Mat2Int& B, int max_len) {
  Sl2Int g;
  if (A.a * A.d - A.b * A.c != 1 || B.a * B.d - B.b * B.c != 1) {
    throw std::invalid_argument("free_pair_check: determinants must be 1");
  }
  // letters 0..3 = A, A^-1, B, B^-1; letter i cancels letter i^1
  const Mat2Int gens[4] = {A, g.inv(A), B, g.inv(B)};
  bool ok = true;
  std::function<void(const Mat2Int&, int, int)> rec = [&](const Mat2Int& m, int last, int len) {
    if (!ok) return;
    if (m == g.identity()) {
      ok = false;
      return;
    }
    if (len == max_len) return;
    for (int i = 0; i < 4 && ok; ++i) {
      if (i == (last ^ 1)) continue;
      rec(g.mul(m, gens[i]), i, len + 1);
    }
  };
  for (int i = 0; i < 4 && ok; ++i) rec(gens[i], i, 1);
  return ok;
}

}  // namespace fgc
