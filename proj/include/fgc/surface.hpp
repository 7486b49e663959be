#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgc/baumslag.hpp"
#include "fgc/word.hpp"

namespace fgc {

enum class HalfSurface { upper, lower };

struct DecompPiece {
  FreeWord word;
  HalfSurface half = HalfSurface::upper;
};

/// g = b^{k_{l+1}} w'_l b^{k_l} ... b^{k_1} w'_0 b^{k_0}: pieces[i] is w'_i
/// (so pieces are stored right-to-left) and exponents[i] = k_i with
/// exponents.size() == pieces.size() + 1.
struct HalfSurfaceDecomposition {
  std::vector<DecompPiece> pieces;
  std::vector<long long> exponents;
};

struct CertifiedOnset {
  long long onset = 1;
  AffineCertification details;
};

/// The genus-(2r+1) surface group with ordered generators
/// a_1, a_1', ..., a_r, a_r', b, b', c_1, c_1', ..., c_r, c_r' mapped to the
/// indices 1..4r+2, its boundary twists sigma and tau, and the folding map
/// onto the free group of rank 2r+1 with generators x_1, x_1', ..., y'.
class SurfacePresentation {
 public:
  explicit SurfacePresentation(int r) : r_(r) {
    if (r < 1) throw std::invalid_argument("SurfacePresentation: r must be >= 1");
    const int n = num_gens();

    // relator [a_1,a_1']...[a_r,a_r'][b',b][c_r',c_r]...[c_1',c_1]; the
    // c-block runs in reverse so that folding the lower half onto the upper
    // kills the relator for every r.
    FreeWord rel(n);
    for (int i = 1; i <= r_; ++i) rel.push_word(commutator(gen(a(i)), gen(ap(i))));
    rel.push_word(commutator(gen(bp()), gen(b())));
    for (int i = r_; i >= 1; --i) rel.push_word(commutator(gen(cp(i)), gen(c(i))));
    relator_ = rel;

    FreeWord al(n);
    for (int i = 1; i <= r_; ++i) al.push_word(commutator(gen(a(i)), gen(ap(i))));
    al.push(bp());
    alpha_ = al;
    beta_ = gen(bp());

    fold_images_.assign(static_cast<std::size_t>(n), FreeWord(fold_rank()));
    for (int i = 1; i <= r_; ++i) {
      fold_images_[static_cast<std::size_t>(a(i)) - 1] = FreeWord(fold_rank(), {x(i)});
      fold_images_[static_cast<std::size_t>(ap(i)) - 1] = FreeWord(fold_rank(), {xp(i)});
      fold_images_[static_cast<std::size_t>(c(i)) - 1] = FreeWord(fold_rank(), {x(i)});
      fold_images_[static_cast<std::size_t>(cp(i)) - 1] = FreeWord(fold_rank(), {xp(i)});
    }
    fold_images_[static_cast<std::size_t>(b()) - 1] = FreeWord(fold_rank());
    fold_images_[static_cast<std::size_t>(bp()) - 1] = FreeWord(fold_rank(), {yp()});

    y_ = fold(alpha_);

    // Dehn's algorithm table: every cyclic permutation of the relator and of
    // its inverse.
    for (const FreeWord& base : {relator_, invert(relator_)}) {
      const auto& xs = base.letters();
      for (std::size_t s = 0; s < xs.size(); ++s) {
        std::vector<Letter> rot;
        rot.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) rot.push_back(xs[(s + i) % xs.size()]);
        dehn_table_.push_back(rot);
      }
    }
  }

  int r() const { return r_; }
  int genus() const { return 2 * r_ + 1; }
  int num_gens() const { return 4 * r_ + 2; }
  int fold_rank() const { return 2 * r_ + 1; }

  // generator indices in the surface alphabet
  int a(int i) const { return 2 * i - 1; }
  int ap(int i) const { return 2 * i; }
  int b() const { return 2 * r_ + 1; }
  int bp() const { return 2 * r_ + 2; }
  int c(int i) const { return 2 * r_ + 1 + 2 * i; }
  int cp(int i) const { return 2 * r_ + 2 + 2 * i; }

  // generator indices in the fold target
  int x(int i) const { return 2 * i - 1; }
  int xp(int i) const { return 2 * i; }
  int yp() const { return 2 * r_ + 1; }

  FreeWord gen(int index) const { return FreeWord(num_gens(), {index}); }

  const FreeWord& relator() const { return relator_; }
  const FreeWord& alpha() const { return alpha_; }
  const FreeWord& beta() const { return beta_; }
  const FreeWord& y() const { return y_; }
  FreeWord y_prime() const { return FreeWord(fold_rank(), {yp()}); }

  bool is_upper_letter(Letter l) const {
    int g = l > 0 ? l : -l;
    return g <= 2 * r_ || g == bp();
  }
  bool is_b_letter(Letter l) const { return (l > 0 ? l : -l) == b(); }

  FreeWord sigma(const FreeWord& w) const { return apply_hom(sigma_images(), w); }
  FreeWord tau(const FreeWord& w) const { return apply_hom(tau_images(), w); }

  /// delta^n by the closed form: fixes a_i, a_i', b'; b -> alpha^n b beta^-n;
  /// c_i -> alpha^n c_i alpha^-n (likewise c_i').
  FreeWord delta_pow(const FreeWord& w, long long n) const {
    std::vector<FreeWord> images = identity_images(num_gens());
    FreeWord an = pow(alpha_, n);
    FreeWord bn = pow(beta_, -n);
    images[static_cast<std::size_t>(b()) - 1] = concat(concat(an, gen(b())), bn);
    for (int i = 1; i <= r_; ++i) {
      images[static_cast<std::size_t>(c(i)) - 1] = conjugate(gen(c(i)), an);
      images[static_cast<std::size_t>(cp(i)) - 1] = conjugate(gen(cp(i)), an);
    }
    return apply_hom(images, w);
  }

  FreeWord fold(const FreeWord& w) const { return apply_hom(fold_images_, w); }

  FreeWord f_n(const FreeWord& w, long long n) const { return fold(delta_pow(w, n)); }

  /// The twist family evaluated inside the fold target: a_i -> x_i,
  /// a_i' -> x_i', b -> y^n y'^-n, b' -> y', c_i -> y^n x_i y^-n (likewise
  /// c_i').
  FreeWord rho_power_symbolic(const FreeWord& w, long long n) const {
    std::vector<FreeWord> images(static_cast<std::size_t>(num_gens()), FreeWord(fold_rank()));
    FreeWord yn = pow(y_, n);
    for (int i = 1; i <= r_; ++i) {
      images[static_cast<std::size_t>(a(i)) - 1] = FreeWord(fold_rank(), {x(i)});
      images[static_cast<std::size_t>(ap(i)) - 1] = FreeWord(fold_rank(), {xp(i)});
      images[static_cast<std::size_t>(c(i)) - 1] = conjugate(FreeWord(fold_rank(), {x(i)}), yn);
      images[static_cast<std::size_t>(cp(i)) - 1] = conjugate(FreeWord(fold_rank(), {xp(i)}), yn);
    }
    images[static_cast<std::size_t>(b()) - 1] = concat(yn, pow(y_prime(), -n));
    images[static_cast<std::size_t>(bp()) - 1] = y_prime();
    return apply_hom(images, w);
  }

  /// One pass of Dehn's algorithm: repeatedly replace any subword longer than
  /// half the relator by the inverse of its complement, interleaved with free
  /// reduction, until no such subword remains.
  FreeWord dehn_reduce(FreeWord w) const {
    const std::size_t L = relator_.size();
    const std::size_t half = L / 2;  // replace strictly longer than this
    for (;;) {
      bool replaced = false;
      const auto& xs = w.letters();
      for (std::size_t p = 0; p < xs.size() && !replaced; ++p) {
        std::size_t best = 0;
        const std::vector<Letter>* best_t = nullptr;
        for (const auto& t : dehn_table_) {
          std::size_t h = 0;
          while (h < t.size() && p + h < xs.size() && xs[p + h] == t[h]) ++h;
          if (h > half && h > best) {
            best = h;
            best_t = &t;
          }
        }
        if (best_t != nullptr) {
          std::vector<Letter> next(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(p));
          for (std::size_t i = best_t->size(); i > best; --i) next.push_back(-(*best_t)[i - 1]);
          next.insert(next.end(), xs.begin() + static_cast<std::ptrdiff_t>(p + best), xs.end());
          w = FreeWord(num_gens(), next);
          replaced = true;
        }
      }
      if (!replaced) return w;
    }
  }

  /// Word problem: true iff w represents the identity. Valid by small
  /// cancellation for surface relators of genus >= 2 (Greendlinger: a
  /// nonempty freely reduced trivial word contains more than half of some
  /// cyclic permutation of the relator or its inverse).
  bool is_trivial(const FreeWord& w) const { return dehn_reduce(w).empty(); }

  /// Nontrivial elements of Dehn-reduced length <= radius, deduplicated and
  /// sorted by (length, lex). For radius <= cap (default 4) distinct reduced
  /// words of length <= 5 are automatically distinct in the group, since the
  /// shortest nonempty trivial word is the relator itself (length >= 12); the
  /// pairwise audit lives in the tests.
  std::vector<FreeWord> ball_elements(int radius, int cap = 4) const {
    if (radius < 0 || radius > cap) {
      throw std::invalid_argument("ball_elements: radius exceeds the configured cap");
    }
    std::set<FreeWord> seen;
    std::vector<FreeWord> out;
    for (const FreeWord& w : fgc::ball(num_gens(), radius)) {
      if (w.empty()) continue;
      FreeWord canon = dehn_reduce(w);
      if (canon.empty() || canon.size() > static_cast<std::size_t>(radius)) continue;
      if (seen.insert(canon).second) out.push_back(canon);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Greedy half-surface decomposition: maximal b-power runs become the
  /// exponents and maximal single-half runs the pieces; class changes inside
  /// a run split with an implicit zero exponent, so adjacent pieces never
  /// share a half.
  HalfSurfaceDecomposition decompose(const FreeWord& w) const {
    if (w.empty()) throw std::invalid_argument("decompose: trivial word");
    struct Segment {
      bool is_b;
      long long exp;
      FreeWord word;
      HalfSurface half;
    };
    std::vector<Segment> segs;
    for (Letter l : w.letters()) {
      if (is_b_letter(l)) {
        long long s = l > 0 ? 1 : -1;
        if (!segs.empty() && segs.back().is_b) {
          segs.back().exp += s;
        } else {
          segs.push_back({true, s, FreeWord(num_gens()), HalfSurface::upper});
        }
        continue;
      }
      HalfSurface h = is_upper_letter(l) ? HalfSurface::upper : HalfSurface::lower;
      if (!segs.empty() && !segs.back().is_b && segs.back().half == h) {
        segs.back().word.push(l);
      } else {
        Segment s{false, 0, FreeWord(num_gens()), h};
        s.word.push(l);
        segs.push_back(std::move(s));
      }
    }
    // Left-to-right exponents k_{l+1}, ..., k_0 with exactly one entry before
    // each piece (zero at a class-boundary split) and one after the last.
    std::vector<DecompPiece> pieces_ltr;
    std::vector<long long> exps_ltr;
    for (auto& s : segs) {
      if (s.is_b) {
        exps_ltr.push_back(s.exp);
      } else {
        if (exps_ltr.size() == pieces_ltr.size()) exps_ltr.push_back(0);
        pieces_ltr.push_back({std::move(s.word), s.half});
      }
    }
    if (exps_ltr.size() == pieces_ltr.size()) exps_ltr.push_back(0);
    if (exps_ltr.size() != pieces_ltr.size() + 1) {
      throw std::logic_error("decompose: segment bookkeeping failed");
    }
    HalfSurfaceDecomposition out;
    out.pieces.assign(pieces_ltr.rbegin(), pieces_ltr.rend());
    out.exponents.assign(exps_ltr.rbegin(), exps_ltr.rend());
    return out;
  }

  FreeWord recompose(const HalfSurfaceDecomposition& d) const {
    FreeWord w(num_gens());
    const std::size_t l = d.pieces.size();
    w.push_word(pow(gen(b()), d.exponents[l]));
    for (std::size_t i = l; i-- > 0;) {
      w.push_word(d.pieces[i].word);
      w.push_word(pow(gen(b()), d.exponents[i]));
    }
    return w;
  }

  /// Least n0 such that f_m(w) != 1 for all m in [n0, n0+window]; nullopt if
  /// the scan exceeds the cap.
  std::optional<long long> onset_empirical(const FreeWord& w, long long window,
                                           long long cap) const {
    long long last_bad = -1;
    for (long long m = 0; m <= cap + window; ++m) {
      if (f_n(w, m).empty()) last_bad = m;
      if (m - last_bad > window) return last_bad + 1;
    }
    return std::nullopt;
  }

  /// Certified onset: builds the alternating y/y' product of f_n(w) from the
  /// half-surface decomposition and certifies it with the relaxed
  /// generalized-lemma machinery; f_n(w) != 1 for every n >= onset.
  CertifiedOnset onset_certified(const FreeWord& w) const {
    if (is_trivial(w)) throw std::invalid_argument("onset_certified: w is trivial");
    HalfSurfaceDecomposition d = decompose(w);
    std::vector<AffineItem> items;
    auto push_block = [&](long long k) {
      for (long long i = 0; i < (k > 0 ? k : -k); ++i) {
        if (k > 0) {
          items.push_back(affine_power(1, +1, 0));   // y^n
          items.push_back(affine_power(2, -1, 0));   // y'^-n
        } else {
          items.push_back(affine_power(2, +1, 0));   // y'^n
          items.push_back(affine_power(1, -1, 0));   // y^-n
        }
      }
    };
    const std::size_t l = d.pieces.size();
    push_block(d.exponents[l]);
    for (std::size_t i = l; i-- > 0;) {
      bool lower = d.pieces[i].half == HalfSurface::lower;
      if (lower) items.push_back(affine_power(1, +1, 0));
      items.push_back(affine_fixed(fold(d.pieces[i].word)));
      if (lower) items.push_back(affine_power(1, -1, 0));
      push_block(d.exponents[i]);
    }

    std::vector<FreeWord> zs = {y_, y_prime()};
    CertifiedOnset out;
    out.details = certify_affine_product(fold_rank(), zs, items);
    out.onset = std::max<long long>(1, out.details.onset);
    // cross-check the symbolic expansion against the direct twist-and-fold
    for (long long n : {out.onset, out.onset + 1}) {
      if (eval_affine_product(fold_rank(), zs, items, n) != f_n(w, n)) {
        throw std::logic_error("onset_certified: symbolic expansion mismatch");
      }
    }
    return out;
  }

  /// Exponent sums per generator; the relator has zero homology, so a trivial
  /// word must vanish here. Test oracle material.
  std::vector<long long> homology(const FreeWord& w) const {
    std::vector<long long> sums(static_cast<std::size_t>(num_gens()), 0);
    for (Letter l : w.letters()) {
      if (l > 0) {
        ++sums[static_cast<std::size_t>(l) - 1];
      } else {
        --sums[static_cast<std::size_t>(-l) - 1];
      }
    }
    return sums;
  }

 private:
  std::vector<FreeWord> sigma_images() const {
    std::vector<FreeWord> images = identity_images(num_gens());
    images[static_cast<std::size_t>(b()) - 1] = concat(alpha_, gen(b()));
    for (int i = 1; i <= r_; ++i) {
      images[static_cast<std::size_t>(c(i)) - 1] = conjugate(gen(c(i)), alpha_);
      images[static_cast<std::size_t>(cp(i)) - 1] = conjugate(gen(cp(i)), alpha_);
    }
    return images;
  }
  std::vector<FreeWord> tau_images() const {
    std::vector<FreeWord> images = identity_images(num_gens());
    images[static_cast<std::size_t>(b()) - 1] = concat(gen(b()), invert(beta_));
    return images;
  }

  int r_;
  FreeWord relator_{1};
  FreeWord alpha_{1};
  FreeWord beta_{1};
  FreeWord y_{1};
  std::vector<FreeWord> fold_images_;
  std::vector<std::vector<Letter>> dehn_table_;
};

inline SurfacePresentation make_presentation(int r) { return SurfacePresentation(r); }

}  // namespace fgc
