#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgc/surface.hpp"
#include "fgc/word.hpp"

namespace fgc {

enum class DoubleKind { amalgam, hnn };

/// A single-edge generalized double with cyclic edge group: an amalgam
/// F_n *_{<c>=<cbar>} F_n (second-copy generators are the indices n+1..2n) or
/// an HNN extension F_n *_<c> with stable letter t = index n+1 and attachment
/// t c t^-1 = alpha_c. fold_images is the retraction onto F_n.
struct DoubleSpec {
  DoubleKind kind = DoubleKind::amalgam;
  int vertex_rank = 2;
  FreeWord edge{1};          // c, in F_n
  FreeWord mirror{1};        // amalgam: cbar in the second copy's own coordinates
  FreeWord stable_image{1};  // hnn: alpha(c) in F_n
  std::vector<FreeWord> fold_images;

  int total_gens() const {
    return kind == DoubleKind::amalgam ? 2 * vertex_rank : vertex_rank + 1;
  }
};

inline FreeWord embed_first(const DoubleSpec& spec, const FreeWord& w) {
  FreeWord out(spec.total_gens());
  for (Letter l : w.letters()) out.push(l);
  return out;
}

inline FreeWord embed_second(const DoubleSpec& spec, const FreeWord& w) {
  if (spec.kind != DoubleKind::amalgam) {
    throw std::invalid_argument("embed_second: not an amalgam");
  }
  FreeWord out(spec.total_gens());
  for (Letter l : w.letters()) {
    out.push(l > 0 ? l + spec.vertex_rank : l - spec.vertex_rank);
  }
  return out;
}

/// Defining relator: c cbar^-1 for the amalgam, t c t^-1 alpha(c)^-1 for the
/// HNN extension.
inline FreeWord double_relator(const DoubleSpec& spec) {
  if (spec.kind == DoubleKind::amalgam) {
    return concat(embed_first(spec, spec.edge), invert(embed_second(spec, spec.mirror)));
  }
  FreeWord t(spec.total_gens(), {spec.vertex_rank + 1});
  FreeWord rel = conjugate(embed_first(spec, spec.edge), t);
  rel.push_inverse_word(embed_first(spec, spec.stable_image));
  return rel;
}

/// The double of F_n along a maximal cyclic subgroup <c>: c must not be a
/// proper power, which makes <c> maximal abelian. The folding map sends both
/// copies' generators to the same images.
inline DoubleSpec double_of_free(int n, const FreeWord& c) {
  if (c.rank() != n) throw std::invalid_argument("double_of_free: edge word rank mismatch");
  if (c.empty()) throw std::invalid_argument("double_of_free: trivial edge word");
  PrimitiveRoot pr = primitive_root(c);
  if (pr.exponent != 1) {
    throw std::invalid_argument("double_of_free: edge word is a proper power of " +
                                print_word(pr.root));
  }
  DoubleSpec spec;
  spec.kind = DoubleKind::amalgam;
  spec.vertex_rank = n;
  spec.edge = c;
  spec.mirror = c;
  spec.fold_images.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) spec.fold_images.push_back(FreeWord(n, {i}));
  for (int i = 1; i <= n; ++i) spec.fold_images.push_back(FreeWord(n, {i}));
  return spec;
}

/// Generator images of fold . tau_c^m. The twist fixes the first vertex and
/// conjugates the second copy (translates the stable letter), so the second
/// copy lands on c^-m fold(g) c^m and the stable letter on c^-m fold(t).
inline std::vector<FreeWord> twist_then_fold(const DoubleSpec& spec, long long m) {
  const int n = spec.vertex_rank;
  FreeWord cm = pow(apply_hom(std::vector<FreeWord>(spec.fold_images.begin(),
                                                    spec.fold_images.begin() + n),
                              spec.edge),
                    m);
  std::vector<FreeWord> images;
  images.reserve(spec.fold_images.size());
  for (int i = 0; i < n; ++i) images.push_back(spec.fold_images[static_cast<std::size_t>(i)]);
  if (spec.kind == DoubleKind::amalgam) {
    for (int i = n; i < 2 * n; ++i) {
      images.push_back(conjugate(spec.fold_images[static_cast<std::size_t>(i)], invert(cm)));
    }
  } else {
    FreeWord t_img = invert(cm);
    t_img.push_word(spec.fold_images[static_cast<std::size_t>(n)]);
    images.push_back(t_img);
  }
  return images;
}

/// Alternating syllable form of an amalgam element; syllable words live in
/// the vertex copy's own F_n coordinates.
struct Syllable {
  bool second_copy = false;
  FreeWord word{1};
};
struct AmalgamNormalForm {
  std::vector<Syllable> syllables;
};

inline FreeWord normal_form_word(const DoubleSpec& spec, const AmalgamNormalForm& form) {
  FreeWord out(spec.total_gens());
  for (const auto& s : form.syllables) {
    out.push_word(s.second_copy ? embed_second(spec, s.word) : embed_first(spec, s.word));
  }
  return out;
}

/// Reduced alternating forms with at most syllable_cap syllables and total
/// letter length at most length_cap. Single syllables are any nontrivial
/// vertex words (second-copy edge powers are skipped as duplicates of the
/// first copy); in longer forms no syllable lies in the edge subgroup, which
/// proves nontriviality by the reduced-form criterion.
inline std::vector<AmalgamNormalForm> enumerate_reduced(const DoubleSpec& spec, int syllable_cap,
                                                        int length_cap) {
  if (spec.kind != DoubleKind::amalgam) {
    throw std::invalid_argument("enumerate_reduced: amalgam doubles only");
  }
  if (syllable_cap < 1 || syllable_cap > 4 || length_cap < 1 || length_cap > 8) {
    throw std::invalid_argument("enumerate_reduced: caps out of range");
  }
  std::vector<FreeWord> vertex_words;  // nontrivial, by (length, lex)
  for (const FreeWord& w : ball(spec.vertex_rank, length_cap)) {
    if (!w.empty()) vertex_words.push_back(w);
  }

  std::vector<AmalgamNormalForm> out;
  // single syllables
  for (int copy = 0; copy < 2; ++copy) {
    for (const FreeWord& w : vertex_words) {
      if (copy == 1 && is_power_of(w, spec.edge)) continue;
      out.push_back({{Syllable{copy == 1, w}}});
    }
  }
  // longer alternating forms, no syllable in <c> (resp. <cbar>)
  std::vector<const FreeWord*> non_edge;
  for (const FreeWord& w : vertex_words) {
    if (!is_power_of(w, spec.edge)) non_edge.push_back(&w);
  }
  for (int count = 2; count <= syllable_cap; ++count) {
    for (int first_copy = 0; first_copy < 2; ++first_copy) {
      AmalgamNormalForm form;
      form.syllables.resize(static_cast<std::size_t>(count));
      std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == count) {
          out.push_back(form);
          return;
        }
        bool second = ((pos % 2 == 0) == (first_copy == 1));
        for (const FreeWord* w : non_edge) {
          if (static_cast<int>((*w).size()) > remaining - (count - pos - 1)) break;
          form.syllables[static_cast<std::size_t>(pos)] = Syllable{second, *w};
          rec(pos + 1, remaining - static_cast<int>((*w).size()));
        }
      };
      rec(0, length_cap);
    }
  }
  return out;
}

/// Least family index m <= cap such that the homomorphism with images
/// family(m') kills w for no m' in [m, m+window].
inline std::optional<long long> family_onset(
    const std::function<std::vector<FreeWord>(long long)>& family, const FreeWord& w,
    long long window, long long cap) {
  long long last_bad = -1;
  for (long long m = 0; m <= cap + window; ++m) {
    if (apply_hom(family(m), w).empty()) last_bad = m;
    if (m - last_bad > window) return last_bad + 1;
  }
  return std::nullopt;
}

/// Least index m <= budget whose homomorphism kills none of the elements.
inline std::optional<long long> separate_set(
    const std::function<std::vector<FreeWord>(long long)>& family,
    const std::vector<FreeWord>& elements, long long budget) {
  for (long long m = 0; m <= budget; ++m) {
    std::vector<FreeWord> images = family(m);
    bool clean = true;
    for (const FreeWord& e : elements) {
      if (apply_hom(images, e).empty()) {
        clean = false;
        break;
      }
    }
    if (clean) return m;
  }
  return std::nullopt;
}

/// The family m -> (F_{n+1} -> F_n) fixing F_n and sending x_{n+1} to
/// a^m b a^-m; eventually faithful when b does not commute with a.
struct RankExtension {
  int n = 2;
  FreeWord a{1};
  FreeWord b{1};

  std::vector<FreeWord> images(long long m) const {
    std::vector<FreeWord> out = identity_images(n);
    out.push_back(conjugate(b, pow(a, m)));
    return out;
  }
};

inline RankExtension extend_rank(int n, const FreeWord& a, const FreeWord& b) {
  if (a.rank() != n || b.rank() != n) throw std::invalid_argument("extend_rank: rank mismatch");
  if (a.empty()) throw std::invalid_argument("extend_rank: a is trivial");
  if (commutes(a, b)) {
    throw std::invalid_argument("extend_rank: b commutes with a (b = " + print_word(b) + ")");
  }
  return RankExtension{n, a, b};
}

// ---------------------------------------------------------------------------
// Catalog of construction sequences and the d invariant
// ---------------------------------------------------------------------------

/// One collapse step of a construction sequence: a presentation whose
/// relators die under the given retraction onto a free group.
struct ConstructionStep {
  std::string kind;  // "amalgam-double" or "surface-fold"
  int source_gens = 0;
  std::vector<FreeWord> relators;
  std::vector<FreeWord> images;
  int target_rank = 0;
};

struct CatalogEntry {
  std::string name;
  std::string presentation;
  int d_lower_bound = 2;
  std::vector<ConstructionStep> witness;
  std::string note;
};

inline bool replay_step(const ConstructionStep& step) {
  if (static_cast<int>(step.images.size()) != step.source_gens) return false;
  for (const FreeWord& im : step.images) {
    if (im.rank() != step.target_rank) return false;
  }
  for (const FreeWord& rel : step.relators) {
    if (rel.rank() != step.source_gens) return false;
    if (!apply_hom(step.images, rel).empty()) return false;
  }
  return true;
}

/// Replays the witness: every step folds its relators onto the identity and
/// the final target is free of rank d.
inline bool replay_witness(const CatalogEntry& entry) {
  for (const ConstructionStep& step : entry.witness) {
    if (!replay_step(step)) return false;
  }
  if (entry.witness.empty()) return true;
  return entry.witness.back().target_rank == entry.d_lower_bound;
}

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  for (int n = 2; n <= 4; ++n) {
    CatalogEntry e;
    e.name = "F_" + std::to_string(n);
    e.presentation = "free group of rank " + std::to_string(n);
    e.d_lower_bound = n;
    e.note = "already free; the empty sequence ends here, d is exact";
    out.push_back(std::move(e));
  }
  for (int r = 1; r <= 3; ++r) {
    SurfacePresentation p(r);
    CatalogEntry e;
    e.name = "Sigma_" + std::to_string(p.genus());
    e.presentation = "closed orientable surface group of genus " + std::to_string(p.genus());
    e.d_lower_bound = p.genus();
    ConstructionStep step;
    step.kind = "surface-fold";
    step.source_gens = p.num_gens();
    step.relators = {p.relator()};
    std::vector<FreeWord> images;
    for (int g = 1; g <= p.num_gens(); ++g) images.push_back(p.fold(p.gen(g)));
    step.images = std::move(images);
    step.target_rank = p.fold_rank();
    e.witness = {std::move(step)};
    e.note = "d(Sigma_g) = g exactly; the stored witness is the two-curve half-surface fold";
    out.push_back(std::move(e));
  }
  {
    FreeWord c = commutator(FreeWord(2, {1}), FreeWord(2, {2}));
    DoubleSpec spec = double_of_free(2, c);
    CatalogEntry e;
    e.name = "double_F2_comm";
    e.presentation = "F_2 *_{<[x1,x2]>} F_2, mirrored edge";
    e.d_lower_bound = 2;
    ConstructionStep step;
    step.kind = "amalgam-double";
    step.source_gens = spec.total_gens();
    step.relators = {double_relator(spec)};
    step.images = spec.fold_images;
    step.target_rank = 2;
    e.witness = {std::move(step)};
    e.note = "lower bound from the one-step double; tightness not computed";
    out.push_back(std::move(e));
  }
  return out;
}

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

inline int catalog_d(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return e.d_lower_bound;
  }
  throw std::invalid_argument("catalog_d: unknown entry \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// F_2 x F_2 is not fully residually free
// ---------------------------------------------------------------------------

/// Enumerates all generator-image quadruples (A,B,C,D) of length <= cap
/// satisfying the direct-product commutations [A,C]=[A,D]=[B,C]=[B,D]=1 and
/// feeds each induced homomorphism F_2 x F_2 -> F_2 to the callback as the
/// image tuple of (w,1), (w',1), ([w,w'],1), (1,w).
inline void for_each_f2xf2_assignment(
    const FreeWord& w, const FreeWord& wp, int cap,
    const std::function<void(const FreeWord&, const FreeWord&, const FreeWord&, const FreeWord&)>&
        fn) {
  std::vector<FreeWord> words = ball(2, cap);
  const std::size_t n = words.size();
  std::vector<std::vector<bool>> comm(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      bool c = commutes(words[i], words[j]);
      comm[i][j] = c;
      comm[j][i] = c;
    }
  }
  FreeWord comm_w = commutator(w, wp);
  for (std::size_t ia = 0; ia < n; ++ia) {
    for (std::size_t ib = 0; ib < n; ++ib) {
      std::vector<FreeWord> left = {words[ia], words[ib]};
      FreeWord im_w = apply_hom(left, w);
      FreeWord im_wp = apply_hom(left, wp);
      FreeWord im_comm = apply_hom(left, comm_w);
      std::vector<std::size_t> cs;
      for (std::size_t ic = 0; ic < n; ++ic) {
        if (comm[ia][ic] && comm[ib][ic]) cs.push_back(ic);
      }
      for (std::size_t ic : cs) {
        for (std::size_t id : cs) {
          std::vector<FreeWord> right = {words[ic], words[id]};
          fn(im_w, im_wp, im_comm, apply_hom(right, w));
        }
      }
    }
  }
}

/// True iff every commutation-constrained image assignment with generator
/// images of length <= cap kills one of (w,1), (w',1), ([w,w'],1), (1,w).
inline bool f2xf2_nonseparable(const FreeWord& w, const FreeWord& wp, int cap) {
  if (w.rank() != 2 || wp.rank() != 2) {
    throw std::invalid_argument("f2xf2_nonseparable: rank-2 words required");
  }
  if (commutes(w, wp)) {
    throw std::invalid_argument("f2xf2_nonseparable: w and w' must not commute");
  }
  bool all_collapse = true;
  for_each_f2xf2_assignment(w, wp, cap,
                            [&](const FreeWord& iw, const FreeWord& iwp, const FreeWord& icomm,
                                const FreeWord& iright) {
                              if (!iw.empty() && !iwp.empty() && !icomm.empty() &&
                                  !iright.empty()) {
                                all_collapse = false;
                              }
                            });
  return all_collapse;
}

}  // namespace fgc
