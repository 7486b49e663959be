#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fgc/construct.hpp"
#include "fgc/mat2.hpp"
#include "fgc/surface.hpp"
#include "fgc/word.hpp"

namespace fgc {

/// Evaluates a word through generator images in any group context G
/// (identity/mul/inv/Elem contract).
template <class G>
typename G::Elem eval_word(const G& g, const std::vector<typename G::Elem>& images,
                           const FreeWord& w) {
  if (static_cast<int>(images.size()) < w.rank()) {
    throw std::invalid_argument("eval_word: missing generator image");
  }
  typename G::Elem out = g.identity();
  for (Letter l : w.letters()) {
    const auto& im = images[static_cast<std::size_t>(l > 0 ? l : -l) - 1];
    out = g.mul(out, l > 0 ? im : g.inv(im));
  }
  return out;
}

/// A homomorphism from a finite presentation into G; every relator is checked
/// against the identity at construction.
template <class G>
struct HomInstance {
  std::vector<typename G::Elem> images;
};

template <class G>
HomInstance<G> make_hom(const G& g, const std::vector<FreeWord>& relators,
                        std::vector<typename G::Elem> images) {
  for (const FreeWord& rel : relators) {
    if (!(eval_word(g, images, rel) == g.identity())) {
      throw std::invalid_argument("make_hom: relator " + print_word(rel) +
                                  " does not map to the identity");
    }
  }
  return {std::move(images)};
}

/// All elements commuting with every listed element. Brute force over the
/// enumeration when the order is below the cap; for a single matrix that is
/// non-scalar mod p the centralizer equals {u + v M} exactly (M has a cyclic
/// vector mod p, so X is determined by X e on the basis {e, M e}), and pairs
/// intersect the single-matrix solutions.
inline std::vector<Mat2ModPk> commutant(const Sl2ModPk& g, const std::vector<Mat2ModPk>& gs) {
  auto commutes_all = [&](const Mat2ModPk& x) {
    for (const auto& m : gs) {
      if (!g.commute(x, m)) return false;
    }
    return true;
  };
  bool enumerable = true;
  try {
    g.enumerate();
  } catch (const std::runtime_error&) {
    enumerable = false;
  }
  if (enumerable) {
    std::vector<Mat2ModPk> out;
    for (const auto& x : g.enumerate()) {
      if (commutes_all(x)) out.push_back(x);
    }
    return out;
  }
  // structured solve: pick a listed matrix that is non-scalar mod p
  const Mat2ModPk* pivot = nullptr;
  for (const auto& m : gs) {
    if (!g.is_scalar_mod_p(m)) {
      pivot = &m;
      break;
    }
  }
  if (pivot == nullptr) {
    throw std::runtime_error(
        "commutant: group too large to enumerate and no non-scalar pivot available");
  }
  std::vector<Mat2ModPk> out;
  const std::uint64_t m_ = g.modulus();
  for (std::uint64_t u = 0; u < m_; ++u) {
    for (std::uint64_t v = 0; v < m_; ++v) {
      Mat2ModPk x{(u + v * pivot->a) % m_, (v * pivot->b) % m_, (v * pivot->c) % m_,
                  (u + v * pivot->d) % m_};
      if (g.det(x) != 1 % m_) continue;
      if (commutes_all(x)) out.push_back(x);
    }
  }
  return out;
}

/// All powers of c: {1, c, ..., c^(ord-1)}. In a finite group the tail
/// {c^n : n >= N} still generates the same cyclic subgroup for every N.
template <class G>
std::vector<typename G::Elem> cyclic_closure(const G& g, const typename G::Elem& c) {
  std::vector<typename G::Elem> out = {g.identity()};
  typename G::Elem cur = c;
  while (!(cur == g.identity())) {
    out.push_back(cur);
    cur = g.mul(cur, c);
    if (out.size() > 2000000) throw std::runtime_error("cyclic_closure: order cap exceeded");
  }
  return out;
}

/// The h_k homomorphism of a generalized double: first copy through phi,
/// second copy conjugated by k (stable letter translated by k). k must
/// centralize phi(c); the defining relator is re-verified exactly.
inline HomInstance<Sl2ModPk> h_k_family(const Sl2ModPk& g, const DoubleSpec& spec,
                                        const std::vector<Mat2ModPk>& phi_images,
                                        const Mat2ModPk& k_elt) {
  const int n = spec.vertex_rank;
  if (static_cast<int>(phi_images.size()) != n) {
    throw std::invalid_argument("h_k_family: need one image per vertex generator");
  }
  Mat2ModPk phi_c = eval_word(g, phi_images, spec.edge);
  if (!g.commute(k_elt, phi_c)) {
    throw std::invalid_argument("h_k_family: k does not centralize phi(c)");
  }
  std::vector<Mat2ModPk> images;
  for (int i = 0; i < n; ++i) {
    images.push_back(eval_word(g, phi_images, spec.fold_images[static_cast<std::size_t>(i)]));
  }
  if (spec.kind == DoubleKind::amalgam) {
    for (int i = n; i < 2 * n; ++i) {
      Mat2ModPk folded =
          eval_word(g, phi_images, spec.fold_images[static_cast<std::size_t>(i)]);
      images.push_back(g.mul(g.mul(k_elt, folded), g.inv(k_elt)));
    }
  } else {
    Mat2ModPk folded = eval_word(g, phi_images, spec.fold_images[static_cast<std::size_t>(n)]);
    images.push_back(g.mul(folded, k_elt));
  }
  return make_hom(g, {double_relator(spec)}, std::move(images));
}

/// The surface homomorphism rho_(g,h): a_i -> X_i, a_i' -> X_i', b -> g h^-1,
/// b' -> Y', c_i -> g X_i g^-1, c_i' -> g X_i' g^-1, defined whenever (g, h)
/// centralizes (Y, Y') componentwise. The relator check is re-verified.
template <class G>
HomInstance<G> rho_gh(const G& grp, const SurfacePresentation& pres,
                      const std::vector<typename G::Elem>& x_images,
                      const typename G::Elem& g, const typename G::Elem& h) {
  if (static_cast<int>(x_images.size()) != pres.fold_rank()) {
    throw std::invalid_argument("rho_gh: need images for x_1, x_1', ..., y'");
  }
  typename G::Elem Y = eval_word(grp, x_images, pres.y());
  typename G::Elem Yp = x_images[static_cast<std::size_t>(pres.yp()) - 1];
  if (!grp.commute(g, Y)) throw std::invalid_argument("rho_gh: g does not centralize y");
  if (!grp.commute(h, Yp)) throw std::invalid_argument("rho_gh: h does not centralize y'");

  std::vector<typename G::Elem> images(static_cast<std::size_t>(pres.num_gens()),
                                       grp.identity());
  auto conj_g = [&](const typename G::Elem& e) { return grp.mul(grp.mul(g, e), grp.inv(g)); };
  for (int i = 1; i <= pres.r(); ++i) {
    const auto& xi = x_images[static_cast<std::size_t>(pres.x(i)) - 1];
    const auto& xpi = x_images[static_cast<std::size_t>(pres.xp(i)) - 1];
    images[static_cast<std::size_t>(pres.a(i)) - 1] = xi;
    images[static_cast<std::size_t>(pres.ap(i)) - 1] = xpi;
    images[static_cast<std::size_t>(pres.c(i)) - 1] = conj_g(xi);
    images[static_cast<std::size_t>(pres.cp(i)) - 1] = conj_g(xpi);
  }
  images[static_cast<std::size_t>(pres.b()) - 1] = grp.mul(g, grp.inv(h));
  images[static_cast<std::size_t>(pres.bp()) - 1] = Yp;
  return make_hom(grp, {pres.relator()}, std::move(images));
}

/// Elements of the list mapped to the identity, in input order.
template <class G>
std::vector<FreeWord> injectivity_on_ball(const G& g, const HomInstance<G>& hom,
                                          const std::vector<FreeWord>& elements) {
  std::vector<FreeWord> killed;
  for (const FreeWord& e : elements) {
    if (eval_word(g, hom.images, e) == g.identity()) killed.push_back(e);
  }
  return killed;
}

/// Breadth-first closure of the generated subgroup; true iff it exhausts the
/// whole group. Deterministic single-writer frontier.
inline bool surjectivity_mod(const Sl2ModPk& g, const std::vector<Mat2ModPk>& gens,
                             std::uint64_t* closure_size = nullptr) {
  std::unordered_set<Mat2ModPk, Mat2ModPkHash> seen;
  std::vector<Mat2ModPk> frontier = {g.identity()};
  seen.insert(g.identity());
  while (!frontier.empty()) {
    std::vector<Mat2ModPk> next;
    for (const auto& f : frontier) {
      for (const auto& s : gens) {
        Mat2ModPk candidate = g.mul(f, s);
        if (seen.insert(candidate).second) next.push_back(candidate);
      }
    }
    frontier = std::move(next);
  }
  if (closure_size != nullptr) *closure_size = seen.size();
  return seen.size() == g.order();
}

}  // namespace fgc
