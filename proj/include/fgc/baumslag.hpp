#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "fgc/tree.hpp"
#include "fgc/word.hpp"
#include "fgc/word_text.hpp"

namespace fgc {

// ---------------------------------------------------------------------------
// Basic instances: a_0 z^{k_0} a_1 z^{k_1} ... a_n z^{k_n}
// ---------------------------------------------------------------------------

/// Coefficients a_0..a_n and twist element z. The hypotheses require
/// [z, a_i] != 1 for i >= 1; a_0 is unconstrained.
struct BaumslagInstance {
  FreeWord z;
  std::vector<FreeWord> coefficients;  // a_0..a_n, n = size()-1 >= 1

  int n() const { return static_cast<int>(coefficients.size()) - 1; }
};

inline std::vector<std::string> check_basic_hypotheses(const BaumslagInstance& inst) {
  std::vector<std::string> bad;
  if (inst.z.empty()) bad.push_back("z is trivial");
  if (inst.coefficients.size() < 2) bad.push_back("need n >= 1, i.e. at least a_0 and a_1");
  for (std::size_t i = 1; i < inst.coefficients.size(); ++i) {
    if (inst.z.empty()) break;
    if (commutes(inst.z, inst.coefficients[i])) {
      bad.push_back("[z, a_" + std::to_string(i) + "] = 1 (a_" + std::to_string(i) + " = " +
                    print_word(inst.coefficients[i]) + ")");
    }
  }
  return bad;
}

inline FreeWord eval_basic(const BaumslagInstance& inst, const std::vector<long long>& ks) {
  if (ks.size() != inst.coefficients.size()) {
    throw std::invalid_argument("eval_basic: expected " +
                                std::to_string(inst.coefficients.size()) + " exponents, got " +
                                std::to_string(ks.size()));
  }
  FreeWord w(inst.z.rank());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    w.push_word(inst.coefficients[i]);
    w.push_word(pow(inst.z, ks[i]));
  }
  return w;
}

/// Smallest N <= cap such that every exponent tuple with N <= |k_i| <= N+window
/// (all sign patterns) evaluates nontrivially.
inline std::optional<long long> empirical_min_n(const BaumslagInstance& inst, long long window,
                                                long long cap) {
  auto bad = check_basic_hypotheses(inst);
  if (!bad.empty()) throw std::invalid_argument("empirical_min_n: " + bad.front());
  const std::size_t slots = inst.coefficients.size();
  for (long long N = 1; N <= cap; ++N) {
    std::vector<long long> ks(slots, N);
    bool all_ok = true;
    // odometer over {-(N+window)..-N, N..N+window}^slots
    std::vector<long long> idx(slots, 0);
    const long long choices = 2 * (window + 1);
    for (;;) {
      for (std::size_t i = 0; i < slots; ++i) {
        long long c = idx[i];
        ks[i] = c < window + 1 ? N + c : -(N + (c - (window + 1)));
      }
      if (eval_basic(inst, ks).empty()) {
        all_ok = false;
        break;
      }
      std::size_t pos = 0;
      while (pos < slots && ++idx[pos] == choices) idx[pos++] = 0;
      if (pos == slots) break;
    }
    if (all_ok) return N;
  }
  return std::nullopt;
}

/// w_m b^-k a^{l_m} b^k w_{m-1} ... w_1 b^-k a^{l_1} b^k w_0, reduced.
inline FreeWord eval_conjugated(const FreeWord& a, const FreeWord& b,
                                const std::vector<long long>& ls,
                                const std::vector<FreeWord>& ws, long long k) {
  if (ls.empty()) throw std::invalid_argument("eval_conjugated: need m > 0");
  if (ws.size() != ls.size() + 1) {
    throw std::invalid_argument("eval_conjugated: need m+1 words w_0..w_m");
  }
  if (commutes(a, b)) throw std::invalid_argument("eval_conjugated: a and b commute");
  for (const auto& w : ws) {
    if (w.empty()) throw std::invalid_argument("eval_conjugated: trivial w_i");
  }
  for (long long l : ls) {
    if (l == 0) throw std::invalid_argument("eval_conjugated: zero exponent l_i");
  }
  const std::size_t m = ls.size();
  FreeWord bk = pow(b, k);
  FreeWord out(a.rank());
  for (std::size_t i = m; i >= 1; --i) {
    out.push_word(ws[i]);
    out.push_inverse_word(bk);
    out.push_word(pow(a, ls[i - 1]));
    out.push_word(bk);
  }
  out.push_word(ws[0]);
  return out;
}

// ---------------------------------------------------------------------------
// General instances: alternating products over z_1..z_l and u_1..u_m
// ---------------------------------------------------------------------------

struct USlot {
  int index = 0;  // 0 denotes the identity u_0
};
struct ZSlot {
  int index = 1;  // 1-based into zs
  int sign = 1;   // +1 or -1; the evaluated exponent is sign * t
};
using PatternSlot = std::variant<USlot, ZSlot>;

inline bool is_u(const PatternSlot& s) { return std::holds_alternative<USlot>(s); }

/// Pattern slots are stored in product order: the element is
/// slots[0] * slots[1] * ... * slots.back(), so slots.back() acts first on the
/// boundary and plays the role of the rightmost factor.
struct GeneralBaumslagInstance {
  int rank = 2;
  std::vector<FreeWord> zs;
  std::vector<FreeWord> us;
  std::vector<PatternSlot> pattern;
  bool relaxed = false;
};

inline void validate_general(const GeneralBaumslagInstance& inst) {
  if (inst.zs.empty()) throw std::invalid_argument("instance: need at least one z");
  for (const auto& z : inst.zs) {
    if (z.rank() != inst.rank) throw std::invalid_argument("instance: z rank mismatch");
    if (z.empty()) throw std::invalid_argument("instance: trivial z");
  }
  for (const auto& u : inst.us) {
    if (u.rank() != inst.rank) throw std::invalid_argument("instance: u rank mismatch");
    if (u.empty()) throw std::invalid_argument("instance: trivial u (use u_0 for the identity)");
  }
  const auto& p = inst.pattern;
  if (p.empty()) throw std::invalid_argument("pattern: empty");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i + 1 < p.size() && is_u(p[i]) == is_u(p[i + 1])) {
      throw std::invalid_argument("pattern: slots must alternate between u and z kinds");
    }
    if (is_u(p[i])) {
      int idx = std::get<USlot>(p[i]).index;
      if (idx < 0 || idx > static_cast<int>(inst.us.size())) {
        throw std::invalid_argument("pattern: u index out of range");
      }
    } else {
      const auto& zs = std::get<ZSlot>(p[i]);
      if (zs.index < 1 || zs.index > static_cast<int>(inst.zs.size())) {
        throw std::invalid_argument("pattern: z index out of range");
      }
      if (zs.sign != 1 && zs.sign != -1) throw std::invalid_argument("pattern: z sign must be +-1");
    }
  }
  if (!is_u(p.back())) {
    throw std::invalid_argument("pattern: rightmost factor must be a u slot (possibly u_0)");
  }
  // u_0 side conditions: a u_0 slot needs n >= 2, and an interior u_0 needs
  // distinct neighboring z indices.
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!is_u(p[i]) || std::get<USlot>(p[i]).index != 0) continue;
    if (p.size() < 2) throw std::invalid_argument("pattern: u_0 requires length >= 2");
    if (i > 0 && i + 1 < p.size()) {
      int left = std::get<ZSlot>(p[i - 1]).index;
      int right = std::get<ZSlot>(p[i + 1]).index;
      if (left == right) {
        throw std::invalid_argument(
            "pattern: interior u_0 requires distinct neighboring z indices");
      }
    }
  }
}

inline FreeWord eval_general(const GeneralBaumslagInstance& inst,
                             const std::vector<long long>& ts) {
  validate_general(inst);
  std::size_t zslots = 0;
  for (const auto& s : inst.pattern) {
    if (!is_u(s)) ++zslots;
  }
  if (ts.size() != zslots) {
    throw std::invalid_argument("eval_general: expected " + std::to_string(zslots) +
                                " exponents, got " + std::to_string(ts.size()));
  }
  FreeWord out(inst.rank);
  std::size_t ti = 0;
  for (const auto& s : inst.pattern) {
    if (is_u(s)) {
      int idx = std::get<USlot>(s).index;
      if (idx > 0) out.push_word(inst.us[static_cast<std::size_t>(idx) - 1]);
    } else {
      const auto& z = std::get<ZSlot>(s);
      out.push_word(pow(inst.zs[static_cast<std::size_t>(z.index) - 1], z.sign * ts[ti++]));
    }
  }
  return out;
}

namespace detail {

inline std::set<int> occurring_z(const GeneralBaumslagInstance& inst) {
  std::set<int> out;
  if (!inst.relaxed) {
    for (int j = 1; j <= static_cast<int>(inst.zs.size()); ++j) out.insert(j);
    return out;
  }
  for (const auto& s : inst.pattern) {
    if (!is_u(s)) out.insert(std::get<ZSlot>(s).index);
  }
  return out;
}

/// Pairs (i, j) whose separating neighborhoods the orbit argument consumes:
/// every u_i immediately left of a z_j power, plus, when the first-applied
/// factor (the rightmost slot) is a nonidentity u_i, the pair with the
/// first-applied z, since that u acts on the bare endpoints z_j^+-. In full
/// mode: all pairs.
inline std::set<std::pair<int, int>> c2_pairs(const GeneralBaumslagInstance& inst) {
  std::set<std::pair<int, int>> out;
  if (!inst.relaxed) {
    for (int i = 1; i <= static_cast<int>(inst.us.size()); ++i) {
      for (int j = 1; j <= static_cast<int>(inst.zs.size()); ++j) out.insert({i, j});
    }
    return out;
  }
  const auto& p = inst.pattern;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (is_u(p[k]) && !is_u(p[k + 1])) {
      int i = std::get<USlot>(p[k]).index;
      if (i >= 1) out.insert({i, std::get<ZSlot>(p[k + 1]).index});
    }
  }
  if (p.size() >= 2 && is_u(p.back())) {
    int i = std::get<USlot>(p.back()).index;
    if (i >= 1) out.insert({i, std::get<ZSlot>(p[p.size() - 2]).index});
  }
  return out;
}

/// The ping-pong proof excludes n = 1 and (n <= 3 with w_1 = u_0); those
/// cases are decided by a direct argument instead of cylinder checks.
inline bool is_direct_case(const GeneralBaumslagInstance& inst) {
  const auto& p = inst.pattern;
  if (p.size() == 1) return true;
  return p.size() <= 3 && is_u(p.back()) && std::get<USlot>(p.back()).index == 0;
}

inline std::optional<long long> power_exponent_of(const FreeWord& w, const FreeWord& z) {
  if (w.empty()) return 0;
  if (!is_power_of(w, z)) return std::nullopt;
  CyclicDecomp d = cyclic_decompose(z);
  FreeWord x = conjugate(w, invert(d.conjugator));
  long long k = static_cast<long long>(x.size() / d.core.size());
  return x == pow(d.core, k) ? k : -k;
}

}  // namespace detail

/// Empty iff the (full or relaxed, per the instance flag) hypotheses hold.
/// Violations name the offending pair and commutator.
inline std::vector<std::string> check_general_hypotheses(const GeneralBaumslagInstance& inst) {
  validate_general(inst);
  std::vector<std::string> bad;
  auto zname = [&](int j) { return "z_" + std::to_string(j); };
  auto uname = [&](int i) { return "u_" + std::to_string(i); };

  if (!inst.relaxed) {
    const int l = static_cast<int>(inst.zs.size());
    const int m = static_cast<int>(inst.us.size());
    for (int j = 1; j <= l; ++j) {
      for (int k = j + 1; k <= l; ++k) {
        if (commutes(inst.zs[j - 1], inst.zs[k - 1])) {
          bad.push_back("[" + zname(j) + ", " + zname(k) + "] = 1");
        }
      }
    }
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= l; ++j) {
        if (commutes(inst.us[i - 1], inst.zs[j - 1])) {
          bad.push_back("[" + uname(i) + ", " + zname(j) + "] = 1");
        }
      }
    }
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= l; ++j) {
        for (int k = 1; k <= l; ++k) {
          if (j == k) continue;
          FreeWord conj = conjugate(inst.zs[j - 1], inst.us[i - 1]);
          if (commutes(conj, inst.zs[k - 1])) {
            bad.push_back("[" + uname(i) + " " + zname(j) + " " + uname(i) + "^-1, " + zname(k) +
                          "] = 1");
          }
        }
      }
    }
    return bad;
  }

  auto occ = detail::occurring_z(inst);
  for (int j : occ) {
    for (int k : occ) {
      if (k <= j) continue;
      if (commutes(inst.zs[j - 1], inst.zs[k - 1])) {
        bad.push_back("[" + zname(j) + ", " + zname(k) + "] = 1");
      }
    }
  }
  for (auto [i, j] : detail::c2_pairs(inst)) {
    if (commutes(inst.us[i - 1], inst.zs[j - 1])) {
      bad.push_back("[" + uname(i) + ", " + zname(j) + "] = 1 (adjacent pair)");
    }
    for (int k : occ) {
      if (k == j) continue;
      FreeWord conj = conjugate(inst.zs[j - 1], inst.us[i - 1]);
      if (commutes(conj, inst.zs[k - 1])) {
        bad.push_back("[" + uname(i) + " " + zname(j) + " " + uname(i) + "^-1, " + zname(k) +
                      "] = 1 (adjacent pair)");
      }
    }
  }
  return bad;
}

/// Machine-checkable nontriviality certificate: disjoint cylinders separating
/// the relevant boundary points plus the exponent bound N. verify_certificate
/// re-derives every inclusion with exact cylinder algebra.
struct PingPongCertificate {
  long long n = 1;
  std::map<std::pair<int, int>, Cylinder> z_nbhd;           // (j, eps) -> V_j^eps
  std::map<std::tuple<int, int, int>, Cylinder> u_nbhd;     // (i, j, eps) -> V_{i,j}^eps
  bool direct_case = false;
  std::string notes;
};

namespace detail {

struct CylinderPlan {
  std::size_t depth = 0;
  std::map<std::pair<int, int>, Cylinder> z_nbhd;
  std::map<std::tuple<int, int, int>, Cylinder> u_nbhd;
};

inline BoundaryRay z_end(const GeneralBaumslagInstance& inst, int j, int eps) {
  Endpoints e = endpoints(inst.zs[static_cast<std::size_t>(j) - 1]);
  return eps > 0 ? e.plus : e.minus;
}

/// Uniform-depth cylinder family: V_j^eps around z_j^eps and
/// V_{i,j}^eps = u_i V_j^eps, at the smallest depth making every per-i family
/// pairwise disjoint and the monotone inclusions z_j^eps V_j^eps in V_j^eps
/// hold.
inline CylinderPlan build_cylinders(const GeneralBaumslagInstance& inst) {
  auto occ = occurring_z(inst);
  auto pairs = c2_pairs(inst);

  std::size_t dmin = 1;
  for (auto [i, j] : pairs) {
    dmin = std::max(dmin, inst.us[static_cast<std::size_t>(i) - 1].size() + 1);
  }
  std::size_t dcap = dmin + 96;
  for (int j : occ) {
    dcap += inst.zs[static_cast<std::size_t>(j) - 1].size();
  }

  for (std::size_t depth = dmin; depth <= dcap; ++depth) {
    CylinderPlan plan;
    plan.depth = depth;
    bool ok = true;
    for (int j : occ) {
      for (int eps : {+1, -1}) {
        plan.z_nbhd.emplace(std::make_pair(j, eps), cylinder_around(z_end(inst, j, eps), depth));
      }
    }
    // pairwise disjoint z-neighborhoods
    for (auto it = plan.z_nbhd.begin(); ok && it != plan.z_nbhd.end(); ++it) {
      for (auto jt = std::next(it); ok && jt != plan.z_nbhd.end(); ++jt) {
        ok = cylinder_disjoint(it->second, jt->second);
      }
    }
    // images under the u's
    for (auto [i, j] : pairs) {
      if (!ok) break;
      for (int eps : {+1, -1}) {
        try {
          Cylinder img = cylinder_image(inst.us[static_cast<std::size_t>(i) - 1],
                                        plan.z_nbhd.at({j, eps}));
          plan.u_nbhd.emplace(std::make_tuple(i, j, eps), img);
        } catch (const std::invalid_argument&) {
          ok = false;
          break;
        }
      }
    }
    // per-i family disjointness
    if (ok) {
      std::set<int> is;
      for (auto [i, j] : pairs) is.insert(i);
      for (int i : is) {
        std::vector<const Cylinder*> family;
        for (const auto& [key, cyl] : plan.z_nbhd) family.push_back(&cyl);
        for (const auto& [key, cyl] : plan.u_nbhd) {
          if (std::get<0>(key) == i) family.push_back(&cyl);
        }
        for (std::size_t a = 0; a < family.size() && ok; ++a) {
          for (std::size_t b = a + 1; b < family.size() && ok; ++b) {
            ok = cylinder_disjoint(*family[a], *family[b]);
          }
        }
        if (!ok) break;
      }
    }
    // monotone inclusions
    if (ok) {
      for (int j : occ) {
        const FreeWord& z = inst.zs[static_cast<std::size_t>(j) - 1];
        for (int eps : {+1, -1}) {
          try {
            Cylinder img = cylinder_image(eps > 0 ? z : invert(z), plan.z_nbhd.at({j, eps}));
            if (!cylinder_subset(img, plan.z_nbhd.at({j, eps}))) {
              ok = false;
            }
          } catch (const std::invalid_argument&) {
            ok = false;
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    }
    if (ok) return plan;
  }
  throw std::logic_error("build_cylinders: no admissible depth found; hypotheses violated?");
}

/// (C1) at exponent t for one z and sign: z^{eps t} (boundary minus V^{-eps})
/// contained in V^{eps}, checked piecewise over the complement decomposition.
inline bool c1_holds_at(const FreeWord& z, int eps, long long t, const Cylinder& v_plus_eps,
                        const Cylinder& v_minus_eps) {
  FreeWord g = pow(z, eps * t);
  for (const Cylinder& piece : cylinder_complement(v_minus_eps)) {
    try {
      if (!cylinder_subset(cylinder_image(g, piece), v_plus_eps)) return false;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exact re-check of a certificate against its instance: cylinder validity,
/// center containment, per-i disjointness, the u-image inclusions (C2), the
/// monotone inclusions z_j^eps V_j^eps in V_j^eps, and (C1) at t = N. With
/// the monotone inclusions, (C1) at N implies (C1) for every t >= N, so a
/// passing certificate proves nontriviality of every admissible pattern
/// instantiation with all |t_i| >= N.
inline bool verify_certificate(const PingPongCertificate& cert,
                               const GeneralBaumslagInstance& inst) {
  try {
    validate_general(inst);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (cert.n < 1) return false;

  if (detail::is_direct_case(inst)) {
    // n = 1: a single nontrivial u. n <= 3 with w_1 = u_0: the product is
    // z_j^t or u_i z_j^t; by the hypothesis [u_i, z_j] != 1 the u is not a
    // power of z_j, so the product is nontrivial for every t != 0.
    const auto& p = inst.pattern;
    if (p.size() == 1) {
      int idx = std::get<USlot>(p.back()).index;
      return idx >= 1 && !inst.us[static_cast<std::size_t>(idx) - 1].empty();
    }
    const auto& z = inst.zs[static_cast<std::size_t>(std::get<ZSlot>(p[p.size() - 2]).index) - 1];
    if (p.size() == 3 && std::get<USlot>(p.front()).index >= 1) {
      const auto& u = inst.us[static_cast<std::size_t>(std::get<USlot>(p.front()).index) - 1];
      return !commutes(u, z);
    }
    return !z.empty();
  }

  auto occ = detail::occurring_z(inst);
  auto pairs = detail::c2_pairs(inst);

  for (int j : occ) {
    for (int eps : {+1, -1}) {
      auto it = cert.z_nbhd.find({j, eps});
      if (it == cert.z_nbhd.end()) return false;
      if (!cylinder_contains(it->second, detail::z_end(inst, j, eps))) return false;
    }
  }
  for (auto [i, j] : pairs) {
    for (int eps : {+1, -1}) {
      auto it = cert.u_nbhd.find({i, j, eps});
      if (it == cert.u_nbhd.end()) return false;
      try {
        Cylinder img =
            cylinder_image(inst.us[static_cast<std::size_t>(i) - 1], cert.z_nbhd.at({j, eps}));
        if (!cylinder_subset(img, it->second)) return false;
      } catch (const std::invalid_argument&) {
        return false;
      } catch (const std::out_of_range&) {
        return false;
      }
    }
  }
  // z-family pairwise disjoint
  for (int j : occ) {
    for (int k : occ) {
      for (int e1 : {+1, -1}) {
        for (int e2 : {+1, -1}) {
          if (j == k && e1 == e2) continue;
          if (std::make_pair(j, e1) < std::make_pair(k, e2)) {
            if (!cylinder_disjoint(cert.z_nbhd.at({j, e1}), cert.z_nbhd.at({k, e2}))) {
              return false;
            }
          }
        }
      }
    }
  }
  // per-i families pairwise disjoint
  std::set<int> is;
  for (auto [i, j] : pairs) is.insert(i);
  for (int i : is) {
    std::vector<const Cylinder*> family;
    for (const auto& [key, cyl] : cert.z_nbhd) {
      if (occ.count(key.first)) family.push_back(&cyl);
    }
    for (const auto& [key, cyl] : cert.u_nbhd) {
      if (std::get<0>(key) == i && pairs.count({std::get<0>(key), std::get<1>(key)})) {
        family.push_back(&cyl);
      }
    }
    for (std::size_t a = 0; a < family.size(); ++a) {
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        if (!cylinder_disjoint(*family[a], *family[b])) return false;
      }
    }
  }
  // monotone inclusions and (C1) at N
  for (int j : occ) {
    const FreeWord& z = inst.zs[static_cast<std::size_t>(j) - 1];
    const Cylinder& vp = cert.z_nbhd.at({j, +1});
    const Cylinder& vm = cert.z_nbhd.at({j, -1});
    for (int eps : {+1, -1}) {
      const Cylinder& v = eps > 0 ? vp : vm;
      try {
        if (!cylinder_subset(cylinder_image(eps > 0 ? z : invert(z), v), v)) return false;
      } catch (const std::invalid_argument&) {
        return false;
      }
    }
    if (!detail::c1_holds_at(z, +1, cert.n, vp, vm)) return false;
    if (!detail::c1_holds_at(z, -1, cert.n, vm, vp)) return false;
  }
  return true;
}

/// Builds a certificate for the instance: separating cylinders at the minimal
/// uniform depth, then the minimal N passing the exact (C1) check, so that
/// decrementing N always invalidates the certificate.
inline PingPongCertificate certify_general(const GeneralBaumslagInstance& inst) {
  auto bad = check_general_hypotheses(inst);
  if (!bad.empty()) {
    std::string msg = "certify_general: hypotheses violated:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw std::invalid_argument(msg);
  }

  PingPongCertificate cert;
  if (detail::is_direct_case(inst)) {
    cert.n = 1;
    cert.direct_case = true;
    cert.notes =
        "excluded special case (single slot, or length <= 3 ending in u_0): decided by the "
        "direct argument, no cylinder data needed";
    return cert;
  }

  detail::CylinderPlan plan = detail::build_cylinders(inst);
  cert.z_nbhd = std::move(plan.z_nbhd);
  cert.u_nbhd = std::move(plan.u_nbhd);

  long long ncap = 4 * static_cast<long long>(plan.depth) + 8;
  long long n = 0;
  for (long long cand = 1; cand <= ncap; ++cand) {
    bool ok = true;
    for (int j : detail::occurring_z(inst)) {
      const FreeWord& z = inst.zs[static_cast<std::size_t>(j) - 1];
      const Cylinder& vp = cert.z_nbhd.at({j, +1});
      const Cylinder& vm = cert.z_nbhd.at({j, -1});
      if (!detail::c1_holds_at(z, +1, cand, vp, vm) ||
          !detail::c1_holds_at(z, -1, cand, vm, vp)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      n = cand;
      break;
    }
  }
  if (n == 0) throw std::logic_error("certify_general: no N passed (C1) within the cap");
  cert.n = n;
  cert.notes = "uniform cylinder depth " + std::to_string(plan.depth) +
               "; N minimal for the exact (C1) check, monotone inclusions verified";
  return cert;
}

// ---------------------------------------------------------------------------
// Basic -> general translation
// ---------------------------------------------------------------------------

struct BasicCertification {
  GeneralBaumslagInstance general;
  PingPongCertificate certificate;
  /// Every tuple with |k_i| >= min_exponent for all i evaluates nontrivially.
  long long min_exponent = 1;
};

/// Translates a_0 z^{k_0} ... a_n z^{k_n} into the general-lemma shape and
/// certifies it. When a_0 commutes with z it is absorbed into the leading
/// power of the primitive root of z, shifting the bound accordingly.
inline BasicCertification certify_basic(const BaumslagInstance& inst) {
  auto bad = check_basic_hypotheses(inst);
  if (!bad.empty()) throw std::invalid_argument("certify_basic: " + bad.front());

  BasicCertification out;
  GeneralBaumslagInstance& gen = out.general;
  gen.rank = inst.z.rank();
  gen.relaxed = false;

  const FreeWord& a0 = inst.coefficients[0];
  const bool a0_commutes = a0.empty() || commutes(a0, inst.z);

  long long root_exp = 1;
  long long absorbed = 0;
  if (!a0_commutes) {
    gen.zs = {inst.z};
  } else if (a0.empty()) {
    gen.zs = {inst.z};
  } else {
    PrimitiveRoot pr = primitive_root(inst.z);
    gen.zs = {pr.root};
    root_exp = pr.exponent;
    auto s = detail::power_exponent_of(a0, pr.root);
    if (!s.has_value()) {
      throw std::logic_error("certify_basic: a_0 commutes with z but is not a root power");
    }
    absorbed = *s;
  }

  auto u_index = [&](const FreeWord& w) -> int {
    for (std::size_t i = 0; i < gen.us.size(); ++i) {
      if (gen.us[i] == w) return static_cast<int>(i) + 1;
    }
    gen.us.push_back(w);
    return static_cast<int>(gen.us.size());
  };

  if (!a0_commutes) gen.pattern.push_back(USlot{u_index(a0)});
  for (std::size_t i = 0; i < inst.coefficients.size(); ++i) {
    if (i > 0) gen.pattern.push_back(USlot{u_index(inst.coefficients[i])});
    gen.pattern.push_back(ZSlot{1, +1});
  }
  gen.pattern.push_back(USlot{0});

  out.certificate = certify_general(gen);
  // Exponent conversion: basic exponent k feeds the general slot exponent
  // root_exp * k, and the absorbed a_0 shifts the leading slot by `absorbed`.
  long long ngen = out.certificate.n;
  long long shift = absorbed < 0 ? -absorbed : absorbed;
  out.min_exponent = (ngen + shift + root_exp - 1) / root_exp;
  return out;
}

// ---------------------------------------------------------------------------
// Affine alternating products: certified onsets for twist families
// ---------------------------------------------------------------------------

/// One factor of a product depending on a parameter n: either a fixed word or
/// z_{index}^(coeff*n + offset).
struct AffineItem {
  bool fixed = true;
  FreeWord word;  // when fixed
  int z_index = 1;
  int coeff = 0;
  long long offset = 0;
};

inline AffineItem affine_fixed(FreeWord w) {
  AffineItem it;
  it.fixed = true;
  it.word = std::move(w);
  return it;
}

inline AffineItem affine_power(int z_index, int coeff, long long offset) {
  AffineItem it;
  it.fixed = false;
  it.z_index = z_index;
  it.coeff = coeff;
  it.offset = offset;
  return it;
}

struct AffineCertification {
  GeneralBaumslagInstance instance;
  PingPongCertificate certificate;
  /// The product is nontrivial for every parameter n >= onset.
  long long onset = 1;
};

/// Symbolic evaluation of an affine item list at a concrete parameter n;
/// the oracle used to cross-check the normalization.
inline FreeWord eval_affine_product(int rank, const std::vector<FreeWord>& zs,
                                    const std::vector<AffineItem>& items, long long n) {
  FreeWord out(rank);
  for (const auto& it : items) {
    if (it.fixed) {
      out.push_word(it.word);
    } else {
      out.push_word(pow(zs[static_cast<std::size_t>(it.z_index) - 1], it.coeff * n + it.offset));
    }
  }
  return out;
}

/// Normalizes an affine product (merging same-z neighbors, absorbing fixed
/// z-powers, dropping vanished factors), builds the relaxed general instance
/// and certificate, and converts |coeff*n + offset| >= N into an onset in n.
inline AffineCertification certify_affine_product(int rank, const std::vector<FreeWord>& zs,
                                                  std::vector<AffineItem> items) {
  // --- normalization to a strictly alternating shape ---
  for (;;) {
    bool changed = false;
    std::vector<AffineItem> next;
    for (auto& it : items) {
      if (it.fixed) {
        if (it.word.empty()) {
          changed = true;
          continue;
        }
        // a fixed word that is a power of some z becomes a constant affine
        bool converted = false;
        for (std::size_t j = 0; j < zs.size() && !converted; ++j) {
          auto e = detail::power_exponent_of(it.word, zs[j]);
          if (e.has_value() && *e != 0) {
            next.push_back(affine_power(static_cast<int>(j) + 1, 0, *e));
            converted = true;
            changed = true;
          }
        }
        if (converted) continue;
      } else if (it.coeff == 0 && it.offset == 0) {
        changed = true;
        continue;
      }
      if (!next.empty()) {
        AffineItem& prev = next.back();
        if (!prev.fixed && !it.fixed && prev.z_index == it.z_index) {
          prev.coeff += it.coeff;
          prev.offset += it.offset;
          changed = true;
          continue;
        }
        if (prev.fixed && it.fixed) {
          prev.word = concat(prev.word, it.word);
          changed = true;
          continue;
        }
      }
      next.push_back(std::move(it));
    }
    items = std::move(next);
    if (!changed) break;
  }

  if (items.empty()) {
    throw std::invalid_argument("certify_affine_product: the product vanishes identically");
  }

  AffineCertification out;
  GeneralBaumslagInstance& gen = out.instance;
  gen.rank = rank;
  gen.zs = zs;
  gen.relaxed = true;

  auto u_index = [&](const FreeWord& w) -> int {
    for (std::size_t i = 0; i < gen.us.size(); ++i) {
      if (gen.us[i] == w) return static_cast<int>(i) + 1;
    }
    gen.us.push_back(w);
    return static_cast<int>(gen.us.size());
  };

  std::vector<std::pair<int, long long>> slot_affine;  // (coeff, offset) per z slot
  bool last_was_z = false;
  for (auto& it : items) {
    if (it.fixed) {
      gen.pattern.push_back(USlot{u_index(it.word)});
      last_was_z = false;
      continue;
    }
    if (it.coeff == 0) {
      // constant power: acts as a fixed u
      FreeWord w = pow(zs[static_cast<std::size_t>(it.z_index) - 1], it.offset);
      gen.pattern.push_back(USlot{u_index(w)});
      last_was_z = false;
      continue;
    }
    if (it.coeff != 1 && it.coeff != -1) {
      throw std::logic_error("certify_affine_product: |coeff| > 1 after normalization");
    }
    if (last_was_z) gen.pattern.push_back(USlot{0});
    gen.pattern.push_back(ZSlot{it.z_index, it.coeff});
    slot_affine.push_back({it.coeff, it.offset});
    last_was_z = true;
  }
  if (last_was_z) gen.pattern.push_back(USlot{0});

  out.certificate = certify_general(gen);

  // slot exponent is coeff*n + offset = sign * t with t = n + coeff*offset;
  // require t >= N for every slot.
  long long onset = 1;
  for (auto [coeff, offset] : slot_affine) {
    onset = std::max(onset, out.certificate.n - coeff * offset);
  }
  out.onset = onset;
  return out;
}

}  // namespace fgc
