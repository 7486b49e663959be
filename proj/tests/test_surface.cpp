#include <catch2/catch_amalgamated.hpp>

#include "fgc/surface.hpp"
#include "fgc/word_text.hpp"

using namespace fgc;

namespace {

FreeWord random_surface_word(CounterRng& rng, const SurfacePresentation& pres,
                             std::size_t max_len) {
  return random_reduced_word(rng, pres.num_gens(), max_len);
}

bool homology_zero(const SurfacePresentation& pres, const FreeWord& w) {
  for (long long s : pres.homology(w)) {
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("presentation layout") {
  SurfacePresentation p(1);
  CHECK(p.genus() == 3);
  CHECK(p.num_gens() == 6);
  CHECK(p.fold_rank() == 3);
  CHECK(p.relator().size() == 12);
  // alpha = [a1,a1'] b'
  CHECK(p.alpha() == concat(commutator(p.gen(1), p.gen(2)), p.gen(p.bp())));
  CHECK(p.beta() == p.gen(p.bp()));
  // y = [x1,x1'] y'
  FreeWord y_expect = commutator(FreeWord(3, {1}), FreeWord(3, {2}));
  y_expect.push(3);
  CHECK(p.y() == y_expect);

  SurfacePresentation p2(2);
  CHECK(p2.genus() == 5);
  CHECK(p2.relator().size() == 20);

  CHECK_THROWS_AS(SurfacePresentation(0), std::invalid_argument);
}

TEST_CASE("fold kills the relator") {
  for (int r = 1; r <= 3; ++r) {
    SurfacePresentation p(r);
    CHECK(p.fold(p.relator()).empty());
    CHECK(p.fold(p.alpha()) == p.y());
    CHECK(p.fold(p.gen(p.b())).empty());
  }
}

TEST_CASE("twist tables") {
  SurfacePresentation p(1);
  CHECK(p.sigma(p.gen(p.b())) == concat(p.alpha(), p.gen(p.b())));
  CHECK(p.sigma(p.gen(p.c(1))) == conjugate(p.gen(p.c(1)), p.alpha()));
  CHECK(p.sigma(p.gen(1)) == p.gen(1));
  CHECK(p.tau(p.gen(p.c(1))) == p.gen(p.c(1)));
  CHECK(p.tau(p.gen(p.b())) == concat(p.gen(p.b()), invert(p.beta())));
  CHECK(p.tau(p.gen(p.bp())) == p.gen(p.bp()));
}

TEST_CASE("sigma and tau commute") {
  for (int r : {1, 2}) {
    SurfacePresentation p(r);
    for (int g = 1; g <= p.num_gens(); ++g) {
      CHECK(p.sigma(p.tau(p.gen(g))) == p.tau(p.sigma(p.gen(g))));
    }
    CounterRng rng(401);
    for (int trial = 0; trial < 1000; ++trial) {
      FreeWord w = random_surface_word(rng, p, 10);
      CHECK(p.sigma(p.tau(w)) == p.tau(p.sigma(w)));
    }
  }
}

TEST_CASE("delta_pow closed form") {
  SurfacePresentation p(1);
  CounterRng rng(402);
  for (int trial = 0; trial < 300; ++trial) {
    FreeWord w = random_surface_word(rng, p, 8);
    CHECK(p.delta_pow(w, 0) == w);
    CHECK(p.delta_pow(w, 1) == p.sigma(p.tau(w)));
    CHECK(p.delta_pow(p.delta_pow(w, 2), 3) == p.delta_pow(w, 5));
  }
  CHECK(p.delta_pow(p.gen(p.b()), 1) ==
        concat(concat(p.alpha(), p.gen(p.b())), invert(p.beta())));
}

TEST_CASE("f_n values") {
  SurfacePresentation p(1);
  // f_1(b) = y y'^-1
  CHECK(p.f_n(p.gen(p.b()), 1) == concat(p.y(), invert(p.y_prime())));
  for (long long n = 0; n <= 10; ++n) {
    CHECK(p.f_n(p.gen(1), n) == FreeWord(3, {1}));
    CHECK(p.f_n(p.relator(), n).empty());
  }
  CounterRng rng(403);
  for (int trial = 0; trial < 300; ++trial) {
    FreeWord u = random_surface_word(rng, p, 6);
    FreeWord v = random_surface_word(rng, p, 6);
    long long n = static_cast<long long>(rng.below(6));
    CHECK(p.f_n(concat(u, v), n) == concat(p.f_n(u, n), p.f_n(v, n)));
  }
}

TEST_CASE("dehn algorithm word problem") {
  SurfacePresentation p(1);
  CHECK(p.is_trivial(p.relator()));
  CHECK_FALSE(p.is_trivial(p.gen(1)));
  CHECK(p.is_trivial(conjugate(p.relator(), p.gen(p.b()))));
  CHECK(p.is_trivial(concat(p.relator(), p.relator())));
  CHECK(p.is_trivial(invert(p.relator())));

  // two-sided oracle on random words: a nontrivial f_n image or nonzero
  // homology certifies nontriviality; a trivial verdict must be compatible
  // with both oracles
  CounterRng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    FreeWord w = random_surface_word(rng, p, 10);
    bool fn_alive = false;
    for (long long n = 0; n <= 12 && !fn_alive; ++n) fn_alive = !p.f_n(w, n).empty();
    bool hom_alive = !homology_zero(p, w);
    bool trivial = p.is_trivial(w);
    if (fn_alive || hom_alive) CHECK_FALSE(trivial);
    if (trivial) {
      CHECK(homology_zero(p, w));
      CHECK_FALSE(fn_alive);
    }
  }
  // and on products w * relator * w^-1 * w2, equal in the group to w2
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord w = random_surface_word(rng, p, 5);
    FreeWord w2 = random_surface_word(rng, p, 5);
    FreeWord prod = concat(conjugate(p.relator(), w), w2);
    CHECK(p.is_trivial(prod) == p.is_trivial(w2));
  }
}

TEST_CASE("ball enumeration") {
  SurfacePresentation p(1);
  auto b1 = p.ball_elements(1);
  CHECK(b1.size() == 12);
  auto b2 = p.ball_elements(2);
  std::set<FreeWord> b2set(b2.begin(), b2.end());
  for (const auto& w : b1) CHECK(b2set.count(w) == 1);

  auto b3 = p.ball_elements(3);
  // dedup audit: no two distinct entries are equal in the group
  for (std::size_t i = 0; i < b3.size(); ++i) {
    for (std::size_t j = i + 1; j < b3.size(); ++j) {
      if (p.is_trivial(concat(b3[i], invert(b3[j])))) {
        FAIL("duplicate ball entries " << print_word(b3[i]) << " and " << print_word(b3[j]));
      }
    }
  }
  CHECK_THROWS_AS(p.ball_elements(7), std::invalid_argument);
}

TEST_CASE("half-surface decomposition") {
  SurfacePresentation p(1);
  // w = a1 b c1
  FreeWord w = concat(concat(p.gen(1), p.gen(p.b())), p.gen(p.c(1)));
  auto d = p.decompose(w);
  REQUIRE(d.pieces.size() == 2);
  CHECK(d.exponents == std::vector<long long>{0, 1, 0});
  CHECK(d.pieces[0].word == p.gen(p.c(1)));  // w'_0 is the rightmost piece
  CHECK(d.pieces[0].half == HalfSurface::lower);
  CHECK(d.pieces[1].word == p.gen(1));
  CHECK(d.pieces[1].half == HalfSurface::upper);
  CHECK(p.recompose(d) == w);

  auto db = p.decompose(pow(p.gen(p.b()), 3));
  CHECK(db.pieces.empty());
  CHECK(db.exponents == std::vector<long long>{3});

  // class-boundary split gets a zero exponent and alternating halves
  auto ds = p.decompose(concat(p.gen(1), p.gen(p.c(1))));
  REQUIRE(ds.pieces.size() == 2);
  CHECK(ds.exponents == std::vector<long long>{0, 0, 0});
  CHECK(ds.pieces[0].half != ds.pieces[1].half);

  CHECK_THROWS_AS(p.decompose(FreeWord(p.num_gens())), std::invalid_argument);

  // reconstruction is exact (free equality, hence equality in the group) on
  // the radius-3 ball, and interior zero exponents separate opposite halves
  for (const FreeWord& v : p.ball_elements(3)) {
    auto dv = p.decompose(v);
    CHECK(p.recompose(dv) == v);
    for (std::size_t i = 1; i + 1 < dv.exponents.size(); ++i) {
      if (dv.exponents[i] == 0) {
        CHECK(dv.pieces[i - 1].half != dv.pieces[i].half);
      }
    }
    for (const auto& piece : dv.pieces) CHECK_FALSE(piece.word.empty());
  }
}

TEST_CASE("empirical onsets") {
  SurfacePresentation p(1);
  CHECK(p.onset_empirical(p.gen(1), 16, 64) == 0);
  CHECK(p.onset_empirical(p.gen(p.b()), 16, 64) == 1);  // f_0(b) = 1, then y^n y'^-n
  CHECK(p.f_n(p.gen(p.b()), 0).empty());
}

TEST_CASE("certified onsets") {
  SurfacePresentation p(1);

  CertifiedOnset cb = p.onset_certified(p.gen(p.b()));
  for (long long n = cb.onset; n <= cb.onset + 30; ++n) {
    CHECK_FALSE(p.f_n(p.gen(p.b()), n).empty());
  }

  CertifiedOnset ca = p.onset_certified(p.gen(1));
  CHECK(ca.onset == 1);  // constant nontrivial image, degenerate path

  CHECK_THROWS_AS(p.onset_certified(p.relator()), std::invalid_argument);

  for (const FreeWord& w : p.ball_elements(2)) {
    CertifiedOnset c = p.onset_certified(w);
    CHECK(c.onset >= 1);
    auto emp = p.onset_empirical(w, 16, c.onset + 64);
    REQUIRE(emp.has_value());
    CHECK(*emp <= c.onset);
    for (long long n = c.onset; n <= c.onset + 16; ++n) {
      CHECK_FALSE(p.f_n(w, n).empty());
    }
  }
}

TEST_CASE("rho power family matches f_n") {
  for (int r : {1, 2}) {
    SurfacePresentation p(r);
    CHECK(p.rho_power_symbolic(p.gen(p.b()), 1) == concat(p.y(), invert(p.y_prime())));
    for (long long n = 0; n <= 8; ++n) {
      CHECK(p.rho_power_symbolic(p.relator(), n).empty());
      for (int g = 1; g <= p.num_gens(); ++g) {
        CHECK(p.rho_power_symbolic(p.gen(g), n) == p.f_n(p.gen(g), n));
      }
    }
  }
  SurfacePresentation p1(1);
  for (const FreeWord& w : p1.ball_elements(2)) {
    for (long long n = 0; n <= 8; ++n) {
      CHECK(p1.rho_power_symbolic(w, n) == p1.f_n(w, n));
    }
  }
}
