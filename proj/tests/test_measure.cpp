#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace pfree;
using oracle::Raw;

namespace {
  Rational Q(const char* s) {
    return parse_rational(s);
  }

  template <std::size_t N>
  void check_sequence(const DensityReport& r, const std::array<const char*, N>& ref) {
    REQUIRE(r.values.size() == N);
    for (std::size_t i = 0; i < N; ++i) {
      REQUIRE(r.values[i].n == i + 1);
      REQUIRE(r.values[i].value == Q(ref[i]));
    }
  }
}  // namespace

TEST_CASE("rational parsing", "[measure]") {
  CHECK(Q("3/4") == Rational(3, 4));
  CHECK(Q("6/8") == Rational(3, 4));
  CHECK(Q("7") == 7);
  CHECK(Q("0.15") == Rational(3, 20));
  CHECK(Q("0.05") == Rational(1, 20));
  CHECK(Q("010/3") == Rational(10, 3));
  CHECK(Q("-1.5") == Rational(-3, 2));
  for (const char* bad : {"", "abc", "1/0", ".", "1.2.3", "0x10"}) {
    CHECK_THROWS_AS(Q(bad), Error);
  }
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(2)) == "2/1");
}

TEST_CASE("single word measure", "[measure]") {
  Alphabet A2(2);
  CHECK(mu_word(Word(A2, {1})) == Rational(1, 4));
  CHECK(mu_word(Word(A2, {1, 2, -1})) == Rational(1, 36));
  CHECK(mu_word(Word(A2)) == 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    Rational total = 0;
    for (const Word& w : enumerate_layer(A2, n)) {
      total += mu_word(w);
    }
    REQUIRE(total == 1);
  }
}

TEST_CASE("set measure", "[measure]") {
  Alphabet A2(2);
  WordSet  layer2 = WordSet::from_predicate(A2, 2, [](auto v) { return v.size() == 2; });
  CHECK(mu_set(layer2, 2) == 1);
  CHECK(mu_set(WordSet(A2, 5), 5) == 0);
  // The empty word carries no weight.
  WordSet eps(A2, 3);
  eps.insert(Word(A2));
  CHECK(mu_set(eps, 3) == 0);
  try {
    (void)mu_set(layer2, 3);
    FAIL("expected incomplete data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::incomplete_data);
  }
  WordSet ext = extremal_mod_k({A2, Letter(1), 2, 1, 8});
  CHECK(mu_set(ext, 8) == Q(fixtures::extremal_a2_k2_mu8));
  Rational last = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    REQUIRE(mu_set(ext, n) >= last);
    last = mu_set(ext, n);
  }
}

TEST_CASE("splitting constant", "[measure]") {
  CHECK(kappa(2) == Rational(4, 3));
  CHECK(kappa(3) == Rational(6, 5));
  CHECK(kappa(Alphabet::semigroup(2)) == 1);
  for (int a : {1, 2, 3}) {
    Alphabet alph(a);
    for (std::size_t i = 1; i <= 8; ++i) {
      for (std::size_t j = 1; j <= 8; ++j) {
        mpz_class lhs = count_layer(alph, i).value * count_layer(alph, j).value;
        REQUIRE(Rational(lhs) == kappa(alph) * Rational(count_layer(alph, i + j).value));
      }
    }
  }
}

TEST_CASE("density of the whole ambient is one", "[measure]") {
  Alphabet     A2(2);
  Subsemigroup g = Subsemigroup::xy(A2, Letter(1), Letter(2));
  WordSet      s = coset_set(Coset(g), 8);
  auto         r = density_sequence(s, Coset(g), 8);
  for (const auto& p : r.values) {
    REQUIRE(p.value == 1);
  }
  CHECK(r.tail_max == 1);
  CHECK(r.tail_from == 4);
}

TEST_CASE("xy slices inside the free group", "[measure]") {
  Alphabet A2(2);
  auto     slice = [&](int x, int y) {
    return coset_set(Coset(Subsemigroup::xy(A2, Letter(x), Letter(y))), 10);
  };
  check_sequence(density_sequence(slice(1, 1), Family::whole(A2), 10), fixtures::xy_a2_aa);
  check_sequence(density_sequence(slice(1, 2), Family::whole(A2), 10), fixtures::xy_a2_ab);
  // x = y^-1 is not a subsemigroup but is still a set of words.
  WordSet aA = WordSet::from_predicate(A2, 10, [](std::span<const Letter> v) {
    return !v.empty() && v.front() == Letter(1) && v.back() == Letter(-1);
  });
  check_sequence(density_sequence(aA, Family::whole(A2), 10), fixtures::xy_a2_aA);
}

TEST_CASE("extremal densities", "[measure]") {
  Alphabet A2(2);
  auto     ext = [&](int k) { return extremal_mod_k({A2, Letter(1), k, 1, 12}); };
  check_sequence(density_sequence(ext(2), Family::whole(A2), 12), fixtures::extremal_a2_k2);
  check_sequence(density_sequence(ext(3), Family::whole(A2), 12), fixtures::extremal_a2_k3);
  check_sequence(density_sequence(ext(4), Family::whole(A2), 12), fixtures::extremal_a2_k4);
  auto d3 = density_sequence(ext(3), Family::whole(A2), 12).at(12);
  REQUIRE(d3);
  CHECK(abs(*d3 - Rational(1, 3)) <= Rational(1, 50));
  Alphabet A3(3);
  check_sequence(density_sequence(extremal_mod_k({A3, Letter(1), 2, 1, 8}), Family::whole(A3), 8),
                 fixtures::extremal_a3_k2);
}

TEST_CASE("density containment error names the witness", "[measure]") {
  Alphabet     A2(2);
  Subsemigroup g = Subsemigroup::xy(A2, Letter(1), Letter(1));
  WordSet      s = WordSet::from_words(A2, 4, std::vector<Word>{Word(A2, {1}), Word(A2, {2})});
  try {
    (void)density_sequence(s, Coset(g), 4);
    FAIL("expected a containment error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::containment);
    CHECK(std::string(e.what()).find("'b'") == std::string::npos);
    CHECK(std::string(e.what()).find("b ") != std::string::npos);
  }
}

TEST_CASE("density relative to a word set", "[measure]") {
  Alphabet A2(2);
  WordSet  h = WordSet::from_predicate(A2, 6, [](auto v) { return v.size() % 2 == 0; });
  WordSet  a = WordSet::from_predicate(A2, 6, [](auto v) { return v.size() == 4; });
  auto     r = density_sequence(a, h, 6);
  // Layer 1 has no ambient mass, so it is skipped.
  REQUIRE(r.values.front().n == 2);
  CHECK(*r.at(2) == 0);
  CHECK(*r.at(4) == Rational(1, 2));
  CHECK(*r.at(6) == Rational(1, 3));
}

TEST_CASE("relative density over a coset", "[measure]") {
  Alphabet     A2(2);
  Subsemigroup g    = Subsemigroup::xy(A2, Letter(1), Letter(1));
  Coset        base = Coset(g);
  Coset        a    = base.refine(Word(A2, {1}));
  WordSet      s    = coset_set(a, 8);
  // All of aG inside aG, and its share of G.
  CHECK(*relative_density(s, a, 8) == 1);
  Rational share = mu_set(s, 8) / mu_family(Family(base), 8);
  CHECK(*relative_density(s, base, 8) == share);
  // Extremal members of aG, by brute force over the ball.
  WordSet  ext = extremal_mod_k({A2, Letter(1), 2, 1, 8});
  Rational num = 0, den = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Raw& v : oracle::reduced_words(2, n)) {
      Rational m(1, count_layer(A2, n).value);
      if (oracle::in_coset(v, {1}, 1, 1)) {
        den += m;
        if (oracle::exponent_sum(v, 1) % 2 != 0) {
          num += m;
        }
      }
    }
  }
  CHECK(*relative_density(ext, a, 8) == num / den);
  CHECK_FALSE(relative_density(s, a.refine(Word(A2, {1, 2, 1})), 3));
}

TEST_CASE("semigroup extremal densities", "[measure]") {
  Alphabet s = Alphabet::semigroup(2);
  check_sequence(density_sequence(extremal_mod_k({s, Letter(1), 2, 1, 12}), Family::whole(s), 12),
                 fixtures::semigroup_a2_k2);
  check_sequence(density_sequence(extremal_mod_k({s, Letter(1), 3, 1, 12}), Family::whole(s), 12),
                 fixtures::semigroup_a2_k3);
}
