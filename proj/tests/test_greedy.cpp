#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace pfree;
using oracle::Raw;

namespace {
  const Alphabet A2(2);

  Subsemigroup g_aa(const Alphabet& alph = A2) {
    return alph.has_inverses() ? subsemigroup_xy(alph, Letter(1), Letter(1))
                               : Subsemigroup::whole(alph);
  }

  WordSet extremal_in_g(int k, std::size_t cap, const Alphabet& alph = A2) {
    return extremal_mod_k({alph, Letter(1), k, 1, cap}).restricted(Coset(g_aa(alph)));
  }

  // Sign of (q + 1)^2 - 2, i.e. where q sits relative to sqrt(2) - 1.
  int cmp_sqrt2m1(const Rational& q) {
    Rational t = (q + 1) * (q + 1);
    return t < 2 ? -1 : t > 2 ? 1 : 0;
  }
}  // namespace

TEST_CASE("lemma bound examples", "[greedy]") {
  CHECK(lemma_bound_q(0, 3).value == 1);
  CHECK(lemma_bound_q(1, 4).value == Rational(1, 4));
  CHECK(lemma_bound_q(Rational(1, 2), 3).value == Rational(4, 7));
  auto c = lemma_bound_q(2, 3);
  CHECK(c.clamped);
  CHECK(c.value == Rational(1, 3));
  CHECK(lemma_bound(Rational(3, 8), 2, A2).value == Rational(2, 3));
  CHECK_THROWS_AS(lemma_bound_q(-1, 2), Error);
  CHECK_THROWS_AS(lemma_bound_q(0, 1), Error);
}

TEST_CASE("poly_f values", "[greedy]") {
  Rational pr = Rational(1, 5);
  for (int k : {2, 3, 4, 5}) {
    CHECK(poly_f(0, k, pr, A2) == pr / k);
  }
  // k = 2: PrG (1 - kappa x) / 2.
  CHECK(poly_f(Rational(3, 4), 2, pr, A2) == 0);
  CHECK(poly_f(Rational(3, 8), 2, 1, A2) == Rational(1, 4));
  // k = 3: PrG (kappa x - 1)^2 / 3.
  CHECK(poly_f(Rational(3, 8), 3, 1, A2) == Rational(1, 12));
  CHECK_THROWS_AS(poly_f(0, 2, Rational(3, 2), A2), Error);
}

TEST_CASE("poly_f roots", "[greedy]") {
  CHECK_FALSE(poly_f_root(2, A2));
  CHECK_FALSE(poly_f_root(3, A2));
  auto r = poly_f_root(4, A2);
  REQUIRE(r);
  CHECK(r->hi - r->lo <= Rational(1, 1000000));
  Rational kap = kappa(A2);
  CHECK(cmp_sqrt2m1(kap * r->lo) <= 0);
  CHECK(cmp_sqrt2m1(kap * r->hi) >= 0);
  CHECK(poly_f(r->lo, 4, 1, A2) >= 0);
  CHECK(poly_f(r->hi, 4, 1, A2) <= 0);
  // Without inverses kappa is 1 and the root is sqrt(2) - 1 itself.
  Alphabet s = Alphabet::semigroup(2);
  CHECK_FALSE(poly_f_root(2, s));
  CHECK_FALSE(poly_f_root(3, s));
  auto rs = poly_f_root(4, s);
  REQUIRE(rs);
  CHECK(cmp_sqrt2m1(rs->lo) <= 0);
  CHECK(cmp_sqrt2m1(rs->hi) >= 0);
  // Roots for k >= 4 all land inside.
  for (int k = 4; k <= 8; ++k) {
    REQUIRE(poly_f_root(k, A2));
  }
}

TEST_CASE("pseudorandom check", "[greedy]") {
  auto c = kprod_pseudorandom_check(Rational(3, 10), Rational(1, 20), 3);
  CHECK(c.lhs == Rational(111, 160));
  CHECK(c.holds);
  CHECK(kprod_pseudorandom_check(1, 0, 2).lhs == 2);
  CHECK_FALSE(kprod_pseudorandom_check(1, 0, 2).holds);
  CHECK_THROWS_AS(kprod_pseudorandom_check(0, 0, 2), Error);
}

TEST_CASE("probability of the ambient", "[greedy]") {
  Coset h(g_aa());
  Rational ref = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    ref += Rational(count_subsemigroup_layer(g_aa(), n)) / Rational(count_layer(A2, n).value);
  }
  CHECK(probability_in(h, 6) == ref / 6);
  CHECK_THROWS_AS(probability_in(h, 0), Error);
}

TEST_CASE("simple builder on a single layer", "[greedy]") {
  WordSet ext = extremal_in_g(2, 6);
  WordSet s   = WordSet::from_words(A2, 6, ext.layer(3));
  REQUIRE(s.size() > 0);
  auto t = build_W_simple(s, 2, g_aa(), 6);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].layer == 3);
  CHECK(t.steps[0].added == s.size());
  CHECK(t.steps[0].measure == Rational(static_cast<long>(s.size()), 36));
  CHECK(t.stop == StopReason::layers_exhausted);
  CHECK(t.final_set.words() == s.words());
  CHECK(t.target == Rational(3, 4));
}

TEST_CASE("simple builder rejects bad input", "[greedy]") {
  Coset   h(g_aa());
  WordSet whole = coset_set(h, 6);
  try {
    (void)build_W_simple(whole, 2, g_aa(), 6);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
  WordSet outside = extremal_mod_k({A2, Letter(1), 2, 1, 6});
  try {
    (void)build_W_simple(outside, 2, g_aa(), 6);
    FAIL("expected a containment error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::containment);
  }
  CHECK_THROWS_AS(build_W_simple(extremal_in_g(2, 6), 2, g_aa(), 7), Error);
  CHECK_THROWS_AS(build_W_simple(extremal_in_g(2, 6), 1, g_aa(), 6), Error);
}

TEST_CASE("simple builder trace for k = 2 at cap 14", "[greedy]") {
  WordSet       s = extremal_in_g(2, 14);
  GreedyOptions opt;
  opt.verify_product_free = false;
  auto t = build_W_simple(s, 2, g_aa(), 14, opt);
  REQUIRE(t.steps.size() == fixtures::greedy_a2_k2_cap14.size());
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& ref = fixtures::greedy_a2_k2_cap14[i];
    REQUIRE(t.steps[i].layer == ref.layer);
    REQUIRE(t.steps[i].added == ref.added);
    REQUIRE(t.steps[i].measure == parse_rational(ref.measure));
  }
  CHECK(to_string(t.stop) == fixtures::greedy_a2_k2_cap14_stop);
  Rational last = 0;
  for (const auto& st : t.steps) {
    REQUIRE(st.measure > last);
    REQUIRE(st.measure - last == st.increment);
    REQUIRE(st.certified > 0);
    last = st.measure;
  }
  CHECK(mu_set(t.final_set, 14) == last);
  CHECK(is_divisor_free(t.final_set, t.ambient));
}

TEST_CASE("simple builder output properties at cap 10", "[greedy]") {
  for (int k : {2, 3}) {
    WordSet s = extremal_in_g(k, 10);
    auto    t = build_W_simple(s, k, g_aa(), 10);
    const WordSet& w = t.final_set;
    REQUIRE_FALSE(w.empty());
    CHECK(is_divisor_free(w, t.ambient));
    CHECK(has_unique_products(w, t.ambient, 10));
    // Oracle cross-check on the words themselves.
    auto raws = oracle::raws(w);
    CHECK_FALSE(oracle::has_divisor_pair(raws, {}, 1, 1));
    CHECK_FALSE(oracle::has_collision(raws, 2, {}, 1, 1, 6));
    auto ladder = product_ladder(w, s, static_cast<std::size_t>(k), 10);
    CHECK_FALSE(find_ladder_overlap(ladder));
    Rational mu    = t.steps.back().measure;
    Rational bound = lemma_bound(mu, k, A2).value;
    Rational dn    = *density_sequence(s, Coset(g_aa()), 10).at(10);
    CHECK(dn <= bound);
  }
}

TEST_CASE("k = 4 stalls at the root and the regular builder passes it", "[greedy]") {
  auto root = poly_f_root(4, A2);
  REQUIRE(root);
  WordSet s = extremal_in_g(4, 12);
  auto    t = build_W_simple(s, 4, g_aa(), 12);
  REQUIRE(t.stop == StopReason::certificate_exhausted);
  Rational mu   = t.steps.back().measure;
  Rational prev = mu - t.steps.back().increment;
  CHECK(mu >= root->lo);
  CHECK(prev < root->hi);

  RegularOptions ro;
  ro.depth = 3;
  auto r   = build_W_regular(s, Word(A2), Rational(3, 20), g_aa(), 12, ro);
  Rational mr = r.steps.back().measure;
  CHECK(mr > root->hi);
  CHECK(mr > mu);
  CHECK(has_unique_products(r.final_set, r.ambient, 12));
  CHECK(is_divisor_free(r.final_set, r.ambient));
}

TEST_CASE("regular builder keeps chosen layers apart", "[greedy]") {
  Word    base(A2, {1});
  WordSet s = extremal_mod_k({A2, Letter(1), 3, 1, 12}).restricted(Coset(g_aa(), base));
  auto    t = build_W_regular(s, base, Rational(3, 20), g_aa(), 12);
  CHECK(t.spacing == 1);
  REQUIRE(t.steps.size() >= 2);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    for (std::size_t j = i + 1; j < t.steps.size(); ++j) {
      std::size_t a = t.steps[i].layer, b = t.steps[j].layer;
      REQUIRE((a > b ? a - b : b - a) > base.size());
    }
  }
  CHECK(has_unique_products(t.final_set, t.ambient, 12));
  REQUIRE(t.density);
  CHECK(t.target == *t.density / (kappa(A2) * (*t.density + Rational(3, 10))));
}

TEST_CASE("regular builder refuses an irregular slice", "[greedy]") {
  Word    base(A2, {1, 2, 1});
  WordSet s = extremal_mod_k({A2, Letter(1), 2, 1, 12}).restricted(Coset(g_aa(), base));
  try {
    (void)build_W_regular(s, base, Rational(3, 20), g_aa(), 12);
    FAIL("expected a regularity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::regularity_unverified);
  }
}

TEST_CASE("regularity probe", "[greedy]") {
  Coset h(g_aa());
  auto  whole = regularity_probe(coset_set(h, 8), g_aa(), Word(A2), Rational(1, 100), 2, 8);
  CHECK(whole.regular);
  CHECK(whole.base_density == 1);
  CHECK(whole.max_refined == 1);
  // Refinements of length 1 and 2 inside F^{a,a}: a and aa.
  CHECK(whole.probed == 2);

  // Everything under aG and nothing else.
  WordSet top = coset_set(h.refine(Word(A2, {1})), 8);
  auto    v   = regularity_probe(top, g_aa(), Word(A2), Rational(1, 10), 2, 8);
  CHECK_FALSE(v.regular);
  REQUIRE(v.witness);
  CHECK(*v.witness == Word(A2, {1}));
  CHECK(*v.witness_density == 1);
  CHECK(*v.witness_density > v.base_density + Rational(1, 10));
  CHECK_THROWS_AS(regularity_probe(top, g_aa(), Word(A2), -1, 2, 8), Error);
}

TEST_CASE("density increment chains", "[greedy]") {
  Coset    h(g_aa());
  Rational eps(1, 10);
  auto check_chain = [&](const IncrementResult& r) {
    REQUIRE(r.conclusive);
    REQUIRE(r.verdict);
    CHECK(r.verdict->regular);
    for (std::size_t i = 1; i < r.chain.size(); ++i) {
      REQUIRE(r.chain[i].density > r.chain[i - 1].density);
      REQUIRE(r.chain[i].density - r.chain[i - 1].density > eps);
    }
    CHECK(Rational(static_cast<long>(r.chain.size())) < 1 / eps + 1);
    CHECK(r.chain.back().base == r.base);
  };

  auto regular = density_increment_search(coset_set(h, 8), g_aa(), eps, 2, 8);
  check_chain(regular);
  CHECK(regular.chain.size() == 1);
  CHECK(regular.base.empty());

  WordSet top       = coset_set(h.refine(Word(A2, {1})), 8);
  auto    irregular = density_increment_search(top, g_aa(), eps, 2, 8);
  check_chain(irregular);
  CHECK(irregular.chain.size() >= 2);
  CHECK(irregular.base == Word(A2, {1}));

  CHECK_THROWS_AS(density_increment_search(top, g_aa(), 0, 2, 8), Error);
}

TEST_CASE("extremal slice regularity at horizon 12", "[greedy]") {
  WordSet s = extremal_in_g(2, 12);
  auto    tight = regularity_probe(s, g_aa(), Word(A2), Rational(1, 20), 3, 12);
  CHECK_FALSE(tight.regular);
  REQUIRE(tight.witness);
  CHECK(*tight.witness == Word(A2, {1}));
  CHECK(tight.base_density == Rational(202043, 348758));
  CHECK(*tight.witness_density == Rational(133798, 197445));
  auto loose = regularity_probe(s, g_aa(), Word(A2), Rational(3, 20), 3, 12);
  CHECK(loose.regular);
  CHECK(loose.max_refined == Rational(28079, 40596));
  CHECK(loose.max_refined <= loose.base_density + Rational(3, 20));
  // Refinements of length 1..3 inside F^{a,a}: a, aa, then aaa, aba, ab'a.
  CHECK(loose.probed == 1 + 1 + 3);
}
