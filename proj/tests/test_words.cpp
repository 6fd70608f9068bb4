#include <doctest.h>

#include <numeric>

#include "cantorlab/scenario.hpp"
#include "cantorlab/words.hpp"

using namespace cantorlab;

namespace {

GroupAction z4_action() { return left_translation_action(build_cyclic_group(4)); }

Substitution z4_tau() { return substitution_from_action(z4_action(), {0, 1, 3}); }

SubstitutionSequence stationary(const Substitution& s) {
  SubstitutionSequence seq;
  seq.seq = {s};
  return seq;
}

Language full_shift_language(int letters, int max_len) {
  Language lang;
  lang.max_len = max_len;
  lang.strata.assign(max_len + 1, {});
  for (int l = 1; l <= max_len; ++l) {
    Word w(l, 0);
    while (true) {
      lang.strata[l].insert(w);
      int i = l - 1;
      while (i >= 0 && ++w[i] == letters) w[i--] = 0;
      if (i < 0) break;
    }
  }
  return lang;
}

}  // namespace

TEST_CASE("substitution from the Z/4 translation with gens {0,+1,-1}") {
  const Substitution tau = z4_tau();
  CHECK(tau.constant_length == 3);
  CHECK(tau.images[0] == Word{0, 1, 3});
  CHECK(tau.images[1] == Word{1, 2, 0});
  CHECK(tau.images[2] == Word{2, 3, 1});
  CHECK(tau.images[3] == Word{3, 0, 2});
}

TEST_CASE("generator list preconditions") {
  const GroupAction a = z4_action();
  CHECK(substitution_from_action(a, {0}).images[2] == Word{2});
  CHECK_THROWS_WITH_AS(substitution_from_action(a, {1, 0, 3}),
                       doctest::Contains("identity"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(substitution_from_action(a, {0, 1}), doctest::Contains("symmetric"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(substitution_from_action(a, {0, 1, 3, 1}),
                       doctest::Contains("duplicate"), std::invalid_argument);
}

TEST_CASE("two-step iteration of the Z/4 substitution") {
  const Substitution tau = z4_tau();
  const Word once = apply_substitution(tau, {0});
  CHECK(apply_substitution(tau, once) == Word{0, 1, 3, 1, 2, 0, 3, 0, 2});
  CHECK(apply_substitution(tau, {}).empty());
  const Substitution id = identity_substitution(4);
  CHECK(apply_substitution(id, {3, 1, 2}) == Word{3, 1, 2});
}

TEST_CASE("length additivity under concatenation") {
  const Substitution tau = z4_tau();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Word u{a}, v{b};
      CHECK(apply_substitution(tau, concat(u, v)).size() ==
            apply_substitution(tau, u).size() + apply_substitution(tau, v).size());
    }
}

TEST_CASE("constant length substitutions have constant column sums") {
  const auto res = primitivity_check(z4_tau());
  for (int b = 0; b < 4; ++b) {
    long long sum = 0;
    for (int a = 0; a < 4; ++a) sum += res.incidence[a][b];
    CHECK(sum == 3);
  }
}

TEST_CASE("language strata at small horizons") {
  const auto seq = stationary(z4_tau());
  const Language l1 = generate_language(seq, 0, 1, 2);
  CHECK(l1.strata[1] == std::set<Word>{{0}, {1}, {2}, {3}});

  const Language l2 = generate_language(seq, 0, 2, 2);
  for (const Word w : {Word{0, 1}, Word{1, 3}, Word{1, 2}, Word{2, 0}, Word{3, 0}, Word{0, 2},
                       Word{3, 1}, Word{0, 3}})
    CHECK(l2.strata[2].count(w) == 1);

  // depth 0: exactly the factors of tau(seed)
  const Language l0 = generate_language(seq, 0, 1, 0);
  CHECK(l0.strata[1] == std::set<Word>{{0}, {1}, {3}});
}

TEST_CASE("generated languages are factor-closed and shift-consistent") {
  const auto seq = stationary(z4_tau());
  const Language lang = generate_language(seq, 0, 8, 4);
  for (int l = 2; l <= lang.max_len; ++l) {
    CHECK_FALSE(lang.strata[l].empty());
    for (const auto& w : lang.strata[l]) {
      CHECK(lang.strata[l - 1].count(Word(w.begin(), w.end() - 1)) == 1);
      CHECK(lang.strata[l - 1].count(Word(w.begin() + 1, w.end())) == 1);
    }
  }
}

TEST_CASE("generation is monotone in depth") {
  const auto seq = stationary(z4_tau());
  const Language a = generate_language(seq, 0, 6, 3);
  const Language b = generate_language(seq, 0, 6, 4);
  for (int l = 1; l <= 6; ++l)
    for (const auto& w : a.strata[l]) CHECK(b.strata[l].count(w) == 1);
}

TEST_CASE("generation agrees with the brute-force oracle") {
  const auto seq = stationary(z4_tau());
  for (int seed = 0; seed < 4; ++seed)
    for (int k = 0; k <= 5; ++k) {
      const Language gen = generate_language(seq, seed, 10, k);
      const Language ora = oracle_language(seq, seed, 10, k);
      for (int l = 1; l <= 10; ++l) CHECK(gen.strata[l] == ora.strata[l]);
    }
}

TEST_CASE("budget overruns are explicit") {
  const auto seq = stationary(z4_tau());
  CHECK_THROWS_AS(generate_language(seq, 0, 12, 20, 100), BudgetError);
  CHECK_THROWS_AS(apply_composition(seq, 20, {0}, 100), BudgetError);
}

TEST_CASE("primitivity of the Z/4 substitution") {
  const auto res = primitivity_check(z4_tau());
  CHECK(res.primitive);
  CHECK(res.power == 2);
  // circulant incidence: first column (1,1,0,1)
  CHECK(res.incidence[0][0] == 1);
  CHECK(res.incidence[1][0] == 1);
  CHECK(res.incidence[2][0] == 0);
  CHECK(res.incidence[3][0] == 1);
}

TEST_CASE("identity substitution is never primitive on two or more letters") {
  const auto res = primitivity_check(identity_substitution(4));
  CHECK_FALSE(res.primitive);
}

TEST_CASE("target letter coverage power") {
  const auto res = primitivity_check(z4_tau(), {0});
  REQUIRE(res.target_power.has_value());
  CHECK(*res.target_power == 2);
}

TEST_CASE("language independence for primitive configurations") {
  const auto seq = stationary(z4_tau());
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK(language_independence_check(seq, a, b, 8, 6).equal);
}

TEST_CASE("language independence fails for the identity substitution") {
  const auto seq = stationary(identity_substitution(4));
  const auto res = language_independence_check(seq, 0, 1, 4, 3);
  CHECK_FALSE(res.equal);
  CHECK(res.divergence_length == 1);
  CHECK(res.witness == Word{0});
}

TEST_CASE("reflexive independence reports true with a note") {
  const auto seq = stationary(z4_tau());
  const auto res = language_independence_check(seq, 2, 2, 4, 3);
  CHECK(res.equal);
  CHECK(res.trivially_reflexive);
}

TEST_CASE("single letters recur in the Z/4 language") {
  const auto seq = stationary(z4_tau());
  const Language lang = generate_language(seq, 0, 32, 6);
  const auto res = recurrence_profile(lang, {0}, 32);
  CHECK(res.uniformly_recurrent);
  CHECK(res.bound >= 1);
  CHECK(res.bound <= 32);
}

TEST_CASE("the full shift is not uniformly recurrent") {
  const Language lang = full_shift_language(2, 4);
  const auto res = recurrence_profile(lang, {0, 1}, 4);
  CHECK_FALSE(res.uniformly_recurrent);
  CHECK(res.gap_witness == Word{0, 0, 0, 0});
}

TEST_CASE("recurrence bound is at least the word length") {
  const auto seq = stationary(z4_tau());
  const Language lang = generate_language(seq, 0, 24, 6);
  const Word w = *lang.strata[6].begin();
  const auto res = recurrence_profile(lang, w, 24);
  if (res.uniformly_recurrent) CHECK(res.bound >= static_cast<int>(w.size()));
}

TEST_CASE("recurrence rejects words outside the language") {
  const auto seq = stationary(z4_tau());
  const Language lang = generate_language(seq, 0, 8, 4);
  // "0 0 0" never occurs: images contain no "0 0" and boundaries contribute at most two zeros
  CHECK_THROWS_AS(recurrence_profile(lang, {0, 0, 0}, 8), std::invalid_argument);
}

TEST_CASE("periodic languages are flagged with their period word") {
  Language constant;
  constant.max_len = 2;
  constant.strata = {{}, {{0}}, {{0, 0}}};
  const auto res = aperiodicity_check(constant, 1);
  CHECK_FALSE(res.aperiodic);
  CHECK(res.period_witness == Word{0});

  Language alternating;
  alternating.max_len = 4;
  alternating.strata = {{}, {{0}, {1}}, {{0, 1}, {1, 0}}, {{0, 1, 0}, {1, 0, 1}},
                        {{0, 1, 0, 1}, {1, 0, 1, 0}}};
  const auto res2 = aperiodicity_check(alternating, 2);
  CHECK_FALSE(res2.aperiodic);
  CHECK(res2.period_witness == Word{0, 1});
}

TEST_CASE("the Z/4 language is aperiodic at horizon") {
  const auto seq = stationary(z4_tau());
  const Language lang = generate_language(seq, 0, 12, 6);
  CHECK(aperiodicity_check(lang, 4).aperiodic);
  CHECK_THROWS_AS(aperiodicity_check(lang, 8), std::invalid_argument);
}

TEST_CASE("sequence distance formula") {
  AlphabetMetric discrete;
  CHECK(seq_distance({0, 1, 2}, {0, 1, 2}, 1, discrete) == Dyadic::zero());
  CHECK(seq_distance({0, 1, 2}, {0, 3, 2}, 1, discrete) == Dyadic::pow2(0));
  // differences at offsets -1 and +1 sum to 1
  CHECK(seq_distance({0, 1, 2}, {3, 1, 3}, 1, discrete) == Dyadic::pow2(0));
  CHECK_THROWS_AS(seq_distance({0, 1}, {0, 1, 2}, 0, discrete), std::invalid_argument);
}

TEST_CASE("tower metric is symmetric and satisfies the triangle inequality") {
  const QuotientTower t = build_cyclic_tower({2, 4, 8});
  AlphabetMetric metric;
  metric.mode = AlphabetMetric::Mode::Tower;
  metric.tower = &t;
  for (int a = 0; a < 8; ++a) {
    CHECK(metric.dist(a, a) == Dyadic::zero());
    for (int b = 0; b < 8; ++b) {
      CHECK(metric.dist(a, b) == metric.dist(b, a));
      for (int c = 0; c < 8; ++c) {
        const Dyadic sum = metric.dist(a, b) + metric.dist(b, c);
        CHECK_FALSE(sum < metric.dist(a, c));
      }
    }
  }
  // letters 1 and 5 agree down to level 2, so dist = 2^{-2}
  CHECK(metric.dist(1, 5) == Dyadic::pow2(2));
}

TEST_CASE("nested sequences require prefix images") {
  const GroupAction a = z4_action();
  SubstitutionSequence seq;
  seq.seq = {substitution_from_action(a, {0, 1, 3}),
             substitution_from_action(a, {0, 1, 3, 2})};
  seq.nested = true;
  validate_sequence(seq);

  SubstitutionSequence broken;
  broken.seq = {substitution_from_action(a, {0, 1, 3}),
                substitution_from_action(a, {0, 2, 1, 3})};
  broken.nested = true;
  CHECK_THROWS_WITH_AS(validate_sequence(broken), doctest::Contains("prefix"),
                       std::invalid_argument);
}

TEST_CASE("complexity profile counts strata") {
  const Language full = full_shift_language(2, 3);
  CHECK(complexity_profile(full) == std::vector<int>{2, 4, 8});
}

TEST_CASE("word files parse one word per line") {
  CHECK(parse_word("0 1 3") == Word{0, 1, 3});
  CHECK(parse_word("").empty());
  CHECK(word_to_string({2, 0, 1}) == "2 0 1");
}
