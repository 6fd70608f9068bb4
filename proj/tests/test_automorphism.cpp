#include <doctest.h>

#include "cantorlab/automorphism.hpp"
#include "cantorlab/scenario.hpp"

using namespace cantorlab;

namespace {

GroupAction z4_action() { return left_translation_action(build_cyclic_group(4)); }

LetterMap z4_shift(int c) {
  LetterMap m;
  m.alphabet_size = 4;
  m.map = {(0 + c) % 4, (1 + c) % 4, (2 + c) % 4, (3 + c) % 4};
  m.label = "+" + std::to_string(c);
  return m;
}

// depth 5 is where the Z/4 per-seed languages coincide, so the shadow is
// closed under the translation lifts
Language z4_language(int max_len = 6, int depth = 5) {
  SubstitutionSequence seq;
  seq.seq = {substitution_from_action(z4_action(), {0, 1, 3})};
  return generate_language(seq, 0, max_len, depth);
}

std::vector<Word> all_words(int alphabet, int max_len) {
  std::vector<Word> out;
  for (int l = 1; l <= max_len; ++l) {
    Word w(l, 0);
    while (true) {
      out.push_back(w);
      int i = l - 1;
      while (i >= 0 && ++w[i] == alphabet) w[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lifting is letterwise") {
  const auto h = lift_letter_map(z4_shift(1));
  CHECK(h.apply({0, 1, 3}) == Word{1, 2, 0});
  CHECK(lift_letter_map(identity_letter_map(4)).apply({2, 2, 0}) == Word{2, 2, 0});
}

TEST_CASE("lifting is functorial on all small words") {
  const auto h1 = lift_letter_map(z4_shift(1));
  const auto h2 = lift_letter_map(z4_shift(2));
  const auto h3 = lift_letter_map(z4_shift(3));
  for (const auto& w : all_words(4, 3)) CHECK(h1.apply(h2.apply(w)) == h3.apply(w));
  for (const auto& w : all_words(4, 3))
    CHECK(lift_letter_map(compose(z4_shift(1), z4_shift(2))).apply(w) == h3.apply(w));
}

TEST_CASE("non-bijective maps are rejected") {
  LetterMap bad;
  bad.alphabet_size = 3;
  bad.map = {0, 0, 2};
  CHECK_THROWS_WITH_AS(lift_letter_map(bad), doctest::Contains("bijection"),
                       std::invalid_argument);
}

TEST_CASE("translations are equivariant for the Z/4 substitution") {
  const Substitution tau = substitution_from_action(z4_action(), {0, 1, 3});
  for (int c = 0; c < 4; ++c) CHECK(verify_equivariance(tau, z4_shift(c)).equivariant);
}

TEST_CASE("a transposition breaks equivariance with witness letter 0") {
  const Substitution tau = substitution_from_action(z4_action(), {0, 1, 3});
  LetterMap swap12;
  swap12.alphabet_size = 4;
  swap12.map = {0, 2, 1, 3};
  const auto res = verify_equivariance(tau, swap12);
  CHECK_FALSE(res.equivariant);
  CHECK(res.witness_letter == 0);
}

TEST_CASE("letterwise maps commute with the shift") {
  const Language lang = z4_language();
  for (int c = 0; c < 4; ++c)
    CHECK(verify_shift_commutation(lift_letter_map(z4_shift(c)), lang).commutes);
}

TEST_CASE("a radius-one map fails the shift commutation check") {
  SlidingAutomorphism h;
  h.base = identity_letter_map(4, "radius1");
  h.letterwise = false;
  h.transform = [](const Word& w) {
    // first letter depends on its right neighbor: not a letterwise map
    Word out = w;
    if (out.size() >= 2) out[0] = (out[0] + out[1]) % 4;
    return out;
  };
  const auto res = verify_shift_commutation(h, z4_language());
  CHECK_FALSE(res.commutes);
}

TEST_CASE("empty language makes the commutation check vacuous") {
  Language empty;
  empty.max_len = 2;
  empty.strata.assign(3, {});
  const auto res = verify_shift_commutation(lift_letter_map(z4_shift(1)), empty);
  CHECK(res.commutes);
  CHECK(res.vacuous);
}

TEST_CASE("right translations centralize the left S3 action") {
  const FiniteGroup s3 = build_symmetric_group(3);
  const GroupAction a = left_translation_action(s3);
  for (int c = 0; c < 6; ++c) {
    LetterMap m;
    m.alphabet_size = 6;
    m.map.resize(6);
    for (int x = 0; x < 6; ++x) m.map[x] = s3.mul[x][c];
    const auto v = classify_normalizer(m, a);
    CHECK(v.accepted);
    CHECK(v.alpha_is_identity);
  }
}

TEST_CASE("conjugations normalize the left S3 action with inner alpha") {
  const FiniteGroup s3 = build_symmetric_group(3);
  const GroupAction a = left_translation_action(s3);
  for (int k = 0; k < 6; ++k) {
    LetterMap m;
    m.alphabet_size = 6;
    m.map.resize(6);
    for (int x = 0; x < 6; ++x) m.map[x] = s3.mul[s3.mul[k][x]][s3.inv[k]];
    const auto v = classify_normalizer(m, a);
    REQUIRE(v.accepted);
    for (int g = 0; g < 6; ++g) CHECK(v.alpha[g] == s3.mul[s3.mul[k][g]][s3.inv[k]]);
  }
}

TEST_CASE("negation on Z/4 induces alpha(g) = -g") {
  const GroupAction a = z4_action();
  LetterMap neg;
  neg.alphabet_size = 4;
  neg.map = {0, 3, 2, 1};
  const auto v = classify_normalizer(neg, a);
  REQUIRE(v.accepted);
  CHECK(v.alpha == std::vector<int>{0, 3, 2, 1});
}

TEST_CASE("exact sequence on S3: kernel is the right translations") {
  const FiniteGroup s3 = build_symmetric_group(3);
  const GroupAction a = left_translation_action(s3);
  std::vector<LetterMap> candidates;
  for (int c = 0; c < 6; ++c) {
    LetterMap m;
    m.alphabet_size = 6;
    m.map.resize(6);
    for (int x = 0; x < 6; ++x) m.map[x] = s3.mul[x][c];
    m.label = "r" + std::to_string(c);
    candidates.push_back(m);
  }
  for (int k = 0; k < 6; ++k) {
    LetterMap m;
    m.alphabet_size = 6;
    m.map.resize(6);
    for (int x = 0; x < 6; ++x) m.map[x] = s3.mul[s3.mul[k][x]][s3.inv[k]];
    m.label = "c" + std::to_string(k);
    candidates.push_back(m);
  }
  const auto rep = exact_sequence_report(candidates, a);
  CHECK(rep.alpha_multiplicative);
  // kernel: the six right translations plus the identity conjugation (= identity map,
  // same as right translation by e)
  std::vector<int> kernel_right;
  for (int idx : rep.kernel)
    if (idx < 6) kernel_right.push_back(idx);
  CHECK(kernel_right == std::vector<int>{0, 1, 2, 3, 4, 5});
  for (int idx : rep.kernel)
    if (idx >= 6) CHECK(candidates[idx].is_identity());
  // image: the inner automorphisms of S3, all six of them
  CHECK(rep.image.size() == 6);
}

TEST_CASE("Z/4 with negation has alpha image of order two") {
  const GroupAction a = z4_action();
  std::vector<LetterMap> candidates;
  for (int c = 0; c < 4; ++c) candidates.push_back(z4_shift(c));
  LetterMap neg;
  neg.alphabet_size = 4;
  neg.map = {0, 3, 2, 1};
  neg.label = "neg";
  candidates.push_back(neg);
  const auto rep = exact_sequence_report(candidates, a);
  CHECK(rep.alpha_multiplicative);
  CHECK(rep.kernel == std::vector<int>{0, 1, 2, 3});
  CHECK(rep.image.size() == 2);
}

TEST_CASE("freeness via the no-fixed-letter criterion") {
  const Language lang = z4_language();
  std::vector<SlidingAutomorphism> lifts;
  for (int c = 1; c < 4; ++c) lifts.push_back(lift_letter_map(z4_shift(c)));
  const auto rep = freeness_check(lifts, lang);
  CHECK(rep.all_certified_free);
  CHECK(rep.entries.size() == 3);
}

TEST_CASE("fixed letters are reported honestly") {
  LetterMap swap12;
  swap12.alphabet_size = 4;
  swap12.map = {0, 2, 1, 3};
  swap12.label = "(12)";
  const auto rep = freeness_check({lift_letter_map(swap12)}, z4_language());
  REQUIRE(rep.entries.size() == 1);
  CHECK_FALSE(rep.all_certified_free);
  CHECK(rep.entries[0].fixed_letters_in_language == std::vector<int>{0, 3});
}

TEST_CASE("identity automorphisms are excluded from the freeness check") {
  const auto rep = freeness_check({lift_letter_map(identity_letter_map(4))}, z4_language());
  CHECK(rep.entries.empty());
  CHECK(rep.all_certified_free);
}

TEST_CASE("Z/4 centralizer embedding with all four translations") {
  const GroupAction a = z4_action();
  std::vector<LetterMap> auts;
  for (int c = 0; c < 4; ++c) auts.push_back(z4_shift(c));
  const auto emb = embed_centralizer(a, {0, 1, 3}, auts, z4_language());
  CHECK(emb.ok);
  CHECK(emb.lifts_distinct);
  CHECK(emb.composition_respected);
  CHECK(emb.language_preserved);
  // composition table is the Z/4 addition table
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(emb.composition_table[i][j] == (i + j) % 4);
}

TEST_CASE("Z/8 centralizer embedding has eight distinct lifts") {
  const GroupAction a = left_translation_action(build_cyclic_group(8));
  SubstitutionSequence seq;
  seq.seq = {substitution_from_action(a, {0, 1, 7})};
  // depth 10 is where the Z/8 per-seed languages coincide at this length,
  // which is what translation-invariance of the finite shadow needs
  const Language lang = generate_language(seq, 0, 6, 10);
  std::vector<LetterMap> auts;
  for (int c = 0; c < 8; ++c) {
    LetterMap m;
    m.alphabet_size = 8;
    m.map.resize(8);
    for (int x = 0; x < 8; ++x) m.map[x] = (x + c) % 8;
    auts.push_back(m);
  }
  const auto emb = embed_centralizer(a, {0, 1, 7}, auts, lang);
  CHECK(emb.ok);
}

TEST_CASE("identity-only embedding is trivially injective") {
  const auto emb = embed_centralizer(z4_action(), {0, 1, 3}, {identity_letter_map(4)},
                                     z4_language());
  CHECK(emb.ok);
}

TEST_CASE("equivariance failures are listed per map") {
  LetterMap swap12;
  swap12.alphabet_size = 4;
  swap12.map = {0, 2, 1, 3};
  const auto emb = embed_centralizer(z4_action(), {0, 1, 3}, {swap12}, z4_language());
  CHECK_FALSE(emb.ok);
  CHECK(emb.equivariance_failures == std::vector<int>{0});
}

TEST_CASE("candidate files parse with sidecar labels") {
  const auto maps = load_letter_maps("id neg\n0 1 2 3\n0 3 2 1\n", 4);
  REQUIRE(maps.size() == 2);
  CHECK(maps[0].label == "id");
  CHECK(maps[1].map == std::vector<int>{0, 3, 2, 1});
  CHECK_THROWS_AS(load_letter_maps("bad\n0 0 1 2\n", 4), std::invalid_argument);
}
