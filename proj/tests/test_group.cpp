#include <doctest.h>

#include <algorithm>
#include <set>

#include "cantorlab/group.hpp"

using namespace cantorlab;

namespace {

// independent order computation by repeated multiplication
int element_order(const FiniteGroup& g, int x) {
  int cur = x, ord = 1;
  while (cur != g.identity) {
    cur = g.mul[cur][x];
    ++ord;
  }
  return ord;
}

}  // namespace

TEST_CASE("cyclic group is modular addition") {
  const FiniteGroup g = build_group("cyclic 4");
  CHECK(g.order == 4);
  CHECK(g.identity == 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(g.mul[a][b] == (a + b) % 4);
  validate_group(g);
}

TEST_CASE("symmetric 3 has order 6") {
  const FiniteGroup g = build_group("symmetric 3");
  CHECK(g.order == 6);
  validate_group(g);
}

TEST_CASE("product of cyclic 2 and cyclic 3 has a generator of order 6") {
  const FiniteGroup g = build_group("product(cyclic 2, cyclic 3)");
  CHECK(g.order == 6);
  int max_order = 0;
  for (int x = 0; x < g.order; ++x) max_order = std::max(max_order, element_order(g, x));
  CHECK(max_order == 6);
}

TEST_CASE("malformed tables are rejected with a witness") {
  // no identity
  CHECK_THROWS_WITH_AS(build_group_from_table({{1, 0}, {1, 0}}),
                       doctest::Contains("identity"), std::invalid_argument);
  // associativity violation: Latin square with identity that is not a group
  std::vector<std::vector<int>> bad = {{0, 1, 2, 3, 4},
                                       {1, 0, 3, 4, 2},
                                       {2, 4, 0, 1, 3},
                                       {3, 2, 4, 0, 1},
                                       {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(build_group_from_table(bad), doctest::Contains("associative"),
                       std::invalid_argument);
}

TEST_CASE("group table text format round trips") {
  const FiniteGroup g = group_from_table_text("2\n0 1\n1 0\n");
  CHECK(g.order == 2);
  CHECK(g.mul[1][1] == 0);
}

TEST_CASE("cyclic tower reduces modulo each level") {
  const QuotientTower t = build_cyclic_tower({2, 4, 8});
  CHECK(t.depth() == 3);
  CHECK(t.project_to(3, 1) == 1);  // 3 mod 4 mod 2
  CHECK(t.project_to(6, 2) == 2);
  validate_tower(t);
}

TEST_CASE("tower rejects non-divisible chains and empty chains") {
  CHECK_THROWS_WITH_AS(build_cyclic_tower({2, 3}), doctest::Contains("divisibility"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_cyclic_tower({}), std::invalid_argument);
}

TEST_CASE("least separating level is minimal") {
  const QuotientTower t = build_cyclic_tower({2, 4, 8});
  CHECK(t.least_separating_level(0, 1) == 1);
  CHECK(t.least_separating_level(1, 3) == 2);  // agree mod 2, differ mod 4
  CHECK(t.least_separating_level(1, 5) == 3);  // agree mod 4
  // minimality: no earlier level separates
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      const int d = t.least_separating_level(a, b);
      for (int e = 1; e < d; ++e) CHECK(t.project_to(a, e) == t.project_to(b, e));
      CHECK(t.project_to(a, d) != t.project_to(b, d));
    }
}

TEST_CASE("left translation is free, faithful and transitive") {
  for (const char* spec : {"cyclic 4", "symmetric 3"}) {
    const GroupAction a = left_translation_action(build_group(spec));
    CHECK(a.flags.free_action);
    CHECK(a.flags.faithful);
    CHECK(a.flags.transitive);
  }
}

TEST_CASE("quotient translation loses faithfulness with a witness") {
  const FiniteGroup z4 = build_cyclic_group(4);
  const FiniteGroup z2 = build_cyclic_group(2);
  const GroupAction a = quotient_translation_action(z4, z2, {0, 1, 0, 1});
  CHECK_FALSE(a.flags.faithful);
  REQUIRE(a.flags.faithful_witness.has_value());
  CHECK(*a.flags.faithful_witness == std::pair<int, int>{0, 2});
}

TEST_CASE("trivial action is not free") {
  const FiniteGroup z2 = build_cyclic_group(2);
  const GroupAction a = action_from_table(z2, 3, {{0, 1, 2}, {0, 1, 2}});
  CHECK_FALSE(a.flags.free_action);
  REQUIRE(a.flags.free_witness.has_value());
  CHECK(a.flags.free_witness->first == 1);
}

TEST_CASE("non-bijective action rows are rejected") {
  const FiniteGroup z4 = build_cyclic_group(4);
  CHECK_THROWS_WITH_AS(
      action_from_table(z4, 4,
                        {{0, 1, 2, 3}, {1, 1, 2, 3}, {2, 3, 0, 1}, {3, 0, 1, 2}}),
      doctest::Contains("permutation"), std::invalid_argument);
}

TEST_CASE("free action has trivial stabilizer and full coset count") {
  const GroupAction a = left_translation_action(build_symmetric_group(3));
  std::vector<std::vector<int>> singles;
  for (int i = 0; i < 6; ++i) singles.push_back({i});
  const auto dec = stabilizer_and_cosets(a, singles, {a.group.identity});
  CHECK(dec.stabilizer == std::vector<int>{a.group.identity});
  CHECK(dec.representatives.size() == 6);
  CHECK(dec.representatives.front() == a.group.identity);
}

TEST_CASE("natural S3 on three points has stabilizer of order two") {
  const FiniteGroup s3 = build_symmetric_group(3);
  // natural action: element ids enumerate one-line permutations lexicographically
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const GroupAction a = action_from_table(s3, 3, perms);
  std::vector<std::vector<int>> singles = {{0}, {1}, {2}};
  const auto dec = stabilizer_and_cosets(a, singles, {0});
  CHECK(dec.stabilizer.size() == 2);
  CHECK(dec.representatives.size() == 3);

  // orbit-stabilizer over every block
  for (const auto& block : singles) {
    const auto d = stabilizer_and_cosets(a, singles, block);
    CHECK(d.representatives.size() * d.stabilizer.size() == 6);
  }
}

TEST_CASE("block outside the partition is rejected") {
  const GroupAction a = left_translation_action(build_cyclic_group(4));
  std::vector<std::vector<int>> singles = {{0}, {1}, {2}, {3}};
  CHECK_THROWS_WITH_AS(stabilizer_and_cosets(a, singles, {0, 1}),
                       doctest::Contains("partition"), std::invalid_argument);
}
