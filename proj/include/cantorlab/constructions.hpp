#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorlab/automorphism.hpp"
#include "cantorlab/group.hpp"
#include "cantorlab/words.hpp"

namespace cantorlab {

/// Action of G + Z/m on the point set G x Z/m; the cyclic factor generates
/// a commuting homeomorphism whose minimal components are the fibers
/// {h} x Z/m.
struct CyclicExtensionSystem {
  FiniteGroup g;
  int modulus = 0;

  int point_count() const { return g.order * modulus; }
  int encode(int h, int k) const { return h * modulus + k; }
  int group_part(int p) const { return p / modulus; }
  int cycle_part(int p) const { return p % modulus; }

  int f(int p) const;                  // the commuting cyclic map
  int f_pow(int p, int n) const;       // f^n, n may be negative
  int translate(int gelem, int p) const;  // T^g
};

CyclicExtensionSystem build_lemma31_system(const FiniteGroup& g, int modulus);

/// Product of the translated copies of one minimal component, with the
/// normalizer maps permuting the coordinates.
struct ProductSystem {
  CyclicExtensionSystem base;
  int base_component = 0;                // group part h0 of the base fiber
  CosetDecomposition cosets;             // stabilizer + representatives = index set I
  std::vector<std::vector<int>> sigma;   // sigma[g] : coordinate permutation of I
  long long state_count = 0;             // modulus^{|I|}, when enumerable
  bool enumerated = false;
  int enumeration_cap = 1 << 20;

  int index_size() const { return static_cast<int>(cosets.representatives.size()); }

  using State = std::vector<int>;  // residues mod `base.modulus`, indexed by I
  State apply_s(const State& y, const std::vector<int>& n) const;
  State apply_t(int g, const State& y) const;
  std::vector<int> apply_alpha(int g, const std::vector<int>& n) const;
};

ProductSystem build_product_normalizer(const CyclicExtensionSystem& sys, int base_component,
                                       int enumeration_cap = 1 << 20);

struct ProductRelationReport {
  bool relations_hold = false;
  long long relation_instances = 0;
  bool t_injective = false;
  bool t_homomorphism = false;
  bool alpha_multiplicative = false;
  bool windowed_freeness = false;
  std::string failure;  // first failing witness, when any
};
/// Exhaustive check of T~^g o S^n = S^{alpha_g(n)} o T~^g over the test
/// vectors (default: all signed unit vectors), plus the homomorphism,
/// injectivity, and windowed freeness properties.
ProductRelationReport verify_product_relations(const ProductSystem& ps,
                                               std::vector<std::vector<int>> test_vectors = {});

struct HierarchyLevel {
  int length = 0;                 // l_n
  std::vector<Word> markers;      // x_{1,n} .. x_{k_n,n}, canonically sorted
  int marker_count = 0;           // k_n
  Dyadic achieved_density;        // max over pool of min distance to a marker
  std::vector<Word> words;        // B_n, when enumerated
  bool enumerated = false;
  long long word_count = 0;       // |B_n| (exact even when implicit)
};

struct BlockHierarchyCaps {
  long long enumeration_cap = 2'000'000;
  int marker_cap = 12;       // k_n cap (k_n! words per prefix choice)
  long long pool_cap = 200'000;  // |B_{n-1} B_{n-1}| cap for marker pools
};

struct BlockHierarchy {
  GroupAction action;
  std::vector<HierarchyLevel> levels;  // levels[0] is B_1
  BlockHierarchyCaps caps;
};

/// Marker selection per level: orbits of the given seed words under the
/// diagonal action, or every orbit of the pool when no seeds are given.
struct MarkerSchedule {
  std::vector<std::vector<Word>> seeds_per_level;  // index 0 = level 2
  AlphabetMetric metric;
};

BlockHierarchy build_block_hierarchy(const GroupAction& action, int depth,
                                     const BlockHierarchyCaps& caps = {},
                                     const MarkerSchedule& schedule = {});

struct HierarchyCheckReport {
  bool invariance = false;
  bool claim = false;
  Dyadic claim_bound;         // max over checked (u, v) of the min factor distance
  bool faithfulness = false;
  std::string failure;
};
HierarchyCheckReport hierarchy_checks(const BlockHierarchy& h, long long sample_budget = 0);

struct ProfiniteRealization {
  GroupAction action;                       // left translation on the level group
  std::vector<LetterMap> right_translations;
  std::vector<NormalizerVerdict> right_verdicts;
  int accepted_centralizer_count = 0;
  bool right_family_free = false;
  bool right_family_transitive = false;
  // conjugation maps with their verdicts (nontrivial alpha marks a proper
  // normalizer element)
  std::vector<LetterMap> conjugations;
  std::vector<NormalizerVerdict> conjugation_verdicts;
  int proper_normalizer_count = 0;
};
ProfiniteRealization build_profinite_realization(const QuotientTower& tower, int depth);
ProfiniteRealization build_profinite_realization(const FiniteGroup& level);

struct SystemSpec {
  GroupAction action;
  std::vector<int> gens;
  std::vector<LetterMap> auts;
};

struct DirectProductReport {
  GroupAction product_action;
  std::vector<int> product_gens;
  std::vector<LetterMap> product_auts;
  bool all_equivariant = false;
  bool pairing_injective = false;
};
DirectProductReport build_direct_product(const SystemSpec& a, const SystemSpec& b);

struct StageRecord {
  std::string stage;
  bool pass = false;
  std::string detail;
};

struct SadicEmbeddingReport {
  std::vector<StageRecord> stages;
  bool all_pass = false;
  CentralizerEmbedding embedding;
};
/// Full pipeline: substitution, language, primitivity, language
/// independence, recurrence of single letters, aperiodicity, centralizer
/// embedding.
SadicEmbeddingReport run_sadic_embedding(const GroupAction& action,
                                         const std::vector<std::vector<int>>& gens_schedule,
                                         const std::vector<LetterMap>& auts, int max_len,
                                         int depth, int horizon, int p_max);

}  // namespace cantorlab
