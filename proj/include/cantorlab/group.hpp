#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cantorlab {

/// A finite group given by its full multiplication table. Element ids are
/// 0..order-1 with a canonical ordering per family (cyclic: residues
/// ascending; symmetric: lexicographic one-line notation).
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[a][b]
  std::vector<int> inv;
  int identity = 0;
  std::string label;

  int op(int a, int b) const { return mul[a][b]; }
};

/// Chain of finite groups G_1 .. G_D with surjective homomorphisms
/// pi_d : G_{d+1} -> G_d, the finite shadow of a residually finite group.
struct QuotientTower {
  std::vector<FiniteGroup> levels;
  std::vector<std::vector<int>> projections;  // projections[d] : levels[d+1] -> levels[d]

  int depth() const { return static_cast<int>(levels.size()); }
  /// Image of a top-level element at level d (1-based, d <= depth).
  int project_to(int top_elem, int d) const;
  /// Least 1-based level separating two distinct top-level elements.
  int least_separating_level(int a, int b) const;
};

struct ActionFlags {
  bool faithful = false;
  bool free_action = false;
  bool transitive = false;
  // witnesses for failing flags
  std::optional<std::pair<int, int>> faithful_witness;   // (g, g') acting identically
  std::optional<std::pair<int, int>> free_witness;       // (g, letter) fixed
  std::optional<std::pair<int, int>> transitive_witness; // (letter, letter) in distinct orbits
};

/// Left action table of a finite group on a finite letter set.
struct GroupAction {
  FiniteGroup group;
  int alphabet_size = 0;
  std::vector<std::vector<int>> act;  // act[g][a]
  ActionFlags flags;                  // computed at build time

  int apply(int g, int a) const { return act[g][a]; }
};

struct CosetDecomposition {
  std::vector<int> stabilizer;        // sorted element ids, a subgroup
  std::vector<int> representatives;   // identity coset first, then by minimal id
  std::vector<int> coset_index;       // element id -> index into representatives
};

// --- construction -----------------------------------------------------------

FiniteGroup build_cyclic_group(int m);
FiniteGroup build_symmetric_group(int k);
FiniteGroup build_product_group(const FiniteGroup& a, const FiniteGroup& b);
/// Validates the table (identity, inverses, associativity); throws
/// std::invalid_argument naming the violating triple.
FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& mul,
                                   std::string label = "explicit");
/// Parses a textual family spec: "cyclic m", "symmetric k",
/// "product(<spec>, <spec>)".
FiniteGroup build_group(const std::string& spec);

/// Cyclic residue chain m_1 | m_2 | ... | m_D with reduction projections.
QuotientTower build_cyclic_tower(const std::vector<int>& moduli);

GroupAction left_translation_action(const FiniteGroup& g);
/// Action of `g` on the letters of `quotient` through the homomorphism
/// `hom` (element of g -> element of quotient) followed by left translation.
GroupAction quotient_translation_action(const FiniteGroup& g, const FiniteGroup& quotient,
                                        const std::vector<int>& hom);
GroupAction action_from_table(const FiniteGroup& g, int alphabet_size,
                              const std::vector<std::vector<int>>& table);

/// Exhaustive recomputation of the faithful/free/transitive flags.
ActionFlags action_diagnostics(const GroupAction& action);

/// Setwise stabilizer of `block` and left coset representatives, where the
/// action permutes the blocks of `partition` and `block` is one of them.
CosetDecomposition stabilizer_and_cosets(const GroupAction& action,
                                         const std::vector<std::vector<int>>& partition,
                                         const std::vector<int>& block);

/// Associativity is exhaustive up to this order, seeded-sampled above it.
struct GroupValidationOptions {
  int exhaustive_threshold = 64;
  int samples = 20000;
  unsigned long long seed = 0;
};
void validate_group(const FiniteGroup& g, const GroupValidationOptions& opts = {});

void validate_tower(const QuotientTower& tower);
void validate_action(const GroupAction& action);

/// Text table format: first line the order (resp. alphabet size), then one
/// row of decimal ids per line.
FiniteGroup group_from_table_text(const std::string& text, std::string label = "explicit");
GroupAction action_from_table_text(const FiniteGroup& g, const std::string& text);

}  // namespace cantorlab
