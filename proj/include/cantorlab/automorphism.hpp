#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantorlab/group.hpp"
#include "cantorlab/words.hpp"

namespace cantorlab {

/// Bijection on letter ids.
struct LetterMap {
  int alphabet_size = 0;
  std::vector<int> map;
  std::string label;

  int operator()(int a) const { return map[a]; }
  bool is_identity() const;
};

LetterMap identity_letter_map(int alphabet_size, std::string label = "id");
/// Candidate file format: header line of labels, then one bijection per
/// line as a space-separated image list.
std::vector<LetterMap> load_letter_maps(const std::string& text, int alphabet_size);
LetterMap compose(const LetterMap& outer, const LetterMap& inner);
void validate_letter_map(const LetterMap& m);

/// Shift-commuting map on words. Radius-0 (letterwise) in the supported
/// case; an arbitrary word transform can be injected for adversarial tests.
struct SlidingAutomorphism {
  LetterMap base;
  bool letterwise = true;
  std::function<Word(const Word&)> transform;  // used when not letterwise

  Word apply(const Word& w) const;
  std::string label() const { return base.label; }
};

SlidingAutomorphism lift_letter_map(const LetterMap& m);

struct EquivarianceResult {
  bool equivariant = false;
  int witness_letter = -1;
};
/// Checks images(phi(a)) == phi applied letterwise to images(a).
EquivarianceResult verify_equivariance(const Substitution& sub, const LetterMap& phi);

struct ShiftCommutationResult {
  bool commutes = false;
  bool vacuous = false;  // empty top stratum
  Word witness;
};
ShiftCommutationResult verify_shift_commutation(const SlidingAutomorphism& h,
                                                const Language& lang);

/// Either the induced group automorphism alpha, or a rejection witness.
struct NormalizerVerdict {
  bool accepted = false;
  std::vector<int> alpha;  // element id -> element id, when accepted
  bool alpha_is_identity = false;
  std::pair<int, int> witness{-1, -1};  // (group element, letter) on rejection
};

/// Searches for alpha with h(act(g, a)) = act(alpha(g), h(a)) for all g, a.
NormalizerVerdict classify_normalizer(const LetterMap& h, const GroupAction& action);

struct ExactSequenceReport {
  std::vector<NormalizerVerdict> verdicts;       // aligned with candidates
  std::vector<int> kernel;                       // candidate indices with alpha = id
  std::vector<std::vector<int>> image;           // distinct alphas, sorted
  bool alpha_multiplicative = false;             // alpha_{h1 o h2} = alpha_{h1} o alpha_{h2}
  std::optional<std::pair<int, int>> failure;    // offending candidate pair
};
ExactSequenceReport exact_sequence_report(const std::vector<LetterMap>& candidates,
                                          const GroupAction& action);

struct FreenessEntry {
  std::string label;
  bool no_fixed_letter = false;  // sufficient condition for freeness
  std::vector<int> fixed_letters_in_language;
};
struct FreenessReport {
  std::vector<FreenessEntry> entries;  // non-identity automorphisms only
  bool all_certified_free = false;
};
FreenessReport freeness_check(const std::vector<SlidingAutomorphism>& accepted,
                              const Language& lang);

struct CentralizerEmbedding {
  bool ok = false;
  std::vector<int> equivariance_failures;  // indices into auts
  bool lifts_distinct = false;
  bool composition_respected = false;
  bool language_preserved = false;
  std::vector<std::vector<int>> composition_table;  // auts index x auts index -> auts index, -1 if outside
};
/// Injectivity + composition + language preservation for the lifted maps of
/// the letter automorphisms equivariant for the substitution of (action, gens).
CentralizerEmbedding embed_centralizer(const GroupAction& action, const std::vector<int>& gens,
                                       const std::vector<LetterMap>& auts, const Language& lang);

}  // namespace cantorlab
