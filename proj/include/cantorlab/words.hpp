#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorlab/group.hpp"

namespace cantorlab {

using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word parse_word(const std::string& line);

/// Exact dyadic rational num / 2^exp, normalized (num odd or zero).
/// Covers every value arising from the 2^{-|n|}-weighted metric sums.
struct Dyadic {
  __int128 num = 0;
  int exp = 0;

  static Dyadic zero() { return {}; }
  static Dyadic pow2(int e);  // 2^{-e}
  Dyadic operator+(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }
  bool operator<(const Dyadic& o) const;
  std::string to_string() const;
  double approx() const;
};

/// Letter-to-word map extended by concatenation.
struct Substitution {
  int alphabet_size = 0;
  std::vector<Word> images;
  std::optional<int> constant_length;  // set iff all images share a length

  const Word& image(int letter) const { return images[letter]; }
};

/// Finite list of substitutions on a shared alphabet; depths beyond the
/// list repeat the last entry (stationary tail).
struct SubstitutionSequence {
  std::vector<Substitution> seq;
  bool nested = false;

  const Substitution& at(int n) const {
    return seq[static_cast<size_t>(n) < seq.size() ? n : seq.size() - 1];
  }
  int alphabet_size() const { return seq.front().alphabet_size; }
};

/// Stratified factor language at finite horizon: strata[l] holds the words
/// of length l, 1 <= l <= max_len.
struct Language {
  int max_len = 0;
  std::vector<std::set<Word>> strata;  // index by length; strata[0] unused
  int seed_letter = -1;
  int depth = -1;

  const std::set<Word>& stratum(int len) const { return strata[len]; }
  bool contains(const Word& w) const;
};

struct AlphabetMetric {
  enum class Mode { Discrete, Tower };
  Mode mode = Mode::Discrete;
  const QuotientTower* tower = nullptr;  // required for Tower mode

  /// Discrete: 0/1. Tower: 2^{-s} where s is the deepest level on which
  /// the two letters agree (letters are top-level tower elements).
  Dyadic dist(int a, int b) const;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- word / substitution operations ----------------------------------------

Word concat(const Word& a, const Word& b);

Substitution substitution_from_action(const GroupAction& action, const std::vector<int>& gens);
Substitution identity_substitution(int alphabet_size);

Word apply_substitution(const Substitution& sub, const Word& w);
/// tau_0 o ... o tau_j applied to `w` (innermost first).
Word apply_composition(const SubstitutionSequence& seq, int j, const Word& w,
                       long long letter_budget = 0);

void validate_substitution(const Substitution& sub);
void validate_sequence(const SubstitutionSequence& seq);

/// Factors of length <= L of tau_0 o ... o tau_j(seed), union over j <= K.
/// Generated by image-covering factor propagation, never by full expansion.
Language generate_language(const SubstitutionSequence& seq, int seed, int max_len, int depth,
                           long long letter_budget = 8'000'000);

struct PrimitivityResult {
  bool primitive = false;
  int power = 0;  // least k with M^k entrywise positive, when primitive
  std::vector<std::vector<long long>> incidence;
  std::optional<int> target_power;  // least k covering the target letter set
};
PrimitivityResult primitivity_check(const Substitution& sub,
                                    const std::vector<int>& target = {});

struct IndependenceResult {
  bool equal = false;
  bool trivially_reflexive = false;  // a == b
  int divergence_length = 0;
  Word witness;
};
IndependenceResult language_independence_check(const SubstitutionSequence& seq, int a, int b,
                                               int max_len, int depth);

struct RecurrenceResult {
  bool uniformly_recurrent = false;
  int bound = 0;      // least R with every length-R word containing w
  Word gap_witness;   // a horizon-length word avoiding w, when negative
};
RecurrenceResult recurrence_profile(const Language& lang, const Word& w, int horizon);

struct AperiodicityResult {
  bool aperiodic = false;
  Word period_witness;  // the word u with language contained in factors of u^omega
};
AperiodicityResult aperiodicity_check(const Language& lang, int p_max);

/// Sum over the window of 2^{-|i - center|} * dist(x_i, y_i).
Dyadic seq_distance(const Word& x, const Word& y, int center, const AlphabetMetric& metric);

/// max over positions of dist(u_i, v_i), over the common prefix length.
Dyadic word_distance(const Word& u, const Word& v, const AlphabetMetric& metric);

std::vector<int> complexity_profile(const Language& lang);

}  // namespace cantorlab
