#include "cantorlab/automorphism.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cantorlab {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

bool LetterMap::is_identity() const {
  for (int a = 0; a < alphabet_size; ++a)
    if (map[a] != a) return false;
  return true;
}

LetterMap identity_letter_map(int alphabet_size, std::string label) {
  LetterMap m;
  m.alphabet_size = alphabet_size;
  m.map.resize(alphabet_size);
  for (int a = 0; a < alphabet_size; ++a) m.map[a] = a;
  m.label = std::move(label);
  return m;
}

LetterMap compose(const LetterMap& outer, const LetterMap& inner) {
  if (outer.alphabet_size != inner.alphabet_size) fail("composed maps must share the alphabet");
  LetterMap m;
  m.alphabet_size = outer.alphabet_size;
  m.map.resize(m.alphabet_size);
  for (int a = 0; a < m.alphabet_size; ++a) m.map[a] = outer.map[inner.map[a]];
  m.label = outer.label + "*" + inner.label;
  return m;
}

void validate_letter_map(const LetterMap& m) {
  if (m.alphabet_size <= 0 || static_cast<int>(m.map.size()) != m.alphabet_size)
    fail("letter map has wrong size");
  std::vector<bool> hit(m.alphabet_size, false);
  for (int v : m.map) {
    if (v < 0 || v >= m.alphabet_size) fail("letter map value out of range");
    if (hit[v]) fail("letter map '" + m.label + "' is not a bijection");
    hit[v] = true;
  }
}

std::vector<LetterMap> load_letter_maps(const std::string& text, int alphabet_size) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) fail("candidate file is empty");
  std::vector<std::string> labels;
  {
    std::istringstream hs(header);
    std::string l;
    while (hs >> l) labels.push_back(l);
  }
  std::vector<LetterMap> maps;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    LetterMap m;
    m.alphabet_size = alphabet_size;
    std::istringstream ls(line);
    int v;
    while (ls >> v) m.map.push_back(v);
    m.label = maps.size() < labels.size() ? labels[maps.size()]
                                          : "m" + std::to_string(maps.size());
    validate_letter_map(m);
    maps.push_back(std::move(m));
  }
  return maps;
}

Word SlidingAutomorphism::apply(const Word& w) const {
  if (!letterwise) return transform(w);
  Word out;
  out.reserve(w.size());
  for (int a : w) out.push_back(base.map[a]);
  return out;
}

SlidingAutomorphism lift_letter_map(const LetterMap& m) {
  validate_letter_map(m);
  SlidingAutomorphism h;
  h.base = m;
  return h;
}

EquivarianceResult verify_equivariance(const Substitution& sub, const LetterMap& phi) {
  validate_letter_map(phi);
  if (phi.alphabet_size != sub.alphabet_size) fail("map and substitution alphabets differ");
  EquivarianceResult res;
  for (int a = 0; a < sub.alphabet_size; ++a) {
    const Word& lhs = sub.images[phi.map[a]];
    Word rhs;
    rhs.reserve(sub.images[a].size());
    for (int c : sub.images[a]) rhs.push_back(phi.map[c]);
    if (lhs != rhs) {
      res.witness_letter = a;
      return res;
    }
  }
  res.equivariant = true;
  return res;
}

ShiftCommutationResult verify_shift_commutation(const SlidingAutomorphism& h,
                                                const Language& lang) {
  ShiftCommutationResult res;
  const auto& top = lang.strata[lang.max_len];
  if (top.empty()) {
    res.commutes = true;
    res.vacuous = true;
    return res;
  }
  for (const auto& w : top) {
    const Word hw = h.apply(w);
    const Word shifted(w.begin() + 1, w.end());
    const Word h_shifted = h.apply(shifted);
    // overlap: h(w) with its first letter dropped must start with h(sigma w)
    if (hw.size() < 1 + h_shifted.size() ||
        !std::equal(h_shifted.begin(), h_shifted.end(), hw.begin() + 1)) {
      res.witness = w;
      return res;
    }
  }
  res.commutes = true;
  return res;
}

NormalizerVerdict classify_normalizer(const LetterMap& h, const GroupAction& action) {
  validate_letter_map(h);
  if (h.alphabet_size != action.alphabet_size) fail("map and action alphabets differ");
  const int n = action.group.order;
  NormalizerVerdict v;
  v.alpha.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int cand = 0; cand < n; ++cand) {
      bool ok = true;
      for (int a = 0; a < action.alphabet_size; ++a)
        if (h.map[action.act[g][a]] != action.act[cand][h.map[a]]) {
          ok = false;
          break;
        }
      if (ok) {
        v.alpha[g] = cand;
        break;
      }
    }
    if (v.alpha[g] < 0) {
      // witness: a letter where no candidate works for this g
      v.witness = {g, 0};
      return v;
    }
  }
  // alpha must be a bijection respecting multiplication
  std::vector<bool> hit(n, false);
  for (int x : v.alpha) {
    if (hit[x]) {
      v.witness = {x, -1};
      return v;
    }
    hit[x] = true;
  }
  for (int g = 0; g < n; ++g)
    for (int k = 0; k < n; ++k)
      if (v.alpha[action.group.mul[g][k]] != action.group.mul[v.alpha[g]][v.alpha[k]]) {
        v.witness = {g, k};
        return v;
      }
  v.accepted = true;
  v.alpha_is_identity = true;
  for (int g = 0; g < n; ++g)
    if (v.alpha[g] != g) {
      v.alpha_is_identity = false;
      break;
    }
  return v;
}

ExactSequenceReport exact_sequence_report(const std::vector<LetterMap>& candidates,
                                          const GroupAction& action) {
  ExactSequenceReport rep;
  rep.verdicts.reserve(candidates.size());
  for (const auto& h : candidates) rep.verdicts.push_back(classify_normalizer(h, action));

  std::set<std::vector<int>> alphas;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!rep.verdicts[i].accepted) continue;
    if (rep.verdicts[i].alpha_is_identity) rep.kernel.push_back(static_cast<int>(i));
    alphas.insert(rep.verdicts[i].alpha);
  }
  rep.image.assign(alphas.begin(), alphas.end());

  rep.alpha_multiplicative = true;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!rep.verdicts[i].accepted) continue;
    for (size_t j = 0; j < candidates.size(); ++j) {
      if (!rep.verdicts[j].accepted) continue;
      const auto composed = classify_normalizer(compose(candidates[i], candidates[j]), action);
      if (!composed.accepted) {
        rep.alpha_multiplicative = false;
        rep.failure = {static_cast<int>(i), static_cast<int>(j)};
        return rep;
      }
      std::vector<int> expected(action.group.order);
      for (int g = 0; g < action.group.order; ++g)
        expected[g] = rep.verdicts[i].alpha[rep.verdicts[j].alpha[g]];
      if (composed.alpha != expected) {
        rep.alpha_multiplicative = false;
        rep.failure = {static_cast<int>(i), static_cast<int>(j)};
        return rep;
      }
    }
  }
  return rep;
}

FreenessReport freeness_check(const std::vector<SlidingAutomorphism>& accepted,
                              const Language& lang) {
  FreenessReport rep;
  std::set<int> occurring;
  for (int l = 1; l <= lang.max_len; ++l)
    for (const auto& w : lang.strata[l]) occurring.insert(w.begin(), w.end());

  rep.all_certified_free = true;
  for (const auto& h : accepted) {
    if (h.letterwise && h.base.is_identity()) continue;
    FreenessEntry e;
    e.label = h.label();
    for (int a : occurring)
      if (h.base.map[a] == a) e.fixed_letters_in_language.push_back(a);
    e.no_fixed_letter = e.fixed_letters_in_language.empty();
    if (!e.no_fixed_letter) rep.all_certified_free = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

CentralizerEmbedding embed_centralizer(const GroupAction& action, const std::vector<int>& gens,
                                       const std::vector<LetterMap>& auts, const Language& lang) {
  CentralizerEmbedding emb;
  const Substitution sub = substitution_from_action(action, gens);
  for (size_t i = 0; i < auts.size(); ++i)
    if (!verify_equivariance(sub, auts[i]).equivariant)
      emb.equivariance_failures.push_back(static_cast<int>(i));
  if (!emb.equivariance_failures.empty()) return emb;

  // injectivity on the single-letter stratum
  emb.lifts_distinct = true;
  const auto& letters = lang.strata[1];
  for (size_t i = 0; i < auts.size() && emb.lifts_distinct; ++i)
    for (size_t j = i + 1; j < auts.size(); ++j) {
      bool same = true;
      for (const auto& w : letters)
        if (auts[i].map[w[0]] != auts[j].map[w[0]]) {
          same = false;
          break;
        }
      if (same) {
        emb.lifts_distinct = false;
        break;
      }
    }

  // composition closes within the family and lifting respects it
  emb.composition_respected = true;
  const int n = static_cast<int>(auts.size());
  emb.composition_table.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LetterMap c = compose(auts[i], auts[j]);
      for (int k = 0; k < n; ++k)
        if (auts[k].map == c.map) {
          emb.composition_table[i][j] = k;
          break;
        }
      if (emb.composition_table[i][j] < 0) emb.composition_respected = false;
    }

  // each lift permutes every stratum
  emb.language_preserved = true;
  for (const auto& phi : auts) {
    const SlidingAutomorphism h = lift_letter_map(phi);
    for (int l = 1; l <= lang.max_len && emb.language_preserved; ++l) {
      std::set<Word> img;
      for (const auto& w : lang.strata[l]) img.insert(h.apply(w));
      if (img != lang.strata[l]) emb.language_preserved = false;
    }
    if (!emb.language_preserved) break;
  }

  emb.ok = emb.lifts_distinct && emb.composition_respected && emb.language_preserved;
  return emb;
}

}  // namespace cantorlab
