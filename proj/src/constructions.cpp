#include "cantorlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cantorlab {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}
}  // namespace

// --- Lemma 3.1 model --------------------------------------------------------

int CyclicExtensionSystem::f(int p) const {
  return encode(group_part(p), (cycle_part(p) + 1) % modulus);
}

int CyclicExtensionSystem::f_pow(int p, int n) const {
  const int k = ((cycle_part(p) + n) % modulus + modulus) % modulus;
  return encode(group_part(p), k);
}

int CyclicExtensionSystem::translate(int gelem, int p) const {
  return encode(g.mul[gelem][group_part(p)], cycle_part(p));
}

CyclicExtensionSystem build_lemma31_system(const FiniteGroup& g, int modulus) {
  if (modulus < 2) fail("modulus must be >= 2");
  CyclicExtensionSystem sys;
  sys.g = g;
  sys.modulus = modulus;
  return sys;
}

// --- product normalizer -----------------------------------------------------

ProductSystem build_product_normalizer(const CyclicExtensionSystem& sys, int base_component,
                                       int enumeration_cap) {
  if (base_component < 0 || base_component >= sys.g.order) fail("base component out of range");
  ProductSystem ps;
  ps.base = sys;
  ps.base_component = base_component;
  ps.enumeration_cap = enumeration_cap;

  // G permutes the f-components by left translation on their group part.
  const GroupAction comp_action = left_translation_action(sys.g);
  std::vector<std::vector<int>> singletons;
  for (int h = 0; h < sys.g.order; ++h) singletons.push_back({h});
  ps.cosets = stabilizer_and_cosets(comp_action, singletons, {base_component});

  const int isz = ps.index_size();
  ps.sigma.assign(sys.g.order, std::vector<int>(isz));
  for (int g = 0; g < sys.g.order; ++g) {
    const int ginv = sys.g.inv[g];
    for (int i = 0; i < isz; ++i) {
      // g * g_{sigma_g(i)} in g_i * Stab  <=>  g_{sigma_g(i)} in g^{-1} g_i Stab
      ps.sigma[g][i] = ps.cosets.coset_index[sys.g.mul[ginv][ps.cosets.representatives[i]]];
    }
  }

  long long states = 1;
  ps.enumerated = true;
  for (int i = 0; i < isz; ++i) {
    states *= sys.modulus;
    if (states > enumeration_cap) {
      ps.enumerated = false;
      break;
    }
  }
  if (!ps.enumerated) fail("state space exceeds enumeration cap (" +
                           std::to_string(enumeration_cap) + ")");
  ps.state_count = states;
  return ps;
}

ProductSystem::State ProductSystem::apply_s(const State& y, const std::vector<int>& n) const {
  State out(y.size());
  const int m = base.modulus;
  for (size_t i = 0; i < y.size(); ++i) out[i] = ((y[i] + n[i]) % m + m) % m;
  return out;
}

ProductSystem::State ProductSystem::apply_t(int g, const State& y) const {
  // T^g preserves the fiber coordinate in this model, so the normalizer map
  // reduces to the coordinate permutation sigma_g.
  State out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[sigma[g][i]];
  return out;
}

std::vector<int> ProductSystem::apply_alpha(int g, const std::vector<int>& n) const {
  std::vector<int> out(n.size());
  for (size_t i = 0; i < n.size(); ++i) out[i] = n[sigma[g][i]];
  return out;
}

namespace {

std::vector<ProductSystem::State> enumerate_states(const ProductSystem& ps) {
  const int isz = ps.index_size();
  const int m = ps.base.modulus;
  std::vector<ProductSystem::State> states;
  states.reserve(static_cast<size_t>(ps.state_count));
  ProductSystem::State cur(isz, 0);
  while (true) {
    states.push_back(cur);
    int i = isz - 1;
    while (i >= 0 && ++cur[i] == m) cur[i--] = 0;
    if (i < 0) break;
  }
  return states;
}

}  // namespace

ProductRelationReport verify_product_relations(const ProductSystem& ps,
                                               std::vector<std::vector<int>> test_vectors) {
  ProductRelationReport rep;
  const int isz = ps.index_size();
  const int m = ps.base.modulus;
  if (test_vectors.empty()) {
    for (int i = 0; i < isz; ++i) {
      std::vector<int> e(isz, 0);
      e[i] = 1;
      test_vectors.push_back(e);
      e[i] = -1;
      test_vectors.push_back(e);
    }
  }
  const auto states = enumerate_states(ps);

  rep.relations_hold = true;
  for (int g = 0; g < ps.base.g.order && rep.relations_hold; ++g) {
    for (const auto& n : test_vectors) {
      const auto alpha_n = ps.apply_alpha(g, n);
      for (const auto& y : states) {
        ++rep.relation_instances;
        if (ps.apply_t(g, ps.apply_s(y, n)) != ps.apply_s(ps.apply_t(g, y), alpha_n)) {
          rep.relations_hold = false;
          rep.failure = "relation fails at g=" + std::to_string(g);
          break;
        }
      }
      if (!rep.relations_hold) break;
    }
  }

  // g -> T~^g injective: distinct sigma tables give distinct maps on states
  rep.t_injective = true;
  for (int g = 0; g < ps.base.g.order && rep.t_injective; ++g)
    for (int h = g + 1; h < ps.base.g.order; ++h)
      if (ps.sigma[g] == ps.sigma[h]) {
        rep.t_injective = false;
        rep.failure = "T~ maps coincide for " + pair_str(g, h);
      }

  // T~^g o T~^h = T~^{gh}, i.e. sigma_{gh} = sigma_h o sigma_g
  rep.t_homomorphism = true;
  for (int g = 0; g < ps.base.g.order && rep.t_homomorphism; ++g)
    for (int h = 0; h < ps.base.g.order && rep.t_homomorphism; ++h) {
      const int gh = ps.base.g.mul[g][h];
      for (int i = 0; i < isz; ++i)
        if (ps.sigma[gh][i] != ps.sigma[h][ps.sigma[g][i]]) {
          rep.t_homomorphism = false;
          rep.failure = "T~ homomorphism fails at " + pair_str(g, h);
          break;
        }
    }
  rep.alpha_multiplicative = rep.t_homomorphism;  // alpha_g is conjugation by sigma_g

  // windowed freeness: S^n(y) = y with all |n_i| < m forces n = 0
  rep.windowed_freeness = true;
  {
    const ProductSystem::State probe(isz, 0);
    std::vector<int> n(isz, -(m - 1));
    while (true) {
      const bool zero = std::all_of(n.begin(), n.end(), [](int v) { return v == 0; });
      if (!zero && ps.apply_s(probe, n) == probe) {
        rep.windowed_freeness = false;
        rep.failure = "windowed freeness fails";
        break;
      }
      int i = isz - 1;
      while (i >= 0 && ++n[i] == m) n[i--] = -(m - 1);
      if (i < 0) break;
    }
  }
  return rep;
}

// --- block hierarchy --------------------------------------------------------

namespace {

Word diagonal_apply(const GroupAction& action, int g, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int a : w) out.push_back(action.act[g][a]);
  return out;
}

std::set<Word> orbit_of(const GroupAction& action, const Word& w) {
  std::set<Word> orb;
  for (int g = 0; g < action.group.order; ++g) orb.insert(diagonal_apply(action, g, w));
  return orb;
}

}  // namespace

BlockHierarchy build_block_hierarchy(const GroupAction& action, int depth,
                                     const BlockHierarchyCaps& caps,
                                     const MarkerSchedule& schedule) {
  if (depth < 1) fail("hierarchy depth must be >= 1");
  if (!action.flags.faithful) fail("hierarchy requires a faithful action");
  BlockHierarchy h;
  h.action = action;
  h.caps = caps;

  HierarchyLevel base;
  base.length = 1;
  base.enumerated = true;
  for (int a = 0; a < action.alphabet_size; ++a) base.words.push_back({a});
  base.word_count = action.alphabet_size;
  h.levels.push_back(std::move(base));

  for (int n = 2; n <= depth; ++n) {
    const HierarchyLevel& prev = h.levels.back();
    if (!prev.enumerated)
      fail("level " + std::to_string(n - 1) + " is implicit; cannot build the marker pool");
    const long long pool_size = prev.word_count * prev.word_count;
    if (pool_size > caps.pool_cap)
      fail("marker pool |B_{n-1}B_{n-1}| = " + std::to_string(pool_size) + " exceeds cap");

    std::vector<Word> pool;
    pool.reserve(static_cast<size_t>(pool_size));
    for (const auto& u : prev.words)
      for (const auto& v : prev.words) pool.push_back(concat(u, v));

    HierarchyLevel lvl;
    std::set<Word> markers;
    const int sched_idx = n - 2;
    const bool has_seeds = sched_idx < static_cast<int>(schedule.seeds_per_level.size()) &&
                           !schedule.seeds_per_level[sched_idx].empty();
    if (has_seeds) {
      const std::set<Word> pool_set(pool.begin(), pool.end());
      for (const auto& seed : schedule.seeds_per_level[sched_idx]) {
        if (!pool_set.count(seed))
          fail("marker seed '" + word_to_string(seed) + "' is not in B_{n-1}B_{n-1}");
        const auto orb = orbit_of(action, seed);
        markers.insert(orb.begin(), orb.end());
      }
    } else {
      for (const auto& w : pool) {
        if (markers.count(w)) continue;
        const auto orb = orbit_of(action, w);
        markers.insert(orb.begin(), orb.end());
      }
    }
    lvl.markers.assign(markers.begin(), markers.end());
    lvl.marker_count = static_cast<int>(lvl.markers.size());
    if (lvl.marker_count > caps.marker_cap)
      fail("level " + std::to_string(n) + " needs " + std::to_string(lvl.marker_count) +
           " markers, above the cap of " + std::to_string(caps.marker_cap) +
           "; restrict the marker schedule");

    // achieved density: worst-case distance from the pool to the marker set
    lvl.achieved_density = Dyadic::zero();
    for (const auto& v : pool) {
      bool first = true;
      Dyadic best;
      for (const auto& x : lvl.markers) {
        const Dyadic d = word_distance(x, v, schedule.metric);
        if (first || d < best) {
          best = d;
          first = false;
        }
      }
      if (lvl.achieved_density < best) lvl.achieved_density = best;
    }

    lvl.length = (n + 2 * lvl.marker_count) * prev.length;

    long long count = 1;
    for (int i = 0; i < n; ++i) {
      count *= prev.word_count;
      if (count > caps.enumeration_cap) break;
    }
    long long perms = 1;
    for (int i = 2; i <= lvl.marker_count; ++i) perms *= i;
    lvl.word_count = count * perms;
    lvl.enumerated = lvl.word_count <= caps.enumeration_cap && count <= caps.enumeration_cap;
    if (lvl.enumerated) {
      // all prefix tuples w_1 .. w_n, then all marker permutations
      std::vector<int> tuple(n, 0);
      std::vector<int> perm(lvl.marker_count);
      std::vector<Word> out;
      out.reserve(static_cast<size_t>(lvl.word_count));
      while (true) {
        Word prefix;
        prefix.reserve(static_cast<size_t>(n) * prev.length);
        for (int i : tuple) prefix.insert(prefix.end(), prev.words[i].begin(), prev.words[i].end());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          Word w = prefix;
          for (int i : perm) w.insert(w.end(), lvl.markers[i].begin(), lvl.markers[i].end());
          out.push_back(std::move(w));
        } while (std::next_permutation(perm.begin(), perm.end()));
        int i = n - 1;
        while (i >= 0 && ++tuple[i] == static_cast<int>(prev.words.size())) tuple[i--] = 0;
        if (i < 0) break;
      }
      lvl.words = std::move(out);
    }
    h.levels.push_back(std::move(lvl));
  }
  return h;
}

HierarchyCheckReport hierarchy_checks(const BlockHierarchy& h, long long sample_budget) {
  HierarchyCheckReport rep;
  if (h.levels.size() < 2) fail("hierarchy checks need at least two levels");
  const GroupAction& action = h.action;

  // (a) gamma-invariance of every enumerated level
  rep.invariance = true;
  for (size_t li = 1; li < h.levels.size() && rep.invariance; ++li) {
    const auto& lvl = h.levels[li];
    if (!lvl.enumerated) continue;
    const std::set<Word> words(lvl.words.begin(), lvl.words.end());
    for (int g = 0; g < action.group.order && rep.invariance; ++g) {
      for (const auto& w : words)
        if (!words.count(diagonal_apply(action, g, w))) {
          rep.invariance = false;
          rep.failure = "level " + std::to_string(li + 1) + " not invariant under gamma=" +
                        std::to_string(g);
          break;
        }
    }
  }

  // (b) windowed claim: markers of level n are epsilon_n-dense among the
  // factors of the concatenation squares of level-n words
  rep.claim = true;
  rep.claim_bound = Dyadic::zero();
  AlphabetMetric metric;  // discrete; matches the density computation default
  for (size_t li = 1; li < h.levels.size() && rep.claim; ++li) {
    const auto& lvl = h.levels[li];
    const auto& prev = h.levels[li - 1];
    if (!lvl.enumerated || !prev.enumerated) continue;
    const int win = 2 * prev.length;
    long long checked = 0;
    for (const auto& u : lvl.words) {
      const Word uu = concat(u, u);
      for (const auto& a : prev.words)
        for (const auto& b : prev.words) {
          const Word v = concat(a, b);
          bool first = true;
          Dyadic best;
          for (size_t off = 0; off + win <= uu.size(); ++off) {
            const Word f(uu.begin() + off, uu.begin() + off + win);
            const Dyadic d = word_distance(f, v, metric);
            if (first || d < best) {
              best = d;
              first = false;
            }
            if (best.num == 0) break;
          }
          if (rep.claim_bound < best) rep.claim_bound = best;
          if (lvl.achieved_density < best) {
            rep.claim = false;
            rep.failure = "claim bound exceeded for v=" + word_to_string(v);
          }
        }
      if (sample_budget > 0 && ++checked >= sample_budget) break;
    }
  }

  // (c) faithfulness: every non-identity gamma moves a letter of some marker
  rep.faithfulness = true;
  std::set<int> marker_letters;
  for (size_t li = 1; li < h.levels.size(); ++li)
    for (const auto& x : h.levels[li].markers) marker_letters.insert(x.begin(), x.end());
  for (int g = 0; g < action.group.order; ++g) {
    if (g == action.group.identity) continue;
    bool moved = false;
    for (int a : marker_letters)
      if (action.act[g][a] != a) {
        moved = true;
        break;
      }
    if (!moved) {
      rep.faithfulness = false;
      rep.failure = "gamma=" + std::to_string(g) + " fixes every marker letter";
      break;
    }
  }
  return rep;
}

// --- profinite realization --------------------------------------------------

ProfiniteRealization build_profinite_realization(const FiniteGroup& level) {
  ProfiniteRealization pr;
  pr.action = left_translation_action(level);
  const int n = level.order;

  for (int c = 0; c < n; ++c) {
    LetterMap m;
    m.alphabet_size = n;
    m.map.resize(n);
    for (int x = 0; x < n; ++x) m.map[x] = level.mul[x][c];
    m.label = "right*" + std::to_string(c);
    pr.right_translations.push_back(std::move(m));
  }
  for (const auto& m : pr.right_translations) {
    auto v = classify_normalizer(m, pr.action);
    if (v.accepted && v.alpha_is_identity) ++pr.accepted_centralizer_count;
    pr.right_verdicts.push_back(std::move(v));
  }

  pr.right_family_free = true;
  for (int c = 0; c < n; ++c) {
    if (c == level.identity) continue;
    for (int x = 0; x < n; ++x)
      if (pr.right_translations[c].map[x] == x) {
        pr.right_family_free = false;
        break;
      }
  }
  std::set<int> reach;
  for (int c = 0; c < n; ++c) reach.insert(pr.right_translations[c].map[level.identity]);
  pr.right_family_transitive = static_cast<int>(reach.size()) == n;

  for (int k = 0; k < n; ++k) {
    LetterMap m;
    m.alphabet_size = n;
    m.map.resize(n);
    for (int x = 0; x < n; ++x) m.map[x] = level.mul[level.mul[k][x]][level.inv[k]];
    m.label = "conj" + std::to_string(k);
    pr.conjugations.push_back(std::move(m));
  }
  for (const auto& m : pr.conjugations) {
    auto v = classify_normalizer(m, pr.action);
    if (v.accepted && !v.alpha_is_identity) ++pr.proper_normalizer_count;
    pr.conjugation_verdicts.push_back(std::move(v));
  }
  return pr;
}

ProfiniteRealization build_profinite_realization(const QuotientTower& tower, int depth) {
  if (depth < 1 || depth > tower.depth()) fail("depth exceeds tower height");
  return build_profinite_realization(tower.levels[depth - 1]);
}

// --- direct product ---------------------------------------------------------

DirectProductReport build_direct_product(const SystemSpec& a, const SystemSpec& b) {
  DirectProductReport rep;
  const FiniteGroup pg = build_product_group(a.action.group, b.action.group);
  const int bo = b.action.group.order;
  const int balpha = b.action.alphabet_size;

  GroupAction pa;
  pa.group = pg;
  pa.alphabet_size = a.action.alphabet_size * balpha;
  pa.act.assign(pg.order, std::vector<int>(pa.alphabet_size));
  for (int e = 0; e < pg.order; ++e) {
    const int ea = e / bo, eb = e % bo;
    for (int x = 0; x < pa.alphabet_size; ++x) {
      const int xa = x / balpha, xb = x % balpha;
      pa.act[e][x] = a.action.act[ea][xa] * balpha + b.action.act[eb][xb];
    }
  }
  pa.flags = action_diagnostics(pa);
  rep.product_action = pa;

  // identity pair first, then one-sided pairs, then diagonal pairs
  const int ea = a.action.group.identity, eb = b.action.group.identity;
  std::vector<int> gens;
  std::set<int> seen;
  auto push = [&](int s, int t) {
    const int id = s * bo + t;
    if (seen.insert(id).second) gens.push_back(id);
  };
  push(ea, eb);
  for (size_t i = 1; i < a.gens.size(); ++i) push(a.gens[i], eb);
  for (size_t j = 1; j < b.gens.size(); ++j) push(ea, b.gens[j]);
  for (size_t i = 1; i < a.gens.size(); ++i)
    for (size_t j = 1; j < b.gens.size(); ++j) push(a.gens[i], b.gens[j]);
  rep.product_gens = gens;

  const Substitution psub = substitution_from_action(pa, gens);

  rep.all_equivariant = true;
  for (const auto& phi : a.auts)
    for (const auto& psi : b.auts) {
      LetterMap m;
      m.alphabet_size = pa.alphabet_size;
      m.map.resize(pa.alphabet_size);
      for (int x = 0; x < pa.alphabet_size; ++x)
        m.map[x] = phi.map[x / balpha] * balpha + psi.map[x % balpha];
      m.label = phi.label + "(x)" + psi.label;
      if (!verify_equivariance(psub, m).equivariant) rep.all_equivariant = false;
      rep.product_auts.push_back(std::move(m));
    }

  rep.pairing_injective = true;
  for (size_t i = 0; i < rep.product_auts.size() && rep.pairing_injective; ++i)
    for (size_t j = i + 1; j < rep.product_auts.size(); ++j)
      if (rep.product_auts[i].map == rep.product_auts[j].map) {
        rep.pairing_injective = false;
        break;
      }
  return rep;
}

// --- s-adic embedding pipeline ----------------------------------------------

SadicEmbeddingReport run_sadic_embedding(const GroupAction& action,
                                         const std::vector<std::vector<int>>& gens_schedule,
                                         const std::vector<LetterMap>& auts, int max_len,
                                         int depth, int horizon, int p_max) {
  if (gens_schedule.empty()) fail("generator schedule must be nonempty");
  SadicEmbeddingReport rep;
  auto record = [&](const std::string& stage, bool pass, std::string detail) {
    rep.stages.push_back({stage, pass, std::move(detail)});
  };

  SubstitutionSequence seq;
  for (const auto& gens : gens_schedule) seq.seq.push_back(substitution_from_action(action, gens));
  seq.nested = true;
  for (size_t i = 0; i + 1 < gens_schedule.size() && seq.nested; ++i) {
    const auto& lo = gens_schedule[i];
    const auto& hi = gens_schedule[i + 1];
    seq.nested = lo.size() <= hi.size() && std::equal(lo.begin(), lo.end(), hi.begin());
  }
  validate_sequence(seq);
  record("substitution", true,
         "schedule of " + std::to_string(seq.seq.size()) + (seq.nested ? " (nested)" : ""));

  const auto prim = primitivity_check(seq.seq.front());
  record("primitivity", prim.primitive,
         prim.primitive ? "power k=" + std::to_string(prim.power) : "incidence matrix never positive");

  Language lang;
  bool lang_ok = true;
  try {
    lang = generate_language(seq, 0, max_len, depth);
    record("language", true, "p(" + std::to_string(max_len) + ")=" +
                                 std::to_string(lang.strata[max_len].size()));
  } catch (const BudgetError& e) {
    lang_ok = false;
    record("language", false, e.what());
  }

  bool indep_ok = true;
  for (int a = 0; a < action.alphabet_size && indep_ok; ++a)
    for (int b = a + 1; b < action.alphabet_size; ++b) {
      const auto r = language_independence_check(seq, a, b, max_len, depth);
      if (!r.equal) {
        indep_ok = false;
        record("language_independence", false,
               "letters " + pair_str(a, b) + " diverge at length " +
                   std::to_string(r.divergence_length) + " on '" + word_to_string(r.witness) + "'");
        break;
      }
    }
  if (indep_ok) record("language_independence", true, "all letter pairs agree");

  bool rec_ok = lang_ok;
  if (lang_ok) {
    // recurrence needs a language at least as long as the horizon
    Language wide = lang;
    if (horizon > lang.max_len) wide = generate_language(seq, 0, horizon, depth);
    for (int a = 0; a < action.alphabet_size; ++a) {
      if (!wide.strata[1].count({a})) continue;
      const auto r = recurrence_profile(wide, {a}, horizon);
      if (!r.uniformly_recurrent) {
        rec_ok = false;
        record("recurrence", false, "letter " + std::to_string(a) + " not recurrent at horizon " +
                                        std::to_string(horizon));
        break;
      }
    }
    if (rec_ok) record("recurrence", true, "all letters recurrent within horizon");
  } else {
    record("recurrence", false, "skipped: no language");
  }

  bool aper_ok = false;
  if (lang_ok && lang.max_len >= 2 * p_max) {
    const auto r = aperiodicity_check(lang, p_max);
    aper_ok = r.aperiodic;
    record("aperiodicity", aper_ok,
           aper_ok ? "no period up to " + std::to_string(p_max)
                   : "periodic with u='" + word_to_string(r.period_witness) + "'");
  } else {
    record("aperiodicity", false, "skipped: language too short for p_max");
  }

  bool emb_ok = false;
  if (lang_ok) {
    rep.embedding = embed_centralizer(action, gens_schedule.front(), auts, lang);
    emb_ok = rep.embedding.ok;
    std::ostringstream os;
    os << auts.size() << " automorphisms, distinct=" << rep.embedding.lifts_distinct
       << " composition=" << rep.embedding.composition_respected
       << " language=" << rep.embedding.language_preserved;
    if (!rep.embedding.equivariance_failures.empty())
      os << " equivariance failures=" << rep.embedding.equivariance_failures.size();
    record("embedding", emb_ok, os.str());
  } else {
    record("embedding", false, "skipped: no language");
  }

  rep.all_pass = std::all_of(rep.stages.begin(), rep.stages.end(),
                             [](const StageRecord& s) { return s.pass; });
  return rep;
}

}  // namespace cantorlab
