#include "cantorlab/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace cantorlab {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

bool contains_factor(const Word& hay, const Word& needle) {
  if (needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

Word parse_word(const std::string& line) {
  Word w;
  std::istringstream is(line);
  int v;
  while (is >> v) w.push_back(v);
  return w;
}

Dyadic Dyadic::pow2(int e) {
  Dyadic d;
  d.num = 1;
  d.exp = e;
  return d;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  Dyadic r;
  r.exp = std::max(exp, o.exp);
  if (r.exp > 120) fail("dyadic exponent out of range (window too wide)");
  r.num = (num << (r.exp - exp)) + (o.num << (r.exp - o.exp));
  while (r.num != 0 && (r.num & 1) == 0 && r.exp > 0) {
    r.num >>= 1;
    --r.exp;
  }
  if (r.num == 0) r.exp = 0;
  return r;
}

bool Dyadic::operator<(const Dyadic& o) const {
  const int e = std::max(exp, o.exp);
  return (num << (e - exp)) < (o.num << (e - o.exp));
}

std::string Dyadic::to_string() const {
  if (exp == 0) return int128_to_string(num);
  return int128_to_string(num) + "/2^" + std::to_string(exp);
}

double Dyadic::approx() const {
  return static_cast<double>(num) / std::pow(2.0, exp);
}

bool Language::contains(const Word& w) const {
  const int l = static_cast<int>(w.size());
  if (l < 1 || l > max_len) return false;
  return strata[l].count(w) > 0;
}

Dyadic AlphabetMetric::dist(int a, int b) const {
  if (a == b) return Dyadic::zero();
  if (mode == Mode::Discrete) return Dyadic::pow2(0);
  if (!tower) fail("tower metric requires a quotient tower");
  const int sep = tower->least_separating_level(a, b);  // >= 1 for distinct letters
  return Dyadic::pow2(sep - 1);                         // agree on levels below sep
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void validate_substitution(const Substitution& sub) {
  if (sub.alphabet_size <= 0) fail("substitution alphabet must be nonempty");
  if (static_cast<int>(sub.images.size()) != sub.alphabet_size)
    fail("substitution needs one image per letter");
  for (const auto& img : sub.images) {
    if (img.empty()) fail("substitution image must be nonempty");
    for (int c : img)
      if (c < 0 || c >= sub.alphabet_size) fail("substitution image letter out of range");
  }
  if (sub.constant_length) {
    for (const auto& img : sub.images)
      if (static_cast<int>(img.size()) != *sub.constant_length)
        fail("constant_length set but image lengths differ");
  }
}

void validate_sequence(const SubstitutionSequence& seq) {
  if (seq.seq.empty()) fail("substitution sequence must be nonempty");
  const int n = seq.seq.front().alphabet_size;
  for (const auto& s : seq.seq) {
    validate_substitution(s);
    if (s.alphabet_size != n) fail("sequence substitutions must share the alphabet");
  }
  if (seq.nested) {
    for (size_t i = 0; i + 1 < seq.seq.size(); ++i)
      for (int a = 0; a < n; ++a) {
        const auto& lo = seq.seq[i].images[a];
        const auto& hi = seq.seq[i + 1].images[a];
        if (lo.size() > hi.size() || !std::equal(lo.begin(), lo.end(), hi.begin()))
          fail("nested sequence: image of letter " + std::to_string(a) + " at position " +
               std::to_string(i) + " is not a prefix of the next");
      }
  }
}

Substitution substitution_from_action(const GroupAction& action, const std::vector<int>& gens) {
  if (gens.empty()) fail("generator list must be nonempty");
  if (gens.front() != action.group.identity) fail("first generator must be the identity");
  std::set<int> seen;
  for (int g : gens) {
    if (g < 0 || g >= action.group.order) fail("generator id out of range");
    if (!seen.insert(g).second) fail("duplicate generator " + std::to_string(g));
  }
  for (int g : gens)
    if (!seen.count(action.group.inv[g]))
      fail("generator set is not symmetric: missing inverse of " + std::to_string(g));

  Substitution sub;
  sub.alphabet_size = action.alphabet_size;
  sub.constant_length = static_cast<int>(gens.size());
  sub.images.resize(action.alphabet_size);
  for (int a = 0; a < action.alphabet_size; ++a) {
    Word img;
    img.reserve(gens.size());
    for (int s : gens) img.push_back(action.act[s][a]);
    sub.images[a] = std::move(img);
  }
  return sub;
}

Substitution identity_substitution(int alphabet_size) {
  Substitution sub;
  sub.alphabet_size = alphabet_size;
  sub.constant_length = 1;
  sub.images.resize(alphabet_size);
  for (int a = 0; a < alphabet_size; ++a) sub.images[a] = {a};
  return sub;
}

Word apply_substitution(const Substitution& sub, const Word& w) {
  Word out;
  for (int a : w) {
    if (a < 0 || a >= sub.alphabet_size) fail("letter id " + std::to_string(a) + " out of range");
    const auto& img = sub.images[a];
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Word apply_composition(const SubstitutionSequence& seq, int j, const Word& w,
                       long long letter_budget) {
  Word cur = w;
  for (int i = j; i >= 0; --i) {
    cur = apply_substitution(seq.at(i), cur);
    if (letter_budget > 0 && static_cast<long long>(cur.size()) > letter_budget)
      throw BudgetError("expansion exceeds letter budget at depth " + std::to_string(i));
  }
  return cur;
}

namespace {

// All factors of `w` with length <= cap, merged into `out`.
void collect_factors(const Word& w, int cap, std::set<Word>& out) {
  const int n = static_cast<int>(w.size());
  for (int l = 1; l <= std::min(cap, n); ++l)
    for (int i = 0; i + l <= n; ++i) out.emplace(w.begin() + i, w.begin() + i + l);
}

}  // namespace

Language generate_language(const SubstitutionSequence& seq, int seed, int max_len, int depth,
                           long long letter_budget) {
  validate_sequence(seq);
  if (max_len < 1) fail("max_len must be >= 1");
  if (depth < 0) fail("depth must be >= 0");
  if (seed < 0 || seed >= seq.alphabet_size()) fail("seed letter out of range");

  Language lang;
  lang.max_len = max_len;
  lang.strata.assign(max_len + 1, {});
  lang.seed_letter = seed;
  lang.depth = depth;

  long long stored = 0;
  auto charge = [&](long long letters) {
    stored += letters;
    if (stored > letter_budget)
      throw BudgetError("language generation exceeds letter budget (" +
                        std::to_string(letter_budget) + ")");
  };

  if (seq.seq.size() == 1) {
    // Stationary case: one incremental pass. Fact(tau^{j+1}) of length <= keep
    // is covered by expanding the factors of tau^j of length <= window.
    const Substitution& sub = seq.at(0);
    int dmin = static_cast<int>(sub.images[0].size());
    for (const auto& img : sub.images) dmin = std::min(dmin, static_cast<int>(img.size()));
    const int keep = std::max(max_len, 3);
    const int window = std::min(keep, (keep + dmin - 1) / dmin + 1);

    std::set<Word> factors;
    factors.insert(Word{seed});
    for (int j = 0; j <= depth; ++j) {
      // every factor of length <= window sits inside one of maximal expand_len,
      // so expanding just those covers Fact(tau^{j+1}) up to keep
      int longest = 0;
      for (const auto& u : factors) longest = std::max(longest, static_cast<int>(u.size()));
      const int expand_len = std::min(window, longest);
      std::set<Word> next;
      for (const auto& u : factors) {
        if (static_cast<int>(u.size()) != expand_len) continue;
        const Word img = apply_substitution(sub, u);
        charge(static_cast<long long>(img.size()));
        collect_factors(img, keep, next);
      }
      charge(static_cast<long long>(next.size()));
      factors = std::move(next);
      for (const auto& w : factors)
        if (static_cast<int>(w.size()) <= max_len) lang.strata[w.size()].insert(w);
    }
    return lang;
  }

  for (int j = 0; j <= depth; ++j) {
    // Window lengths per level: a factor of length m of tau_i(w) is covered
    // by a factor of w of length ceil(m / min|image|) + 1.
    std::vector<int> window(j + 2);
    window[0] = max_len;
    for (int i = 0; i <= j; ++i) {
      int dmin = static_cast<int>(seq.at(i).images[0].size());
      for (const auto& img : seq.at(i).images)
        dmin = std::min(dmin, static_cast<int>(img.size()));
      window[i + 1] = (window[i] + dmin - 1) / dmin + 1;
    }

    std::set<Word> factors;
    factors.insert(Word{seed});
    for (int i = j; i >= 0; --i) {
      const Substitution& sub = seq.at(i);
      std::set<Word> next;
      for (const auto& u : factors) {
        const Word img = apply_substitution(sub, u);
        charge(static_cast<long long>(img.size()));
        collect_factors(img, window[i], next);
      }
      charge(static_cast<long long>(next.size()));
      factors = std::move(next);
    }
    for (const auto& w : factors)
      if (static_cast<int>(w.size()) <= max_len) lang.strata[w.size()].insert(w);
  }
  return lang;
}

PrimitivityResult primitivity_check(const Substitution& sub, const std::vector<int>& target) {
  validate_substitution(sub);
  const int n = sub.alphabet_size;
  PrimitivityResult res;
  res.incidence.assign(n, std::vector<long long>(n, 0));
  for (int b = 0; b < n; ++b)
    for (int a : sub.images[b]) ++res.incidence[a][b];

  std::vector<int> v = target;
  if (v.empty())
    for (int a = 0; a < n; ++a) v.push_back(a);

  // positivity pattern of M^k, k = 1 .. n^2
  std::vector<std::vector<bool>> pos(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pos[a][b] = res.incidence[a][b] > 0;
  const int kmax = n * n;
  for (int k = 1; k <= kmax; ++k) {
    bool all_positive = true;
    for (int a = 0; a < n && all_positive; ++a)
      for (int b = 0; b < n; ++b)
        if (!pos[a][b]) {
          all_positive = false;
          break;
        }
    if (all_positive && !res.primitive) {
      res.primitive = true;
      res.power = k;
    }
    if (!res.target_power) {
      bool covered = true;
      for (int b = 0; b < n && covered; ++b) {
        bool hit = false;
        for (int a : v)
          if (pos[a][b]) {
            hit = true;
            break;
          }
        covered = hit;
      }
      if (covered) res.target_power = k;
    }
    if (res.primitive && res.target_power) break;
    // pattern of M^{k+1} = M^k * M
    std::vector<std::vector<bool>> nxt(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (pos[a][c])
          for (int b = 0; b < n; ++b)
            if (res.incidence[c][b] > 0) nxt[a][b] = true;
    pos = std::move(nxt);
  }
  return res;
}

IndependenceResult language_independence_check(const SubstitutionSequence& seq, int a, int b,
                                               int max_len, int depth) {
  IndependenceResult res;
  if (a == b) {
    res.equal = true;
    res.trivially_reflexive = true;
    return res;
  }
  const Language la = generate_language(seq, a, max_len, depth);
  const Language lb = generate_language(seq, b, max_len, depth);
  for (int l = 1; l <= max_len; ++l) {
    if (la.strata[l] == lb.strata[l]) continue;
    std::vector<Word> diff;
    std::set_symmetric_difference(la.strata[l].begin(), la.strata[l].end(), lb.strata[l].begin(),
                                  lb.strata[l].end(), std::back_inserter(diff));
    res.divergence_length = l;
    res.witness = diff.front();
    return res;
  }
  res.equal = true;
  return res;
}

RecurrenceResult recurrence_profile(const Language& lang, const Word& w, int horizon) {
  if (!lang.contains(w)) fail("word is not in the language");
  if (horizon > lang.max_len) fail("horizon exceeds the language's max length");
  RecurrenceResult res;
  for (int r = static_cast<int>(w.size()); r <= horizon; ++r) {
    bool all = true;
    for (const auto& u : lang.strata[r])
      if (!contains_factor(u, w)) {
        all = false;
        if (r == horizon) res.gap_witness = u;
        break;
      }
    if (all) {
      res.uniformly_recurrent = true;
      res.bound = r;
      return res;
    }
  }
  if (res.gap_witness.empty())
    for (const auto& u : lang.strata[horizon])
      if (!contains_factor(u, w)) {
        res.gap_witness = u;
        break;
      }
  return res;
}

AperiodicityResult aperiodicity_check(const Language& lang, int p_max) {
  if (lang.max_len < 2 * p_max) fail("max_len must be at least 2 * p_max");
  AperiodicityResult res;
  const int top = lang.max_len;
  for (int p = 1; p <= p_max; ++p) {
    for (const auto& u : lang.strata[p]) {
      // truncation of u^omega from the origin
      Word power;
      while (static_cast<int>(power.size()) < top) power.insert(power.end(), u.begin(), u.end());
      power.resize(top);
      if (!lang.strata[top].count(power)) continue;
      // every top-stratum word must be a factor of u^omega
      Word ring;
      while (static_cast<int>(ring.size()) < top + p) ring.insert(ring.end(), u.begin(), u.end());
      std::set<Word> periodic_factors;
      for (int i = 0; i < p; ++i)
        periodic_factors.emplace(ring.begin() + i, ring.begin() + i + top);
      bool all_periodic = true;
      for (const auto& w : lang.strata[top])
        if (!periodic_factors.count(w)) {
          all_periodic = false;
          break;
        }
      if (all_periodic) {
        res.aperiodic = false;
        res.period_witness = u;
        return res;
      }
    }
  }
  res.aperiodic = true;
  return res;
}

Dyadic seq_distance(const Word& x, const Word& y, int center, const AlphabetMetric& metric) {
  if (x.size() != y.size()) fail("windows must have the same length");
  if (center < 0 || center >= static_cast<int>(x.size())) fail("center offset out of range");
  Dyadic sum = Dyadic::zero();
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    const Dyadic d = metric.dist(x[i], y[i]);
    if (d.num == 0) continue;
    const int off = std::abs(i - center);
    sum = sum + Dyadic{d.num, d.exp + off};
  }
  return sum;
}

Dyadic word_distance(const Word& u, const Word& v, const AlphabetMetric& metric) {
  const size_t n = std::min(u.size(), v.size());
  Dyadic m = Dyadic::zero();
  for (size_t i = 0; i < n; ++i) {
    const Dyadic d = metric.dist(u[i], v[i]);
    if (m < d) m = d;
  }
  return m;
}

std::vector<int> complexity_profile(const Language& lang) {
  std::vector<int> p;
  p.reserve(lang.max_len);
  for (int l = 1; l <= lang.max_len; ++l) p.push_back(static_cast<int>(lang.strata[l].size()));
  return p;
}

}  // namespace cantorlab
