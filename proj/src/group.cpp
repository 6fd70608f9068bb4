#include "cantorlab/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cantorlab {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_triple(const FiniteGroup& g, int a, int b, int c) {
  if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) {
    std::ostringstream os;
    os << "group '" << g.label << "' not associative at triple (" << a << ", " << b << ", " << c
       << ")";
    fail(os.str());
  }
}

std::vector<int> find_inverses(const FiniteGroup& g) {
  std::vector<int> inv(g.order, -1);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (g.mul[a][b] == g.identity && g.mul[b][a] == g.identity) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] < 0) fail("group '" + g.label + "': element " + std::to_string(a) + " has no inverse");
  }
  return inv;
}

// Permutations of {0..k-1} in lexicographic one-line order.
std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

void validate_group(const FiniteGroup& g, const GroupValidationOptions& opts) {
  if (g.order <= 0) fail("group order must be positive");
  if (static_cast<int>(g.mul.size()) != g.order) fail("mul table has wrong row count");
  for (const auto& row : g.mul) {
    if (static_cast<int>(row.size()) != g.order) fail("mul table has wrong column count");
    for (int v : row)
      if (v < 0 || v >= g.order) fail("mul table entry out of range");
  }
  for (int a = 0; a < g.order; ++a) {
    if (g.mul[g.identity][a] != a || g.mul[a][g.identity] != a)
      fail("group '" + g.label + "': identity law fails at element " + std::to_string(a));
  }
  if (static_cast<int>(g.inv.size()) != g.order) fail("inverse table has wrong size");
  for (int a = 0; a < g.order; ++a) {
    if (g.mul[a][g.inv[a]] != g.identity || g.mul[g.inv[a]][a] != g.identity)
      fail("group '" + g.label + "': inverse law fails at element " + std::to_string(a));
  }
  if (g.order <= opts.exhaustive_threshold) {
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b)
        for (int c = 0; c < g.order; ++c) check_triple(g, a, b, c);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(0, g.order - 1);
    for (int i = 0; i < opts.samples; ++i) check_triple(g, dist(rng), dist(rng), dist(rng));
  }
}

FiniteGroup build_cyclic_group(int m) {
  if (m < 1) fail("cyclic group order must be >= 1");
  FiniteGroup g;
  g.order = m;
  g.identity = 0;
  g.label = "Z/" + std::to_string(m);
  g.mul.assign(m, std::vector<int>(m));
  g.inv.assign(m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) g.mul[a][b] = (a + b) % m;
    g.inv[a] = (m - a) % m;
  }
  return g;
}

FiniteGroup build_symmetric_group(int k) {
  if (k < 1) fail("symmetric group degree must be >= 1");
  auto perms = all_permutations(k);
  const int n = static_cast<int>(perms.size());
  FiniteGroup g;
  g.order = n;
  g.label = "S" + std::to_string(k);
  g.mul.assign(n, std::vector<int>(n));
  g.inv.assign(n, 0);

  auto index_of = [&](const std::vector<int>& p) {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    return static_cast<int>(it - perms.begin());
  };
  g.identity = 0;  // identity permutation is lexicographically first
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> comp(k);  // (a*b)(i) = a(b(i))
      for (int i = 0; i < k; ++i) comp[i] = perms[a][perms[b][i]];
      g.mul[a][b] = index_of(comp);
    }
    std::vector<int> iv(k);
    for (int i = 0; i < k; ++i) iv[perms[a][i]] = i;
    g.inv[a] = index_of(iv);
  }
  return g;
}

FiniteGroup build_product_group(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.order = a.order * b.order;
  g.label = a.label + "x" + b.label;
  g.identity = a.identity * b.order + b.identity;
  g.mul.assign(g.order, std::vector<int>(g.order));
  g.inv.assign(g.order, 0);
  for (int x = 0; x < g.order; ++x) {
    const int xa = x / b.order, xb = x % b.order;
    for (int y = 0; y < g.order; ++y) {
      const int ya = y / b.order, yb = y % b.order;
      g.mul[x][y] = a.mul[xa][ya] * b.order + b.mul[xb][yb];
    }
    g.inv[x] = a.inv[xa] * b.order + b.inv[xb];
  }
  return g;
}

FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& mul, std::string label) {
  FiniteGroup g;
  g.order = static_cast<int>(mul.size());
  g.mul = mul;
  g.label = std::move(label);
  if (g.order == 0) fail("empty multiplication table");
  // locate the two-sided identity
  g.identity = -1;
  for (int e = 0; e < g.order; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a) {
      if (e >= static_cast<int>(mul.size()) || a >= static_cast<int>(mul[e].size())) fail("ragged table");
      ok = mul[e][a] == a && mul[a][e] == a;
    }
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) fail("table has no two-sided identity");
  g.inv.assign(g.order, 0);
  {
    FiniteGroup probe = g;
    probe.inv = find_inverses(probe);
    g.inv = probe.inv;
  }
  validate_group(g);
  return g;
}

FiniteGroup build_group(const std::string& spec) {
  std::string s = spec;
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? "" : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.rfind("cyclic", 0) == 0) return build_cyclic_group(std::stoi(s.substr(6)));
  if (s.rfind("symmetric", 0) == 0) return build_symmetric_group(std::stoi(s.substr(9)));
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(8, s.size() - 9);
    // split on the comma at paren depth 0
    int depth = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ',' && depth == 0)
        return build_product_group(build_group(inner.substr(0, i)), build_group(inner.substr(i + 1)));
    }
    fail("product spec needs two components: " + spec);
  }
  fail("unsupported group spec: " + spec);
}

int QuotientTower::project_to(int top_elem, int d) const {
  int e = top_elem;
  for (int lvl = depth() - 1; lvl >= d; --lvl) e = projections[lvl - 1][e];
  return e;
}

int QuotientTower::least_separating_level(int a, int b) const {
  for (int d = 1; d <= depth(); ++d)
    if (project_to(a, d) != project_to(b, d)) return d;
  return 0;  // not separated (only for a == b in a valid tower)
}

void validate_tower(const QuotientTower& tower) {
  if (tower.levels.empty()) fail("tower depth must be >= 1");
  if (tower.projections.size() + 1 != tower.levels.size())
    fail("tower needs one projection per adjacent level pair");
  for (size_t d = 0; d + 1 < tower.levels.size(); ++d) {
    const auto& lo = tower.levels[d];
    const auto& hi = tower.levels[d + 1];
    const auto& pi = tower.projections[d];
    if (static_cast<int>(pi.size()) != hi.order) fail("projection table has wrong size");
    std::vector<bool> hit(lo.order, false);
    for (int a = 0; a < hi.order; ++a) {
      if (pi[a] < 0 || pi[a] >= lo.order) fail("projection value out of range");
      hit[pi[a]] = true;
      for (int b = 0; b < hi.order; ++b)
        if (pi[hi.mul[a][b]] != lo.mul[pi[a]][pi[b]])
          fail("projection at level " + std::to_string(d + 1) + " is not a homomorphism at (" +
               std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool v) { return v; }))
      fail("projection at level " + std::to_string(d + 1) + " is not surjective");
  }
  // faithful separation of the top level
  const int top = tower.levels.back().order;
  for (int a = 0; a < top; ++a)
    for (int b = a + 1; b < top; ++b)
      if (tower.least_separating_level(a, b) == 0)
        fail("tower does not separate top-level elements " + std::to_string(a) + " and " +
             std::to_string(b));
}

QuotientTower build_cyclic_tower(const std::vector<int>& moduli) {
  if (moduli.empty()) fail("tower depth must be >= 1");
  QuotientTower t;
  for (size_t d = 0; d < moduli.size(); ++d) {
    if (d > 0 && moduli[d] % moduli[d - 1] != 0)
      fail("cyclic chain requires divisibility: " + std::to_string(moduli[d - 1]) +
           " does not divide " + std::to_string(moduli[d]));
    t.levels.push_back(build_cyclic_group(moduli[d]));
    if (d > 0) {
      std::vector<int> pi(moduli[d]);
      for (int a = 0; a < moduli[d]; ++a) pi[a] = a % moduli[d - 1];
      t.projections.push_back(std::move(pi));
    }
  }
  validate_tower(t);
  return t;
}

void validate_action(const GroupAction& action) {
  const auto& g = action.group;
  if (action.alphabet_size <= 0) fail("alphabet must be nonempty");
  if (static_cast<int>(action.act.size()) != g.order) fail("action table has wrong row count");
  for (int e = 0; e < g.order; ++e) {
    const auto& row = action.act[e];
    if (static_cast<int>(row.size()) != action.alphabet_size) fail("action row has wrong length");
    std::vector<bool> hit(action.alphabet_size, false);
    for (int a = 0; a < action.alphabet_size; ++a) {
      if (row[a] < 0 || row[a] >= action.alphabet_size) fail("action value out of range");
      if (hit[row[a]])
        fail("action row " + std::to_string(e) + " is not a permutation");
      hit[row[a]] = true;
    }
  }
  for (int a = 0; a < action.alphabet_size; ++a)
    if (action.act[g.identity][a] != a)
      fail("identity row must fix every letter; moves " + std::to_string(a));
  for (int x = 0; x < g.order; ++x)
    for (int y = 0; y < g.order; ++y)
      for (int a = 0; a < action.alphabet_size; ++a)
        if (action.act[g.mul[x][y]][a] != action.act[x][action.act[y][a]])
          fail("action is not compatible with multiplication at (" + std::to_string(x) + ", " +
               std::to_string(y) + ", " + std::to_string(a) + ")");
}

ActionFlags action_diagnostics(const GroupAction& action) {
  ActionFlags f;
  const int n = action.group.order;
  const int k = action.alphabet_size;

  f.free_action = true;
  for (int g = 0; g < n && f.free_action; ++g) {
    if (g == action.group.identity) continue;
    for (int a = 0; a < k; ++a) {
      if (action.act[g][a] == a) {
        f.free_action = false;
        f.free_witness = {g, a};
        break;
      }
    }
  }

  f.faithful = true;
  for (int g = 0; g < n && f.faithful; ++g)
    for (int h = g + 1; h < n && f.faithful; ++h)
      if (action.act[g] == action.act[h]) {
        f.faithful = false;
        f.faithful_witness = {g, h};
      }

  // orbit of letter 0 must cover the alphabet
  std::vector<bool> reached(k, false);
  for (int g = 0; g < n; ++g) reached[action.act[g][0]] = true;
  f.transitive = true;
  for (int a = 0; a < k; ++a)
    if (!reached[a]) {
      f.transitive = false;
      f.transitive_witness = {0, a};
      break;
    }
  return f;
}

GroupAction left_translation_action(const FiniteGroup& g) {
  GroupAction a;
  a.group = g;
  a.alphabet_size = g.order;
  a.act = g.mul;
  a.flags = action_diagnostics(a);
  return a;
}

GroupAction quotient_translation_action(const FiniteGroup& g, const FiniteGroup& quotient,
                                        const std::vector<int>& hom) {
  if (static_cast<int>(hom.size()) != g.order) fail("homomorphism table has wrong size");
  GroupAction a;
  a.group = g;
  a.alphabet_size = quotient.order;
  a.act.assign(g.order, std::vector<int>(quotient.order));
  for (int e = 0; e < g.order; ++e)
    for (int x = 0; x < quotient.order; ++x) a.act[e][x] = quotient.mul[hom[e]][x];
  validate_action(a);
  a.flags = action_diagnostics(a);
  return a;
}

GroupAction action_from_table(const FiniteGroup& g, int alphabet_size,
                              const std::vector<std::vector<int>>& table) {
  GroupAction a;
  a.group = g;
  a.alphabet_size = alphabet_size;
  a.act = table;
  validate_action(a);
  a.flags = action_diagnostics(a);
  return a;
}

namespace {

std::vector<std::vector<int>> parse_table_text(const std::string& text, const char* what) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n <= 0) fail(std::string(what) + " table: bad size line");
  std::vector<std::vector<int>> rows;
  std::vector<int> row;
  int v;
  while (in >> v) {
    row.push_back(v);
    if (static_cast<int>(row.size()) == n) {
      rows.push_back(row);
      row.clear();
    }
  }
  if (!row.empty()) fail(std::string(what) + " table: ragged final row");
  return rows;
}

}  // namespace

FiniteGroup group_from_table_text(const std::string& text, std::string label) {
  const auto rows = parse_table_text(text, "group");
  if (rows.empty() || rows.size() != rows.front().size())
    fail("group table must be square");
  return build_group_from_table(rows, std::move(label));
}

GroupAction action_from_table_text(const FiniteGroup& g, const std::string& text) {
  const auto rows = parse_table_text(text, "action");
  if (static_cast<int>(rows.size()) != g.order)
    fail("action table needs one row per group element");
  return action_from_table(g, rows.empty() ? 0 : static_cast<int>(rows.front().size()), rows);
}

CosetDecomposition stabilizer_and_cosets(const GroupAction& action,
                                         const std::vector<std::vector<int>>& partition,
                                         const std::vector<int>& block) {
  const auto& g = action.group;
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::vector<int>> blocks;
  blocks.reserve(partition.size());
  for (const auto& b : partition) blocks.push_back(sorted(b));
  const auto target = sorted(block);
  if (std::find(blocks.begin(), blocks.end(), target) == blocks.end())
    fail("block is not a member of the partition");

  auto image = [&](int e, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(b.size());
    for (int a : b) out.push_back(action.act[e][a]);
    std::sort(out.begin(), out.end());
    return out;
  };
  // the action must permute the partition blocks
  for (int e = 0; e < g.order; ++e)
    for (const auto& b : blocks)
      if (std::find(blocks.begin(), blocks.end(), image(e, b)) == blocks.end())
        fail("action does not permute the given partition");

  CosetDecomposition out;
  for (int e = 0; e < g.order; ++e)
    if (image(e, target) == target) out.stabilizer.push_back(e);

  out.coset_index.assign(g.order, -1);
  // identity coset first, then minimal uncovered element id
  std::vector<int> order_of_visit;
  order_of_visit.push_back(g.identity);
  for (int e = 0; e < g.order; ++e)
    if (e != g.identity) order_of_visit.push_back(e);
  for (int rep : order_of_visit) {
    if (out.coset_index[rep] >= 0) continue;
    const int idx = static_cast<int>(out.representatives.size());
    out.representatives.push_back(rep);
    for (int s : out.stabilizer) out.coset_index[g.mul[rep][s]] = idx;
  }
  return out;
}

}  // namespace cantorlab
