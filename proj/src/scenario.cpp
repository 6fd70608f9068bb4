#include "cantorlab/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cantorlab {

using nlohmann::json;

namespace {

[[noreturn]] void cfg_fail(const std::string& path, const std::string& msg) {
  throw ScenarioError("config field '" + path + "': " + msg);
}

json require(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) cfg_fail(path + key, "missing");
  return j.at(key);
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) cfg_fail(path, "expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) cfg_fail(path, "expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

GroupAction parse_action(const json& j, const std::string& path) {
  const FiniteGroup g = build_group(require(j, "group", path).get<std::string>());
  if (!j.contains("action") || j.at("action") == "left-translation")
    return left_translation_action(g);
  const json& a = j.at("action");
  if (a.is_object() && a.contains("table")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : a.at("table")) table.push_back(int_list(row, path + "action.table"));
    return action_from_table(g, require(a, "alphabet_size", path + "action.").get<int>(), table);
  }
  cfg_fail(path + "action", "expected 'left-translation' or an explicit table");
}

std::vector<LetterMap> parse_auts(const json& j, const GroupAction& action,
                                  const std::string& path) {
  std::vector<LetterMap> auts;
  if (!j.contains("auts") || j.at("auts") == "translations") {
    for (int c = 0; c < action.group.order; ++c) {
      LetterMap m;
      m.alphabet_size = action.alphabet_size;
      m.map = action.act[c];
      m.label = "t" + std::to_string(c);
      auts.push_back(std::move(m));
    }
    return auts;
  }
  const json& a = j.at("auts");
  if (!a.is_array()) cfg_fail(path + "auts", "expected 'translations' or a list of image lists");
  int idx = 0;
  for (const auto& row : a) {
    LetterMap m;
    m.alphabet_size = action.alphabet_size;
    m.map = int_list(row, path + "auts");
    m.label = "a" + std::to_string(idx++);
    validate_letter_map(m);
    auts.push_back(std::move(m));
  }
  return auts;
}

std::vector<std::vector<int>> parse_schedule(const json& j, const std::string& path) {
  std::vector<std::vector<int>> out;
  const json s = require(j, "gens_schedule", path);
  if (!s.is_array() || s.empty()) cfg_fail(path + "gens_schedule", "expected a nonempty array");
  for (const auto& row : s) out.push_back(int_list(row, path + "gens_schedule"));
  return out;
}

std::string status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

CheckRecord make_check(const std::string& name, bool pass, std::string witness = "") {
  CheckRecord c;
  c.name = name;
  c.status = pass ? CheckStatus::Pass : CheckStatus::Fail;
  c.witness = std::move(witness);
  return c;
}

// --- per-scenario runners ---------------------------------------------------

void run_sadic(const json& cfg, long long budget, Report& rep) {
  const GroupAction action = parse_action(cfg, "");
  const auto schedule = parse_schedule(cfg, "");
  const auto auts = parse_auts(cfg, action, "");
  const int L = cfg.value("L", 10);
  const int K = cfg.value("K", 6);
  const int H = cfg.value("H", 32);
  const int p_max = cfg.value("p_max", 4);
  (void)budget;

  Timer t;
  const auto r = run_sadic_embedding(action, schedule, auts, L, K, H, p_max);
  for (const auto& s : r.stages) {
    CheckRecord c = make_check("sadic." + s.stage, s.pass, s.pass ? "" : s.detail);
    c.counts.emplace_back("detail", s.detail);
    rep.checks.push_back(std::move(c));
  }
  rep.checks.back().elapsed_seconds = t.seconds();
}

void run_oracle_compare(const json& cfg, long long budget, Report& rep) {
  const GroupAction action = parse_action(cfg, "");
  const auto schedule = parse_schedule(cfg, "");
  SubstitutionSequence seq;
  for (const auto& gens : schedule) seq.seq.push_back(substitution_from_action(action, gens));
  const int L = cfg.value("L", 12);
  const int K = cfg.value("K", 5);

  std::vector<int> seeds;
  if (!cfg.contains("seeds") || cfg.at("seeds") == "all")
    for (int a = 0; a < action.alphabet_size; ++a) seeds.push_back(a);
  else
    seeds = int_list(cfg.at("seeds"), "seeds");

  Timer t;
  bool all = true;
  std::string witness;
  for (int s : seeds) {
    const Language gen = generate_language(seq, s, L, K, budget);
    const Language ora = oracle_language(seq, s, L, K, budget);
    for (int l = 1; l <= L; ++l)
      if (gen.strata[l] != ora.strata[l]) {
        all = false;
        witness = "seed " + std::to_string(s) + " stratum " + std::to_string(l);
        break;
      }
    if (!all) break;
  }
  CheckRecord c = make_check("oracle.agreement", all, witness);
  c.counts.emplace_back("seeds", std::to_string(seeds.size()));
  c.counts.emplace_back("L", std::to_string(L));
  c.counts.emplace_back("K", std::to_string(K));
  c.elapsed_seconds = t.seconds();
  rep.checks.push_back(std::move(c));
}

void run_block_hierarchy(const json& cfg, Report& rep) {
  const GroupAction action = parse_action(cfg, "");
  const int depth = cfg.value("depth", 2);
  BlockHierarchyCaps caps;
  if (cfg.contains("caps")) {
    const json& c = cfg.at("caps");
    caps.enumeration_cap = c.value("enumeration_cap", caps.enumeration_cap);
    caps.marker_cap = c.value("marker_cap", caps.marker_cap);
    caps.pool_cap = c.value("pool_cap", caps.pool_cap);
  }
  MarkerSchedule sched;
  if (cfg.contains("marker_seeds")) {
    for (const auto& lvl : cfg.at("marker_seeds")) {
      std::vector<Word> words;
      for (const auto& w : lvl) words.push_back(parse_word(w.get<std::string>()));
      sched.seeds_per_level.push_back(std::move(words));
    }
  }

  Timer t;
  const BlockHierarchy h = build_block_hierarchy(action, depth, caps, sched);
  const auto checks = hierarchy_checks(h, cfg.value("sample_budget", 0LL));

  for (size_t i = 0; i < h.levels.size(); ++i) {
    CheckRecord c = make_check("hierarchy.level" + std::to_string(i + 1), true);
    c.counts.emplace_back("length", std::to_string(h.levels[i].length));
    c.counts.emplace_back("words", std::to_string(h.levels[i].word_count));
    c.counts.emplace_back("markers", std::to_string(h.levels[i].marker_count));
    if (i > 0) c.counts.emplace_back("density", h.levels[i].achieved_density.to_string());
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(make_check("hierarchy.invariance", checks.invariance, checks.failure));
  {
    CheckRecord c = make_check("hierarchy.claim", checks.claim, checks.claim ? "" : checks.failure);
    c.counts.emplace_back("bound", checks.claim_bound.to_string());
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(
      make_check("hierarchy.faithfulness", checks.faithfulness, checks.failure));
  rep.checks.back().elapsed_seconds = t.seconds();
}

void run_product_normalizer(const json& cfg, Report& rep) {
  const FiniteGroup g = build_group(require(cfg, "group", "").get<std::string>());
  const int m = require(cfg, "modulus", "").get<int>();
  const int base = cfg.value("base_component", 0);
  Timer t;
  const auto sys = build_lemma31_system(g, m);
  const auto ps = build_product_normalizer(sys, base, cfg.value("enumeration_cap", 1 << 20));
  const auto r = verify_product_relations(ps);

  {
    CheckRecord c = make_check("product.relations", r.relations_hold, r.failure);
    c.counts.emplace_back("instances", std::to_string(r.relation_instances));
    c.counts.emplace_back("index_size", std::to_string(ps.index_size()));
    c.counts.emplace_back("states", std::to_string(ps.state_count));
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(make_check("product.injective", r.t_injective, r.failure));
  rep.checks.push_back(make_check("product.homomorphism", r.t_homomorphism, r.failure));
  rep.checks.push_back(make_check("product.alpha", r.alpha_multiplicative, r.failure));
  rep.checks.push_back(make_check("product.freeness", r.windowed_freeness, r.failure));
  rep.checks.back().elapsed_seconds = t.seconds();
}

void run_profinite(const json& cfg, Report& rep) {
  Timer t;
  ProfiniteRealization pr;
  if (cfg.contains("tower")) {
    const auto moduli = int_list(cfg.at("tower"), "tower");
    const QuotientTower tower = build_cyclic_tower(moduli);
    pr = build_profinite_realization(tower, cfg.value("depth", tower.depth()));
  } else {
    pr = build_profinite_realization(build_group(require(cfg, "group", "").get<std::string>()));
  }
  {
    const int n = pr.action.group.order;
    CheckRecord c = make_check("profinite.centralizer", pr.accepted_centralizer_count == n,
                               pr.accepted_centralizer_count == n
                                   ? ""
                                   : "expected " + std::to_string(n) + " maps, got " +
                                         std::to_string(pr.accepted_centralizer_count));
    c.counts.emplace_back("accepted", std::to_string(pr.accepted_centralizer_count));
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(make_check("profinite.free", pr.right_family_free));
  rep.checks.push_back(make_check("profinite.transitive", pr.right_family_transitive));
  {
    CheckRecord c = make_check("profinite.normalizer", true);
    c.counts.emplace_back("proper_elements", std::to_string(pr.proper_normalizer_count));
    rep.checks.push_back(std::move(c));
  }
  rep.checks.back().elapsed_seconds = t.seconds();
}

void run_direct_product(const json& cfg, Report& rep) {
  auto parse_side = [&](const std::string& key) {
    const json side = require(cfg, key, "");
    SystemSpec s;
    s.action = parse_action(side, key + ".");
    s.gens = int_list(require(side, "gens", key + "."), key + ".gens");
    s.auts = parse_auts(side, s.action, key + ".");
    return s;
  };
  Timer t;
  const SystemSpec a = parse_side("a");
  const SystemSpec b = parse_side("b");
  const auto r = build_direct_product(a, b);
  {
    CheckRecord c = make_check("direct_product.equivariance", r.all_equivariant);
    c.counts.emplace_back("product_auts", std::to_string(r.product_auts.size()));
    c.counts.emplace_back("product_gens", std::to_string(r.product_gens.size()));
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(make_check("direct_product.injective", r.pairing_injective));
  rep.checks.back().elapsed_seconds = t.seconds();
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (c.status != CheckStatus::Pass) return false;
  return true;
}

bool Report::any_fail() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return true;
  return false;
}

int Report::exit_code() const {
  if (all_pass()) return 0;
  return any_fail() ? 1 : 2;
}

std::string Report::render() const {
  std::ostringstream os;
  os << "schema = " << schema << "\n";
  os << "scenario = " << scenario << "\n";
  os << "config = " << config_echo << "\n";
  int pass = 0, failc = 0, inconclusive = 0;
  for (const auto& c : checks) {
    os << "check " << c.name << "\n";
    os << "  status = " << status_str(c.status) << "\n";
    if (!c.witness.empty()) os << "  witness = " << c.witness << "\n";
    for (const auto& [k, v] : c.counts) os << "  " << k << " = " << v << "\n";
    switch (c.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++failc; break;
      default: ++inconclusive;
    }
  }
  os << "summary\n  pass = " << pass << "\n  fail = " << failc
     << "\n  inconclusive = " << inconclusive << "\n";
  os << "\n# timing (non-hashed)\n";
  for (const auto& c : checks)
    if (c.elapsed_seconds > 0)
      os << "check " << c.name << " elapsed = " << c.elapsed_seconds << "s\n";
  return os.str();
}

long long effective_budget(long long configured) {
  if (const char* env = std::getenv("CANTORLAB_BUDGET")) return std::atoll(env);
  return configured;
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("config is not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  cfg.kind = require(j, "scenario", "").get<std::string>();
  static const std::vector<std::string> kinds = {"sadic-embedding",    "block-hierarchy",
                                                 "product-normalizer", "profinite",
                                                 "direct-product",     "oracle-compare"};
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
    cfg_fail("scenario", "unknown kind '" + cfg.kind + "'");
  cfg.budget = effective_budget(j.value("budget", 8'000'000LL));
  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<unsigned long long>();
    cfg.seed_given = true;
  }
  if (j.value("sampling", false) && !cfg.seed_given)
    cfg_fail("seed", "required when sampling is enabled");
  cfg.out_path = j.value("out", "");
  cfg.raw_json = j.dump();  // canonical: sorted keys, no whitespace
  cfg.payload = cfg.raw_json;
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario_config(os.str());
}

Report run_scenario(const ScenarioConfig& config) {
  const json cfg = json::parse(config.payload);
  Report rep;
  rep.scenario = config.kind;
  rep.config_echo = config.raw_json;
  if (config.kind == "sadic-embedding")
    run_sadic(cfg, config.budget, rep);
  else if (config.kind == "oracle-compare")
    run_oracle_compare(cfg, config.budget, rep);
  else if (config.kind == "block-hierarchy")
    run_block_hierarchy(cfg, rep);
  else if (config.kind == "product-normalizer")
    run_product_normalizer(cfg, rep);
  else if (config.kind == "profinite")
    run_profinite(cfg, rep);
  else if (config.kind == "direct-product")
    run_direct_product(cfg, rep);

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) throw ScenarioError("cannot write report to " + config.out_path);
    out << rep.render();
  }
  return rep;
}

Language oracle_language(const SubstitutionSequence& seq, int seed, int max_len, int depth,
                         long long letter_budget) {
  validate_sequence(seq);
  Language lang;
  lang.max_len = max_len;
  lang.strata.assign(max_len + 1, {});
  lang.seed_letter = seed;
  lang.depth = depth;
  for (int j = 0; j <= depth; ++j) {
    const Word full = apply_composition(seq, j, {seed}, letter_budget);
    const int n = static_cast<int>(full.size());
    for (int l = 1; l <= std::min(max_len, n); ++l)
      for (int i = 0; i + l <= n; ++i)
        lang.strata[l].emplace(full.begin() + i, full.begin() + i + l);
  }
  return lang;
}

std::string render_language(const Language& lang) {
  std::ostringstream os;
  for (int l = 1; l <= lang.max_len; ++l) {
    os << "len=" << l << " count=" << lang.strata[l].size() << "\n";
    for (const auto& w : lang.strata[l]) os << word_to_string(w) << "\n";
  }
  return os.str();
}

std::string render_hierarchy(const BlockHierarchy& h) {
  std::ostringstream os;
  for (size_t i = 0; i < h.levels.size(); ++i) {
    const auto& lvl = h.levels[i];
    os << "n=" << (i + 1) << " ln=" << lvl.length << " kn=" << lvl.marker_count
       << " |Bn|=" << lvl.word_count << "\n";
    for (const auto& x : lvl.markers) os << "marker " << word_to_string(x) << "\n";
    if (lvl.enumerated)
      for (const auto& w : lvl.words) os << word_to_string(w) << "\n";
  }
  return os.str();
}

GroupAction action_from_config_json(const std::string& json_text) {
  return parse_action(json::parse(json_text), "");
}

}  // namespace cantorlab
