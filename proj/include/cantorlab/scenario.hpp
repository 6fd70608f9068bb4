#pragma once

#include <map>
#include <string>
#include <vector>

#include "cantorlab/constructions.hpp"
#include "cantorlab/words.hpp"

namespace cantorlab {

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string witness;                       // required for fail / inconclusive
  std::vector<std::pair<std::string, std::string>> counts;
  double elapsed_seconds = 0.0;              // excluded from the hashed section
};

struct Report {
  std::string schema = "cantorlab-report/1";
  std::string scenario;
  std::string config_echo;  // canonical serialization of the config
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  bool any_fail() const;
  /// Deterministic body (no timings) followed by a timing section.
  std::string render() const;
  /// 0 all pass, 1 any fail, 2 inconclusive only.
  int exit_code() const;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses and validates a JSON scenario config; throws ScenarioError with
/// the offending field path.
struct ScenarioConfig {
  std::string raw_json;      // canonical re-serialization
  std::string kind;
  long long budget = 8'000'000;
  unsigned long long seed = 0;
  bool seed_given = false;
  std::string out_path;

  // parsed payload kept as JSON text; each runner re-reads what it needs
  std::string payload;
};

ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

Report run_scenario(const ScenarioConfig& config);

/// Brute-force language oracle: fully expands tau_0 o ... o tau_K(seed) and
/// scans every window. Shares no generation logic with generate_language.
Language oracle_language(const SubstitutionSequence& seq, int seed, int max_len, int depth,
                         long long letter_budget = 8'000'000);

std::string render_language(const Language& lang);
std::string render_hierarchy(const BlockHierarchy& h);

/// Letter budget, honoring the CANTORLAB_BUDGET environment override.
long long effective_budget(long long configured);

// helpers shared by the CLI and the scenario runners
GroupAction action_from_config_json(const std::string& json_text);

}  // namespace cantorlab
