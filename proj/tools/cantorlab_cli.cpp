#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantorlab/scenario.hpp"

using namespace cantorlab;

namespace {

int with_config(const std::string& path, const std::function<int(ScenarioConfig&)>& body) {
  try {
    ScenarioConfig cfg = load_scenario_config(path);
    return body(cfg);
  } catch (const ScenarioError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

void print_summary(const Report& rep) {
  for (const auto& c : rep.checks) {
    const char* s = c.status == CheckStatus::Pass ? "PASS"
                    : c.status == CheckStatus::Fail ? "FAIL"
                                                    : "INCONCLUSIVE";
    std::cout << s << "  " << c.name;
    if (!c.witness.empty()) std::cout << "  (" << c.witness << ")";
    std::cout << "\n";
  }
}

SubstitutionSequence sequence_from_config(const nlohmann::json& cfg, const GroupAction& action) {
  SubstitutionSequence seq;
  for (const auto& gens : cfg.at("gens_schedule")) {
    std::vector<int> g;
    for (const auto& v : gens) g.push_back(v.get<int>());
    seq.seq.push_back(substitution_from_action(action, g));
  }
  return seq;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale lab for centralizers and normalizers of Cantor group actions"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long long seed = -1;

  auto* run = app.add_subcommand("run", "Run a scenario and write its report");
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_path, "Report output path");

  auto* oracle = app.add_subcommand("oracle-compare", "Check generate_language against the oracle");
  oracle->add_option("--config", config_path, "Scenario config (JSON)")->required();

  auto* dump_lang = app.add_subcommand("dump-language", "Dump the stratified language");
  dump_lang->add_option("--config", config_path, "Scenario config (JSON)")->required();
  dump_lang->add_option("--out", out_path, "Output path (default stdout)");

  auto* dump_hier = app.add_subcommand("dump-hierarchy", "Dump the block hierarchy");
  dump_hier->add_option("--config", config_path, "Scenario config (JSON)")->required();
  dump_hier->add_option("--out", out_path, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path);
    out << text;
  };

  if (run->parsed()) {
    return with_config(config_path, [&](ScenarioConfig& cfg) {
      if (seed >= 0) {
        cfg.seed = static_cast<unsigned long long>(seed);
        cfg.seed_given = true;
      }
      if (!out_path.empty()) cfg.out_path = out_path;
      const Report rep = run_scenario(cfg);
      print_summary(rep);
      if (cfg.out_path.empty()) std::cout << "\n" << rep.render();
      return rep.exit_code();
    });
  }
  if (oracle->parsed()) {
    return with_config(config_path, [&](ScenarioConfig& cfg) {
      cfg.kind = "oracle-compare";
      const Report rep = run_scenario(cfg);
      print_summary(rep);
      return rep.exit_code();
    });
  }
  if (dump_lang->parsed()) {
    return with_config(config_path, [&](ScenarioConfig& cfg) {
      const auto j = nlohmann::json::parse(cfg.payload);
      const GroupAction action = action_from_config_json(cfg.payload);
      const auto seq = sequence_from_config(j, action);
      const Language lang = generate_language(seq, j.value("seed_letter", 0), j.value("L", 10),
                                              j.value("K", 6), cfg.budget);
      emit(render_language(lang));
      return 0;
    });
  }
  if (dump_hier->parsed()) {
    return with_config(config_path, [&](ScenarioConfig& cfg) {
      cfg.kind = "block-hierarchy";
      const auto j = nlohmann::json::parse(cfg.payload);
      const GroupAction action = action_from_config_json(cfg.payload);
      BlockHierarchyCaps caps;
      MarkerSchedule sched;
      if (j.contains("marker_seeds"))
        for (const auto& lvl : j.at("marker_seeds")) {
          std::vector<Word> words;
          for (const auto& w : lvl) words.push_back(parse_word(w.get<std::string>()));
          sched.seeds_per_level.push_back(std::move(words));
        }
      const auto h = build_block_hierarchy(action, j.value("depth", 2), caps, sched);
      emit(render_hierarchy(h));
      return 0;
    });
  }
  return 0;
}
