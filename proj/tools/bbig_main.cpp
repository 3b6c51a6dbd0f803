#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "bbig/harness.hpp"

using bbig::harness::ExperimentConfig;

int main(int argc, char** argv) {
  CLI::App app{"Busy Beaver imitation game simulator over time-varying graphs"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--set", overrides, "config override, key=value (repeatable)");
  app.add_option("--seed", seed, "master seed override");
  app.add_option("--out", out_dir, "output directory override");

  auto* validate = app.add_subcommand("validate", "run the cross-module property suite");
  auto* growth = app.add_subcommand("growth", "population-size growth experiment");
  auto* centrality = app.add_subcommand("centrality", "per-instant time centrality table");
  auto* gen_graph = app.add_subcommand("gen-graph", "generate and store graph files");
  auto* sample_pop = app.add_subcommand("sample-pop", "sample and store populations");
  // global flags may follow the subcommand name
  for (CLI::App* sub : {validate, growth, centrality, gen_graph, sample_pop})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : bbig::harness::kExitUsage;
  }

  try {
    ExperimentConfig config =
        config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
    for (const std::string& o : overrides) config.apply_override(o);
    if (seed) config.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;

    if (validate->parsed()) return bbig::harness::cmd_validate(config, std::cout);
    if (growth->parsed()) return bbig::harness::cmd_growth(config, std::cout);
    if (centrality->parsed()) return bbig::harness::cmd_centrality(config, std::cout);
    if (gen_graph->parsed()) return bbig::harness::cmd_gen_graph(config, std::cout);
    if (sample_pop->parsed()) return bbig::harness::cmd_sample_pop(config, std::cout);
    return bbig::harness::kExitUsage;
  } catch (const bbig::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return bbig::harness::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bbig::harness::kExitPropertyFailure;
  }
}
