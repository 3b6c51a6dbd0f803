#pragma once

// Experiment configuration, orchestration and result emission for the
// validation suite and the growth/centrality experiments.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbig/metrics.hpp"

namespace bbig::harness {

// config/usage problems; the CLI maps these to the usage exit code
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GraphKind { kStaticComplete, kStaticRing, kSmallDiameter, kFile };

struct ExperimentConfig {
  uint64_t seed = 1;
  std::vector<int> n_grid = {16, 64, 256, 1024};
  int instants = 0;  // 0 = derive from the graph family and N
  GraphKind graph = GraphKind::kSmallDiameter;
  double small_diameter_k = 3.0;
  std::string graph_file;
  tvg::Fraction tau = tvg::Fraction(1);
  uint64_t budget = 10000;
  int binding_samples = 4;
  machine::EstimatorBackend estimator = machine::EstimatorBackend::kCompressProxy;
  int exact_cap_bits = 15;
  int omega_samples = 500;
  double epsilon = 0.01;
  int c0 = 0;
  std::string out_dir = "out";

  // Flat `key = value` text; unknown keys are rejected. CLI overrides reuse
  // the same `key=value` syntax.
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig load(const std::string& path);
  void apply_override(const std::string& key_value);
  std::string canonical_text() const;
  uint64_t config_hash() const;

  // instants actually used for a given population size
  int instants_for(int n) const;
};

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  uint64_t config_hash = 0;
  std::string tool_version;
  std::vector<std::pair<std::string, uint64_t>> sub_seeds;
  std::vector<std::string> output_files;

  std::string text() const;
};

// exit codes shared by all subcommands
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

int cmd_validate(const ExperimentConfig& config, std::ostream& log);
int cmd_growth(const ExperimentConfig& config, std::ostream& log);
int cmd_centrality(const ExperimentConfig& config, std::ostream& log);
int cmd_gen_graph(const ExperimentConfig& config, std::ostream& log);
int cmd_sample_pop(const ExperimentConfig& config, std::ostream& log);

// Minimal self-contained line chart used by cmd_growth.
std::string svg_line_chart(const std::string& title, const std::vector<double>& xs,
                           const std::vector<std::pair<std::string, std::vector<double>>>& series);

double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace bbig::harness
