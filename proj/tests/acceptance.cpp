// Acceptance suite: one pass/fail line per criterion. Exit 0 only when every
// criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bbig/harness.hpp"
#include "bbig/metrics.hpp"
#include "oracles.hpp"

using namespace bbig;
using machine::Nat;
using machine::Program;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

// 1. temporal_bfs equals exhaustive temporal-path enumeration on 2,000 TVGs
bool criterion1() {
  Rng rng(101);
  for (int i = 0; i < 2000; ++i) {
    auto g = oracles::random_tvg(rng, 8, 5);
    for (int start = 0; start < g.instant_count(); ++start) {
      for (int src = 0; src < g.vertex_count(); ++src) {
        auto got = tvg::temporal_bfs(g, start, src).arrival;
        auto want = oracles::temporal_path_arrivals(g, start, src);
        if (got != want) return false;
      }
    }
  }
  return true;
}

// 2. networked carried values equal temporal in-reachable maxima, 500 triples
bool criterion2() {
  Rng rng(202);
  for (int i = 0; i < 500; ++i) {
    auto g = oracles::random_tvg(rng, 8, 5);
    const int n = g.vertex_count();
    auto pop = runner::sample_population(n, rng);
    auto binding = runner::sample_binding(n, g.instant_count(), rng);
    auto trace = runner::run_networked(g, pop, binding, 0, 64);

    auto carried = oracles::contagion_carried(g, trace);
    auto finals = oracles::contagion_finals(g, trace);
    const int last = g.instant_count() - 1;
    for (int v = 0; v < n; ++v) {
      if (trace.states[last][v].output.value != carried.at(binding.vertex_to_node[v]))
        return false;
    }
    if (trace.final_outputs != finals) return false;
  }
  return true;
}

// 3. cover-time closed cases: K_N -> 1, directed N-cycle -> N-1
bool criterion3() {
  for (int n = 2; n <= 32; ++n) {
    auto ct = tvg::cover_time(tvg::gen_static_complete(n, 2), 0, tvg::Fraction(1));
    if (!ct || *ct != tvg::Fraction(1)) return false;
  }
  for (int n = 3; n <= 8; ++n) {
    auto ring = tvg::gen_static_ring(n, n);
    auto ct = tvg::cover_time(ring, 0, tvg::Fraction(1));
    if (!ct || *ct != tvg::Fraction(n - 1)) return false;
    // brute-force verification from temporal path enumeration
    tvg::Fraction sum(0);
    for (int src = 0; src < n; ++src) {
      auto arr = oracles::temporal_path_arrivals(ring, 0, src);
      int worst = 0;
      for (int v = 0; v < n; ++v) {
        if (!arr[v].has_value()) return false;
        worst = std::max(worst, *arr[v]);
      }
      sum += tvg::Fraction(worst);
    }
    if (*ct != sum / tvg::Fraction(n)) return false;
  }
  return true;
}

// 4. complement identity on every fully covered run in the corpus
bool criterion4() {
  Rng rng(404);
  int holds = 0;
  for (int i = 0; i < 120; ++i) {
    auto g = oracles::random_tvg(rng, 7, 5);
    auto pop = runner::sample_population(g.vertex_count(), rng);
    auto binding = runner::sample_binding(g.vertex_count(), g.instant_count(), rng);
    auto trace = runner::run_networked(g, pop, binding, 0, 64);
    for (int mid = 0; mid < g.instant_count(); ++mid) {
      auto r = metrics::complement_identity_check(trace, 0, mid);
      if (r == metrics::ComplementCheck::kFails) return false;
      if (r == metrics::ComplementCheck::kHolds) ++holds;
    }
  }
  return holds > 0;  // the corpus must actually exercise the identity
}

// 5. prefix-free and complete code; Kraft sum behavior; streams always decode
bool criterion5() {
  std::vector<std::string> all;
  machine::enumerate_programs(18, [&](const Program& p) { all.push_back(p.bits); });
  std::sort(all.begin(), all.end());
  for (size_t i = 0; i + 1 < all.size(); ++i)
    if (all[i + 1].compare(0, all[i].size(), all[i]) == 0) return false;

  // the sum can be flat between consecutive lengths (no programs of length 4
  // or 5 exist) but must grow strictly every 3 bits
  double prev = 0.0;
  for (int len = 3; len <= 24; ++len) {
    auto k = machine::kraft_sum(len);
    double v = k.value();
    if (v < prev || v > 1.0) return false;
    if (len % 3 == 0 && len > 3 && v <= machine::kraft_sum(len - 3).value()) return false;
    prev = v;
  }

  // 10^4 streams seeded by 64-bit values: completeness means decoding never
  // fails
  for (uint64_t i = 0; i < 10000; ++i) {
    Rng stream(sub_seed(505, "streams", i));
    machine::RngBitSource src(stream);
    if (!machine::decode(src).has_value()) return false;
  }
  return true;
}

// 6. sampling frequency of `000` within 3 binomial sigma of 1/8
bool criterion6() {
  Rng rng(606);
  const int trials = 100000;
  int halt_only = 0;
  for (int i = 0; i < trials; ++i)
    if (machine::sample_program(rng).bits == "000") ++halt_only;
  double sigma = std::sqrt(trials * 0.125 * 0.875);
  return std::abs(halt_only - trials * 0.125) <= 3 * sigma;
}

// 7. omega_hat nonincreasing in c on a fixed sample set
// 8. Gibbs entropy bound on every sampled halting set
bool criterion7_state_ok = false;
std::vector<std::vector<Program>> criterion7_halting_sets;

bool criterion7() {
  Rng rng(707);
  std::vector<Program> set;
  for (int i = 0; i < 3000; ++i) set.push_back(machine::sample_program(rng));
  double prev = 1.0 + 1e-9;
  criterion7_halting_sets.clear();
  for (int c : {1, 2, 4, 8}) {
    auto est = metrics::halting_fraction(0, c, 1000, set);
    if (est.omega_hat > prev) return false;
    prev = est.omega_hat;
    criterion7_halting_sets.push_back(est.halting);
  }
  criterion7_state_ok = true;
  return true;
}

bool criterion8() {
  if (!criterion7_state_ok) return false;
  for (const auto& halting : criterion7_halting_sets) {
    if (metrics::gibbs_entropy_check(halting) == metrics::ComplementCheck::kFails) return false;
  }
  return true;
}

// 9. A_max growth across N in {2^4, 2^6, 2^8, 2^10} over 20 seeds
bool criterion9() {
  const std::vector<int> grid = {16, 64, 256, 1024};
  const uint64_t budget = 10000;
  const int seeds = 20;
  machine::ComplexityEstimator estimator(machine::EstimatorBackend::kExactTiny, 15, budget);

  std::vector<std::vector<Nat>> max_by_n(grid.size());
  int sharper = 0;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(sub_seed(909, "population", s));
    // nested populations: the N-member population is a prefix of the larger
    auto pop = runner::sample_population(grid.back(), rng);
    std::vector<Nat> values(pop.size());
    for (int i = 0; i < pop.size(); ++i) {
      auto out = machine::run_bounded(pop.members[i].program, 0, budget);
      values[i] = out.halted ? out.value : Nat(0);
    }
    std::vector<uint64_t> bits(grid.size());
    for (size_t gi = 0; gi < grid.size(); ++gi) {
      Nat best = 0;
      for (int i = 0; i < grid[gi]; ++i)
        if (values[i] > best) best = values[i];
      max_by_n[gi].push_back(best);
      bits[gi] = estimator.estimate_with_fallback(best).bits;
    }
    if (bits.back() > bits.front()) ++sharper;
  }

  Nat prev_median = 0;
  for (auto& col : max_by_n) {
    std::sort(col.begin(), col.end());
    Nat median = col[col.size() / 2];
    if (median < prev_median) return false;
    prev_median = median;
  }
  return sharper >= 16;
}

// 10. EEAC and leading term trend up with N on the small-diameter family
bool criterion10() {
  const std::vector<int> grid = {16, 64, 256, 1024};
  const uint64_t budget = 2000;
  const int seeds = 20;
  machine::ComplexityEstimator estimator(machine::EstimatorBackend::kCompressProxy, 0, budget);

  std::vector<double> lg_ns, eeac_means, leading_means;
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const int n = grid[gi];
    const int t_count = static_cast<int>(std::ceil(3.0 * std::log2(n))) + 2;
    double eeac_sum = 0.0, leading_sum = 0.0;
    for (int s = 0; s < seeds; ++s) {
      auto g = tvg::gen_small_diameter(n, t_count, sub_seed(1010, "graph", s * 100 + gi));
      Rng pop_rng(sub_seed(1010, "population", s));
      auto pop = runner::sample_population(n, pop_rng);

      Rng bind_rng(sub_seed(1010, "bindings", s * 100 + gi));
      auto eeac = runner::eeac_estimate(g, pop, 0, budget, 2, bind_rng, estimator);
      eeac_sum += eeac.mean;

      Rng tau_rng(sub_seed(1010, "tau", s * 100 + gi));
      double tau_e = metrics::tau_expected(g, pop, 0, budget, 2, tau_rng, 0, t_count - 1);
      Rng omega_rng(sub_seed(1010, "omega", s * 100 + gi));
      auto omega = metrics::halting_fraction(0, t_count + 1, budget, 200, omega_rng);
      leading_sum += (tau_e - omega.omega_hat) * std::log2(static_cast<double>(n));
    }
    lg_ns.push_back(std::log2(static_cast<double>(n)));
    eeac_means.push_back(eeac_sum / seeds);
    leading_means.push_back(leading_sum / seeds);
  }
  if (!std::is_sorted(eeac_means.begin(), eeac_means.end())) return false;
  if (!std::is_sorted(leading_means.begin(), leading_means.end())) return false;
  return harness::spearman(lg_ns, eeac_means) >= 0.8 &&
         harness::spearman(lg_ns, leading_means) >= 0.8;
}

// 11. gated TVGs: centrality recovers the gate instant, 100/100
bool criterion11() {
  Rng meta(1111);
  for (int i = 0; i < 100; ++i) {
    const int gate = i % 4;
    const int n = 5 + static_cast<int>(meta.below(4));
    const int horizon = gate + 4 + static_cast<int>(meta.below(3));
    std::vector<tvg::Edge> edges;
    for (int t = gate; t < horizon - 1; ++t)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v) edges.push_back({t, u, v});
    tvg::TemporalGraph g(n, horizon, edges);
    Rng pop_rng(meta.next_u64());
    auto pop = runner::sample_population(n, pop_rng);
    metrics::CentralityConfig cfg;
    cfg.budget = 200;
    cfg.omega_samples = 120;
    Rng rng(meta.next_u64());
    auto res = metrics::time_centrality(g, pop, 0, rng, cfg);
    if (!res.t_cen || *res.t_cen != gate) return false;
    if (!res.t_cen2 || *res.t_cen2 != gate) return false;
  }
  return true;
}

// 12. lower_bound_eval worked examples, tolerance 1e-12
bool criterion12() {
  metrics::LowerBoundParams a;
  a.tau_e = 1.0; a.omega = 0.5; a.n = 1024; a.x = 4;
  if (std::abs(metrics::lower_bound_eval(a) - 3.0) > 1e-12) return false;

  metrics::LowerBoundParams b;
  b.tau_e = 0.3; b.omega = 0.3; b.n = 512; b.x = 4; b.a_w = 1.0; b.c5 = 2.0;
  if (std::abs(metrics::leading_coefficient(b)) > 1e-12) return false;
  if (std::abs(metrics::lower_bound_eval(b) - (-0.3 * 2 - 2 * 0.3 - 1.0 - 2.0)) > 1e-12)
    return false;

  metrics::LowerBoundParams c;
  c.tau_e = 0.0; c.omega = 1.0; c.n = 4; c.x = 4;
  return std::abs(metrics::lower_bound_eval(c) - (-6.0)) <= 1e-12;
}

// 13. byte-identical CSVs across re-executions of validate and growth
bool criterion13() {
  fs::path base = fs::temp_directory_path() / "bbig_acceptance13";
  fs::remove_all(base);

  harness::ExperimentConfig growth_cfg;
  growth_cfg.seed = 1313;
  growth_cfg.n_grid = {4, 8, 16};
  growth_cfg.budget = 300;
  growth_cfg.binding_samples = 2;
  growth_cfg.omega_samples = 100;
  std::ostringstream devnull;
  std::string growth[2];
  for (int round = 0; round < 2; ++round) {
    growth_cfg.out_dir = (base / ("growth" + std::to_string(round))).string();
    if (harness::cmd_growth(growth_cfg, devnull) != harness::kExitOk) return false;
    growth[round] = slurp(fs::path(growth_cfg.out_dir) / "growth.csv");
  }
  if (growth[0].empty() || growth[0] != growth[1]) return false;

  harness::ExperimentConfig validate_cfg;
  validate_cfg.seed = 1313;
  validate_cfg.budget = 500;
  std::string validate[2];
  for (int round = 0; round < 2; ++round) {
    validate_cfg.out_dir = (base / ("validate" + std::to_string(round))).string();
    if (harness::cmd_validate(validate_cfg, devnull) != harness::kExitOk) return false;
    validate[round] = slurp(fs::path(validate_cfg.out_dir) / "validate_report.csv");
  }
  return !validate[0].empty() && validate[0] == validate[1];
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* description;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "temporal-BFS oracle equivalence on 2000 random TVGs", criterion1},
      {2, "contagion equals temporal reachability on 500 triples", criterion2},
      {3, "cover-time closed cases (complete and ring families)", criterion3},
      {4, "complement identity on every fully covered corpus run", criterion4},
      {5, "prefix-free complete code with monotone Kraft sums", criterion5},
      {6, "sampling measure of the terminator program", criterion6},
      {7, "halting fraction nonincreasing in the cycle count", criterion7},
      {8, "entropy bound on every sampled halting set", criterion8},
      {9, "maximum-output growth trend across population sizes", criterion9},
      {10, "expected emergence trend on the small-diameter family", criterion10},
      {11, "time centrality recovers the gate instant (100/100)", criterion11},
      {12, "lower-bound arithmetic worked examples", criterion12},
      {13, "byte-identical outputs across re-executions", criterion13},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto begin = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion %d: %s (exception: %s)\n", c.number, c.description, e.what());
      ++failures;
      continue;
    }
    auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - begin)
                    .count() /
                1000.0;
    std::printf("%s criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.number, c.description,
                secs);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
