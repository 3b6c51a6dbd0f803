#pragma once

// Diffusion and probability measures over traces and samples, the main
// lower-bound evaluation, and the per-instant time-centrality search.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bbig/runner.hpp"

namespace bbig::metrics {

using machine::Nat;
using machine::Program;
using tvg::Fraction;

struct HaltingEstimate {
  Nat w;
  int c = 1;
  uint64_t budget = 0;
  double omega_hat = 0.0;
  int sample_count = 0;
  std::vector<Program> halting;  // the sampled programs that halted every cycle
};

struct DiffusionDensity {
  int t_start;  // diffusion start of the trace
  int t;        // window start
  int t_end;    // window end
  Fraction fraction;
};

struct LowerBoundParams {
  double tau_e = 0.0;
  double omega = 0.0;
  int64_t n = 2;
  int64_t x = 2;       // cycle parameter, >= 2 so lg lg x is defined
  double a_w = 0.0;    // estimated complexity of w in bits
  double c5 = 0.0;     // additive constant, configurable, defaults to 0
  double epsilon = 0.01;
  double epsilon2 = 0.01;
};

struct InstantScore {
  int z;
  tvg::MaybeFraction f;  // cover time from t_z; nullopt = Infinite
  double score = 0.0;    // z + f + 2, only meaningful when f is finite
  double tau_e = 0.0;
  double omega_hat = 0.0;
  double coefficient = 0.0;  // C = (tau_E - omega - eps) / omega
  bool qualifies = false;    // C > 0 and f finite
  double bound = 0.0;        // lower_bound_eval at this instant
};

struct CentralityResult {
  std::optional<int> t_cen;    // Def 1 variant: min score among qualifying instants
  std::optional<int> t_cen2;   // Def 2 variant: min score among bound-maximizing instants
  std::vector<InstantScore> table;
};

// Fraction of nodes whose lineage at t_end descends from the cycle-1 maximum
// node (argmax ties to lowest label). With t equal to the trace's diffusion
// start the window counts everyone infected by t_end; with t past the start
// it counts only nodes newly infected inside (t, t_end].
DiffusionDensity tau_max(const runner::RunTrace& trace, int t, int t_end);

// Mean of tau_max over M sampled bindings; the diffusion runs on the slice
// of g that starts at instant t.
double tau_expected(const tvg::TemporalGraph& g, const runner::Population& pop,
                    const Nat& w, uint64_t budget, int binding_samples, Rng& rng,
                    int t, int t_end);

enum class ComplementCheck { kHolds, kFails, kInapplicable };

// Complement identity on a fully covered run:
// tau|_start^mid + tau|_mid^D = 1 in exact rational arithmetic.
ComplementCheck complement_identity_check(const runner::RunTrace& trace, int t, int t_mid);

// Fraction of sampled programs that halt (within budget) in every cycle
// 1..c under isolated reiteration from w.
HaltingEstimate halting_fraction(const Nat& w, int c, uint64_t budget, int samples,
                                 Rng& rng);
HaltingEstimate halting_fraction(const Nat& w, int c, uint64_t budget,
                                 const std::vector<Program>& sample_set);

// Shannon entropy of the empirical weight distribution over distinct halting
// programs is at most lg of the support size.
ComplementCheck gibbs_entropy_check(const std::vector<Program>& halting_samples);

// (tau_E - omega) lg N - omega lg x - 2 omega lg lg x - A_w - C5.
// Reports the full value; the leading coefficient is tau_E - omega.
double lower_bound_eval(const LowerBoundParams& params);
double leading_coefficient(const LowerBoundParams& params);

struct CentralityConfig {
  Fraction tau = Fraction(1);
  uint64_t budget = 1000;
  int binding_samples = 1;
  int omega_samples = 200;
  double epsilon = 0.01;
  double a_w = 0.0;
  double c5 = 0.0;
  int c0 = 0;
  // cycle map c(x); must be nondecreasing with c(x) >= c0 + x
  std::function<int(int)> c_map;
};

// Per-instant scoring: f = cover_time(g, t_z, tau); score = z + f + 2;
// qualifying instants need coefficient C > 0. The reported central time is
// the earliest instant among score minimizers with the smallest cover time.
CentralityResult time_centrality(const tvg::TemporalGraph& g, const runner::Population& pop,
                                 const Nat& w, Rng& rng, const CentralityConfig& config);

struct AmaxEstimate {
  Nat value;  // maximum cycle-1 value over the population
  machine::ComplexityEstimate bits;
};

AmaxEstimate amax_estimate(const runner::Population& pop, const Nat& w, uint64_t budget,
                           const machine::ComplexityEstimator& estimator);

}  // namespace bbig::metrics
