#include "bbig/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace bbig::metrics {

namespace {

// argmax over cycle-1 values, ties to the lowest label
int source_label(const runner::RunTrace& trace) {
  int best_label = -1;
  const Nat* best_value = nullptr;
  for (int v = 0; v < trace.vertex_count; ++v) {
    const auto& s = trace.states[0][v];
    int label = trace.binding.vertex_to_node[v];
    if (!best_value || s.output.value > *best_value ||
        (s.output.value == *best_value && label < best_label)) {
      best_value = &s.output.value;
      best_label = label;
    }
  }
  return best_label;
}

int lineage_count(const runner::RunTrace& trace, int t, int source) {
  int count = 0;
  for (int v = 0; v < trace.vertex_count; ++v)
    if (trace.states[t][v].lineage == source) ++count;
  return count;
}

}  // namespace

DiffusionDensity tau_max(const runner::RunTrace& trace, int t, int t_end) {
  if (t < 0 || t_end < t || t_end >= trace.instant_count)
    throw std::invalid_argument("tau_max: instants outside trace range");
  const int source = source_label(trace);
  const int n = trace.vertex_count;
  int64_t count = lineage_count(trace, t_end, source);
  if (t > 0) count -= lineage_count(trace, t, source);
  return {0, t, t_end, Fraction(count, n)};
}

double tau_expected(const tvg::TemporalGraph& g, const runner::Population& pop,
                    const Nat& w, uint64_t budget, int binding_samples, Rng& rng,
                    int t, int t_end) {
  if (binding_samples < 1) throw std::invalid_argument("tau_expected: need M >= 1");
  if (t < 0 || t_end < t || t_end >= g.instant_count())
    throw std::invalid_argument("tau_expected: instants out of range");
  tvg::TemporalGraph sliced = g.slice_from(t);
  Fraction sum(0);
  for (int m = 0; m < binding_samples; ++m) {
    runner::Binding b = runner::sample_binding(pop.size(), sliced.instant_count(), rng);
    runner::RunTrace trace = runner::run_networked(sliced, pop, b, w, budget);
    sum += tau_max(trace, 0, t_end - t).fraction;
  }
  return boost::rational_cast<double>(sum) / binding_samples;
}

ComplementCheck complement_identity_check(const runner::RunTrace& trace, int t, int t_mid) {
  if (t != 0 || t_mid < t || t_mid >= trace.instant_count)
    throw std::invalid_argument("complement_identity_check: instants outside trace range");
  const int source = source_label(trace);
  const int n = trace.vertex_count;
  // earliest instant of full coverage
  int full = -1;
  for (int x = 0; x < trace.instant_count; ++x)
    if (lineage_count(trace, x, source) == n) {
      full = x;
      break;
    }
  if (full < 0) return ComplementCheck::kInapplicable;
  Fraction first = tau_max(trace, t, t_mid).fraction;
  Fraction second(lineage_count(trace, full, source) - lineage_count(trace, t_mid, source), n);
  return first + second == Fraction(1) ? ComplementCheck::kHolds : ComplementCheck::kFails;
}

HaltingEstimate halting_fraction(const Nat& w, int c, uint64_t budget,
                                 const std::vector<Program>& sample_set) {
  if (c < 1) throw std::invalid_argument("halting_fraction: c must be >= 1");
  if (sample_set.empty()) throw std::invalid_argument("halting_fraction: need samples");
  HaltingEstimate est;
  est.w = w;
  est.c = c;
  est.budget = budget;
  est.sample_count = static_cast<int>(sample_set.size());
  int halts = 0;
  for (const Program& p : sample_set) {
    Nat v = w;
    bool ok = true;
    for (int cycle = 0; cycle < c; ++cycle) {
      machine::ExecOutcome out = machine::run_bounded(p, v, budget);
      if (!out.halted) {
        ok = false;
        break;
      }
      v = out.value;
    }
    if (ok) {
      ++halts;
      est.halting.push_back(p);
    }
  }
  est.omega_hat = static_cast<double>(halts) / est.sample_count;
  return est;
}

HaltingEstimate halting_fraction(const Nat& w, int c, uint64_t budget, int samples,
                                 Rng& rng) {
  if (samples < 1) throw std::invalid_argument("halting_fraction: need samples >= 1");
  std::vector<Program> set;
  set.reserve(samples);
  for (int i = 0; i < samples; ++i) set.push_back(machine::sample_program(rng));
  return halting_fraction(w, c, budget, set);
}

ComplementCheck gibbs_entropy_check(const std::vector<Program>& halting_samples) {
  if (halting_samples.empty()) return ComplementCheck::kInapplicable;
  std::map<std::string, int> counts;
  for (const Program& p : halting_samples) ++counts[p.bits];
  const double total = static_cast<double>(halting_samples.size());
  long double entropy = 0;
  for (const auto& [bits, count] : counts) {
    long double w = count / total;
    entropy -= w * std::log2(w);
  }
  long double limit = std::log2(static_cast<long double>(counts.size()));
  // tiny slack for accumulated rounding only
  return entropy <= limit + 1e-9L ? ComplementCheck::kHolds : ComplementCheck::kFails;
}

double leading_coefficient(const LowerBoundParams& params) {
  return params.tau_e - params.omega;
}

double lower_bound_eval(const LowerBoundParams& params) {
  if (params.x < 2) throw std::invalid_argument("lower_bound_eval: x must be >= 2");
  if (params.n < 2) throw std::invalid_argument("lower_bound_eval: N must be >= 2");
  if (params.tau_e < 0 || params.tau_e > 1 || params.omega < 0 || params.omega > 1)
    throw std::invalid_argument("lower_bound_eval: fractions must be in [0, 1]");
  const double lg_n = std::log2(static_cast<double>(params.n));
  const double lg_x = std::log2(static_cast<double>(params.x));
  return (params.tau_e - params.omega) * lg_n - params.omega * lg_x -
         2.0 * params.omega * std::log2(lg_x) - params.a_w - params.c5;
}

CentralityResult time_centrality(const tvg::TemporalGraph& g, const runner::Population& pop,
                                 const Nat& w, Rng& rng, const CentralityConfig& config) {
  const int t_count = g.instant_count();
  auto c_map = config.c_map ? config.c_map
                            : std::function<int(int)>([&config](int x) { return config.c0 + x; });

  // one fixed sample set for all instants, so omega comparisons share it
  std::vector<Program> omega_set;
  {
    Rng omega_rng(rng.next_u64());
    omega_set.reserve(config.omega_samples);
    for (int i = 0; i < config.omega_samples; ++i)
      omega_set.push_back(machine::sample_program(omega_rng));
  }

  CentralityResult result;
  std::optional<Fraction> best_score;  // exact z + f + 2
  std::optional<Fraction> best_f;
  std::optional<Fraction> best2_score;
  std::optional<Fraction> best2_f;
  double best_bound = -std::numeric_limits<double>::infinity();

  struct Qualifier {
    int z;
    Fraction score;
    Fraction f;
    double bound;
  };
  std::vector<Qualifier> qualifiers;

  for (int z = 0; z < t_count; ++z) {
    InstantScore row;
    row.z = z;
    row.f = tvg::cover_time(g, z, config.tau);
    if (!row.f) {
      result.table.push_back(row);
      continue;
    }
    const Fraction f = *row.f;
    const int fi = static_cast<int>(
        (f.numerator() + f.denominator() - 1) / f.denominator());  // ceil(f)
    const int x = z + fi + 2;
    const Fraction score_exact = Fraction(z + 2) + f;
    row.score = boost::rational_cast<double>(score_exact);

    const int t_end = std::min(z + fi, t_count - 1);
    Rng tau_rng(rng.next_u64());
    row.tau_e = tau_expected(g, pop, w, config.budget, config.binding_samples, tau_rng, z, t_end);

    const int cycles = c_map(x);
    if (cycles < config.c0 + x)
      throw std::invalid_argument("time_centrality: c_map violates c(x) >= c0 + x");
    row.omega_hat = halting_fraction(w, cycles, config.budget, omega_set).omega_hat;

    const double numerator = row.tau_e - row.omega_hat - config.epsilon;
    row.coefficient = row.omega_hat > 0 ? numerator / row.omega_hat
                      : numerator > 0  ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
    row.qualifies = row.coefficient > 0;

    LowerBoundParams params;
    params.tau_e = row.tau_e;
    params.omega = row.omega_hat;
    params.n = std::max<int64_t>(2, pop.size());
    params.x = x;
    params.a_w = config.a_w;
    params.c5 = config.c5;
    params.epsilon = config.epsilon;
    row.bound = lower_bound_eval(params);

    if (row.qualifies) qualifiers.push_back({z, score_exact, f, row.bound});
    result.table.push_back(row);
  }

  // variant 1: minimize the score; ties go to the smallest cover time, then
  // the earliest instant
  for (const Qualifier& q : qualifiers) {
    if (!best_score || q.score < *best_score ||
        (q.score == *best_score && q.f < *best_f)) {
      best_score = q.score;
      best_f = q.f;
      result.t_cen = q.z;
    }
  }

  // variant 2: same minimization restricted to instants attaining the
  // maximum bound value
  for (const Qualifier& q : qualifiers) best_bound = std::max(best_bound, q.bound);
  for (const Qualifier& q : qualifiers) {
    if (q.bound < best_bound - 1e-12) continue;
    if (!best2_score || q.score < *best2_score ||
        (q.score == *best2_score && q.f < *best2_f)) {
      best2_score = q.score;
      best2_f = q.f;
      result.t_cen2 = q.z;
    }
  }
  return result;
}

AmaxEstimate amax_estimate(const runner::Population& pop, const Nat& w, uint64_t budget,
                           const machine::ComplexityEstimator& estimator) {
  if (pop.size() < 1) throw std::invalid_argument("amax_estimate: population is empty");
  Nat best = 0;
  for (const runner::Member& m : pop.members) {
    machine::ExecOutcome out = machine::run_bounded(m.program, w, budget);
    if (out.halted && out.value > best) best = out.value;
  }
  AmaxEstimate res;
  res.value = best;
  res.bits = estimator.estimate_with_fallback(best);
  return res;
}

}  // namespace bbig::metrics
