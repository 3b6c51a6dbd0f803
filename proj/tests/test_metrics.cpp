#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bbig/metrics.hpp"
#include "oracles.hpp"

using namespace bbig::metrics;
using namespace bbig::machine;
using namespace bbig::runner;
using bbig::Rng;
namespace tvg = bbig::tvg;
using tvg::Fraction;

namespace {

Program const_program(int value) {
  std::vector<Instruction> ins(value, Instruction{Opcode::kInc});
  return make_program(ins);
}

Population fixed_population(const std::vector<int>& values) {
  Population pop;
  for (size_t i = 0; i < values.size(); ++i)
    pop.members.push_back({static_cast<int>(i) + 1, const_program(values[i])});
  return pop;
}

RunTrace path_trace() {
  auto g = tvg::gen_static(3, 3, {{0, 1}, {1, 2}}, true);
  auto pop = fixed_population({5, 1, 2});
  return run_networked(g, pop, identity_binding(3, 3), 0, 1000);
}

}  // namespace

TEST_CASE("tau_max: fixed examples") {
  auto kg = tvg::gen_static_complete(3, 2);
  auto kt = run_networked(kg, fixed_population({4, 9, 1}), identity_binding(3, 2), 0, 1000);
  CHECK(tau_max(kt, 0, 1).fraction == Fraction(1));   // complete, one interval
  CHECK(tau_max(kt, 0, 0).fraction == Fraction(1, 3));  // only the source

  auto pt = path_trace();
  CHECK(tau_max(pt, 0, 1).fraction == Fraction(2, 3));
  CHECK(tau_max(pt, 0, 2).fraction == Fraction(1));
  // window past the start counts only newly infected nodes
  CHECK(tau_max(pt, 1, 2).fraction == Fraction(1, 3));
}

TEST_CASE("tau_max is nondecreasing in the window end") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracles::random_tvg(rng, 6, 5);
    auto pop = sample_population(g.vertex_count(), rng);
    auto trace = run_networked(g, pop, identity_binding(g.vertex_count(), g.instant_count()),
                               0, 300);
    Fraction prev(0);
    for (int t_end = 0; t_end < g.instant_count(); ++t_end) {
      Fraction cur = tau_max(trace, 0, t_end).fraction;
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("tau_max hits 1 exactly when the window covers the source's dt") {
  Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracles::random_tvg(rng, 6, 5);
    auto pop = sample_population(g.vertex_count(), rng);
    auto trace = run_networked(g, pop, identity_binding(g.vertex_count(), g.instant_count()),
                               0, 300);
    // source vertex: argmax of cycle-1 values, ties to the lowest label
    int src = 0;
    for (int v = 1; v < g.vertex_count(); ++v) {
      if (trace.states[0][v].output.value > trace.states[0][src].output.value) src = v;
    }
    auto d = tvg::dt(g, 0, src, Fraction(1));
    for (int t_end = 0; t_end < g.instant_count(); ++t_end) {
      bool full = tau_max(trace, 0, t_end).fraction == Fraction(1);
      bool expect = d.has_value() && t_end >= *d;
      CHECK(full == expect);
    }
  }
}

TEST_CASE("tau_expected: symmetry and M=1 reductions") {
  // vertex-transitive graphs: every binding gives the same tau_max
  auto kg = tvg::gen_static_complete(4, 3);
  Rng rng(7);
  auto pop = sample_population(4, rng);
  auto trace = run_networked(kg, pop, identity_binding(4, 3), 0, 300);
  double single = boost::rational_cast<double>(tau_max(trace, 0, 2).fraction);
  Rng rng2(8);
  CHECK(tau_expected(kg, pop, 0, 300, 5, rng2, 0, 2) == doctest::Approx(single));

  auto ring = tvg::gen_static_ring(4, 5);
  auto rtrace = run_networked(ring, pop, identity_binding(4, 5), 0, 300);
  double rsingle = boost::rational_cast<double>(tau_max(rtrace, 0, 3).fraction);
  Rng rng3(9);
  CHECK(tau_expected(ring, pop, 0, 300, 5, rng3, 0, 3) == doctest::Approx(rsingle));
}

TEST_CASE("tau_expected slices the graph at the window start") {
  // edges only from instant 2: starting there behaves like a static graph
  std::vector<tvg::Edge> edges;
  for (int t = 2; t < 4; ++t)
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v)
        if (u != v) edges.push_back({t, u, v});
  tvg::TemporalGraph g(3, 5, edges);
  Rng rng(12);
  auto pop = sample_population(3, rng);
  Rng rng2(13);
  CHECK(tau_expected(g, pop, 0, 300, 3, rng2, 2, 3) == doctest::Approx(1.0));
  Rng rng3(13);
  CHECK(tau_expected(g, pop, 0, 300, 3, rng3, 0, 1) == doctest::Approx(1.0 / 3));
}

TEST_CASE("complement identity: fixed examples") {
  auto kg = tvg::gen_static_complete(3, 3);
  auto kt = run_networked(kg, fixed_population({4, 9, 1}), identity_binding(3, 3), 0, 1000);
  CHECK(complement_identity_check(kt, 0, 2) == ComplementCheck::kHolds);  // 1 + 0

  auto pt = path_trace();
  CHECK(complement_identity_check(pt, 0, 1) == ComplementCheck::kHolds);  // 2/3 + 1/3

  tvg::TemporalGraph disc(3, 3, {{0, 0, 1}, {1, 0, 1}});
  auto dt_ = run_networked(disc, fixed_population({4, 1, 2}), identity_binding(3, 3), 0, 1000);
  CHECK(complement_identity_check(dt_, 0, 1) == ComplementCheck::kInapplicable);
}

TEST_CASE("complement identity holds on every fully covered random run") {
  Rng rng(4);
  int covered = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto g = oracles::random_tvg(rng, 6, 5);
    auto pop = sample_population(g.vertex_count(), rng);
    auto trace = run_networked(g, pop, identity_binding(g.vertex_count(), g.instant_count()),
                               0, 300);
    for (int mid = 0; mid < g.instant_count(); ++mid) {
      auto r = complement_identity_check(trace, 0, mid);
      CHECK(r != ComplementCheck::kFails);
      if (r == ComplementCheck::kHolds) ++covered;
    }
  }
  CHECK(covered > 20);  // the corpus exercises the identity, not just the guard
}

TEST_CASE("halting_fraction: fixed examples") {
  auto halt = *decode_bits("000");
  CHECK(halting_fraction(0, 1, 100, {halt}).omega_hat == doctest::Approx(1.0));

  auto loop = make_program({{Opcode::kInc}, {Opcode::kJnz, 1}});
  CHECK(halting_fraction(0, 1, 10000, {loop}).omega_hat == doctest::Approx(0.0));

  Rng rng(6);
  auto est = halting_fraction(0, 1, 100000, 20000, rng);
  CHECK(est.omega_hat > 0.0);
  CHECK(est.omega_hat < 1.0);
  CHECK(est.sample_count == 20000);
  CHECK(est.halting.size() == static_cast<size_t>(std::lround(est.omega_hat * 20000)));
}

TEST_CASE("halting_fraction is nonincreasing in the cycle count") {
  Rng rng(14);
  std::vector<Program> samples;
  for (int i = 0; i < 3000; ++i) samples.push_back(sample_program(rng));
  double prev = 2.0;
  for (int c : {1, 2, 4, 8}) {
    auto est = halting_fraction(3, c, 500, samples);
    CHECK(est.omega_hat <= prev);
    prev = est.omega_hat;
  }
}

TEST_CASE("gibbs entropy bound") {
  auto halt = *decode_bits("000");
  auto inc = *decode_bits("001000");
  CHECK(gibbs_entropy_check({halt}) == ComplementCheck::kHolds);           // 0 <= lg 1
  CHECK(gibbs_entropy_check({halt, inc}) == ComplementCheck::kHolds);      // 1 <= lg 2
  CHECK(gibbs_entropy_check({halt, halt, inc}) == ComplementCheck::kHolds);
  CHECK(gibbs_entropy_check({}) == ComplementCheck::kInapplicable);

  Rng rng(16);
  auto est = halting_fraction(0, 1, 1000, 3000, rng);
  REQUIRE(est.halting.size() > 100);
  CHECK(gibbs_entropy_check(est.halting) == ComplementCheck::kHolds);
}

TEST_CASE("lower_bound_eval: worked examples") {
  LowerBoundParams p;
  p.tau_e = 1.0; p.omega = 0.5; p.n = 1024; p.x = 4;
  CHECK(std::abs(lower_bound_eval(p) - 3.0) < 1e-12);
  CHECK(std::abs(leading_coefficient(p) - 0.5) < 1e-12);

  LowerBoundParams q;
  q.tau_e = 0.3; q.omega = 0.3; q.n = 512; q.x = 4; q.a_w = 1.0; q.c5 = 2.0;
  CHECK(std::abs(leading_coefficient(q)) < 1e-12);
  CHECK(std::abs(lower_bound_eval(q) - (-0.3 * 2 - 2 * 0.3 * 1 - 1.0 - 2.0)) < 1e-12);

  LowerBoundParams r;
  r.tau_e = 0.0; r.omega = 1.0; r.n = 4; r.x = 4;
  CHECK(std::abs(lower_bound_eval(r) - (-6.0)) < 1e-12);
}

TEST_CASE("lower_bound_eval is monotone in tau_e and antitone in omega") {
  LowerBoundParams p;
  p.n = 256; p.x = 8; p.omega = 0.4;
  double prev = -1e300;
  for (double t = 0.0; t <= 1.0; t += 0.1) {
    p.tau_e = t;
    double v = lower_bound_eval(p);
    CHECK(v >= prev);
    prev = v;
  }
  p.tau_e = 0.9;
  prev = 1e300;
  for (double o = 0.05; o <= 0.9; o += 0.05) {
    p.omega = o;
    double v = lower_bound_eval(p);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("time_centrality: static complete graph picks the first instant") {
  auto g = tvg::gen_static_complete(6, 8);
  Rng rng(25);
  auto pop = sample_population(6, rng);
  CentralityConfig cfg;
  cfg.budget = 200;
  cfg.omega_samples = 200;
  Rng crng(26);
  auto r = time_centrality(g, pop, 0, crng, cfg);
  REQUIRE(r.t_cen.has_value());
  CHECK(*r.t_cen == 0);
  REQUIRE(r.t_cen2.has_value());
  CHECK(*r.t_cen2 == 0);
  CHECK(r.table.size() == 8);
}

TEST_CASE("time_centrality: edgeless graph yields no central time") {
  tvg::TemporalGraph g(4, 5, {});
  Rng rng(27);
  auto pop = sample_population(4, rng);
  CentralityConfig cfg;
  cfg.budget = 200;
  cfg.omega_samples = 100;
  Rng crng(28);
  auto r = time_centrality(g, pop, 0, crng, cfg);
  CHECK_FALSE(r.t_cen.has_value());
  CHECK_FALSE(r.t_cen2.has_value());
  for (const auto& row : r.table) CHECK_FALSE(row.qualifies);
}

TEST_CASE("time_centrality: gated graph recovers the gate instant") {
  for (int gate : {0, 1, 2, 3}) {
    std::vector<tvg::Edge> edges;
    const int n = 5, horizon = 8;
    for (int t = gate; t < horizon - 1; ++t)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v) edges.push_back({t, u, v});
    tvg::TemporalGraph g(n, horizon, edges);
    Rng rng(100 + gate);
    auto pop = sample_population(n, rng);
    CentralityConfig cfg;
    cfg.budget = 200;
    cfg.omega_samples = 150;
    Rng crng(200 + gate);
    auto r = time_centrality(g, pop, 0, crng, cfg);
    REQUIRE(r.t_cen.has_value());
    CHECK(*r.t_cen == gate);
    REQUIRE(r.t_cen2.has_value());
    CHECK(*r.t_cen2 == gate);
  }
}

TEST_CASE("amax_estimate: fixed examples") {
  ComplexityEstimator est(EstimatorBackend::kExactTiny, 12, 1000);
  auto zeros = fixed_population({0, 0, 0});
  auto a = amax_estimate(zeros, 0, 1000, est);
  CHECK(a.value == 0);
  CHECK(a.bits.bits == 3);
  CHECK(a.bits.backend == EstimatorBackend::kExactTiny);

  Population two;
  two.members.push_back({1, *decode_bits("001001000")});
  two.members.push_back({2, *decode_bits("000")});
  auto b = amax_estimate(two, 0, 1000, est);
  CHECK(b.value == 2);
  CHECK(b.bits.bits == 9);

  // non-halting members contribute 0
  Population looped;
  looped.members.push_back({1, make_program({{Opcode::kInc}, {Opcode::kJnz, 1}})});
  CHECK(amax_estimate(looped, 0, 500, est).value == 0);
}
