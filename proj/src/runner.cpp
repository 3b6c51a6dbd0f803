#include "bbig/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbig::runner {

void Binding::validate(int population_size, int instant_count) const {
  if (static_cast<int>(vertex_to_node.size()) != population_size)
    throw std::invalid_argument("Binding: size mismatch with population");
  std::vector<char> seen(population_size + 1, 0);
  for (int label : vertex_to_node) {
    if (label < 1 || label > population_size || seen[label])
      throw std::invalid_argument("Binding: vertex_to_node must be a bijection onto 1..N");
    seen[label] = 1;
  }
  if (c0 < 0) throw std::invalid_argument("Binding: c0 must be nonnegative");
  if (n_cycles < c0 + instant_count + 1)
    throw std::invalid_argument("Binding: need n >= c0 + T + 1");
}

int RunTrace::vertex_of_node(int label) const {
  for (int v = 0; v < vertex_count; ++v)
    if (binding.vertex_to_node[v] == label) return v;
  throw std::invalid_argument("vertex_of_node: unknown label");
}

Population sample_population(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_population: N must be >= 1");
  Population pop;
  pop.members.reserve(n);
  for (int i = 1; i <= n; ++i) pop.members.push_back({i, machine::sample_program(rng)});
  return pop;
}

Binding identity_binding(int n, int instant_count, int c0) {
  Binding b;
  b.vertex_to_node.resize(n);
  std::iota(b.vertex_to_node.begin(), b.vertex_to_node.end(), 1);
  b.c0 = c0;
  b.n_cycles = c0 + instant_count + 1;
  return b;
}

Binding sample_binding(int n, int instant_count, Rng& rng, int c0) {
  Binding b = identity_binding(n, instant_count, c0);
  rng.shuffle(b.vertex_to_node);
  return b;
}

std::map<int, Nat> run_isolated(const Population& pop, const Nat& w, int cycles,
                                uint64_t budget) {
  if (cycles < 1) throw std::invalid_argument("run_isolated: cycles must be >= 1");
  std::map<int, Nat> finals;
  for (const Member& m : pop.members) {
    Nat v = w;
    bool oracle = false;
    for (int c = 0; c < cycles; ++c) {
      machine::ExecOutcome out = machine::run_bounded(m.program, v, budget);
      if (!out.halted) {
        oracle = true;
        break;
      }
      v = out.value;
    }
    finals[m.label] = oracle ? Nat(0) : v;
  }
  return finals;
}

RunTrace run_networked(const tvg::TemporalGraph& g, const Population& pop,
                       const Binding& binding, const Nat& w, uint64_t budget,
                       const RunOptions& options) {
  const int n = pop.size();
  const int t_count = g.instant_count();
  if (g.vertex_count() != n)
    throw std::invalid_argument("run_networked: graph/population size mismatch");
  binding.validate(n, t_count);

  RunTrace trace;
  trace.vertex_count = n;
  trace.instant_count = t_count;
  trace.binding = binding;
  trace.network_input = w;
  trace.states.resize(t_count);

  // cycle 1: every node computes on the network input
  std::vector<NodeCycleState> cur(n);
  for (int v = 0; v < n; ++v) {
    int label = binding.vertex_to_node[v];
    const Program& p = pop.members[label - 1].program;
    machine::ExecOutcome out = machine::run_bounded(p, w, budget);
    NodeCycleState& s = cur[v];
    s.oracle_triggered = !out.halted;
    s.output = {w, label, out.halted ? out.value : Nat(0)};
    s.lineage = label;
  }
  trace.states[0] = cur;

  // one synchronous exchange per time interval; receivers adopt the larger
  // value, ties to the lowest carrier label
  for (int t = 0; t + 1 < t_count; ++t) {
    std::vector<NodeCycleState> next = cur;
    for (const tvg::Edge& e : g.edges_at(t)) {
      const NodeCycleState& from = cur[e.u];
      if (!options.oracle_nodes_relay && from.oracle_triggered)
        continue;  // silenced oracle nodes transmit nothing, not even relays
      NodeCycleState& to = next[e.v];
      if (from.output.value > to.output.value ||
          (from.output.value == to.output.value && from.output.carrier < to.output.carrier)) {
        to.output.carrier = from.output.carrier;
        to.output.value = from.output.value;
        to.lineage = from.lineage;
      }
    }
    cur = std::move(next);
    trace.states[t + 1] = cur;
  }

  // final cycle strips (w, carrier); oracle sensitivity pins to 0
  for (int v = 0; v < n; ++v) {
    int label = binding.vertex_to_node[v];
    trace.final_outputs[label] =
        trace.states[0][v].oracle_triggered ? Nat(0) : cur[v].output.value;
  }
  return trace;
}

std::map<int, EacEntry> eac_estimates(const std::map<int, Nat>& net_finals,
                                      const std::map<int, Nat>& iso_finals,
                                      const machine::ComplexityEstimator& estimator) {
  if (net_finals.size() != iso_finals.size())
    throw std::invalid_argument("eac_estimates: label sets differ");
  std::map<int, EacEntry> result;
  for (const auto& [label, net] : net_finals) {
    auto it = iso_finals.find(label);
    if (it == iso_finals.end()) throw std::invalid_argument("eac_estimates: label sets differ");
    auto e_net = estimator.estimate(net);
    auto e_iso = estimator.estimate(it->second);
    EacEntry entry;
    if (e_net && e_iso) {
      entry.eac = static_cast<int64_t>(e_net->bits) - static_cast<int64_t>(e_iso->bits);
      entry.fell_back = false;
    } else {
      // keep both sides on the same backend
      entry.eac = static_cast<int64_t>(machine::compress_proxy_bits(net)) -
                  static_cast<int64_t>(machine::compress_proxy_bits(it->second));
      entry.fell_back = true;
    }
    result[label] = entry;
  }
  return result;
}

EeacResult eeac_estimate(const tvg::TemporalGraph& g, const Population& pop, const Nat& w,
                         uint64_t budget, int binding_samples, Rng& rng,
                         const machine::ComplexityEstimator& estimator) {
  if (binding_samples < 1) throw std::invalid_argument("eeac_estimate: need M >= 1");
  const int t_count = g.instant_count();
  auto iso = run_isolated(pop, w, t_count + 1, budget);
  EeacResult res;
  res.binding_samples = binding_samples;
  for (int m = 0; m < binding_samples; ++m) {
    Binding b = sample_binding(pop.size(), t_count, rng);
    RunTrace trace = run_networked(g, pop, b, w, budget);
    auto eac = eac_estimates(trace.final_outputs, iso, estimator);
    double sum = 0;
    for (const auto& [label, entry] : eac) sum += static_cast<double>(entry.eac);
    res.per_binding_aeac.push_back(sum / pop.size());
  }
  double mean = 0;
  for (double a : res.per_binding_aeac) mean += a;
  mean /= binding_samples;
  res.mean = mean;
  if (binding_samples > 1) {
    double ss = 0;
    for (double a : res.per_binding_aeac) ss += (a - mean) * (a - mean);
    res.std_error = std::sqrt(ss / (binding_samples - 1) / binding_samples);
  }
  return res;
}

std::string trace_csv(const RunTrace& trace, const std::string& run_id) {
  std::ostringstream out;
  out << "run_id,cycle,node,value,carrier,lineage,oracle_flag\n";
  for (int t = 0; t < trace.instant_count; ++t) {
    for (int v = 0; v < trace.vertex_count; ++v) {
      const NodeCycleState& s = trace.states[t][v];
      out << run_id << "," << (trace.binding.c0 + t + 1) << ","
          << trace.binding.vertex_to_node[v] << "," << s.output.value.get_str() << ","
          << s.output.carrier << "," << s.lineage << "," << (s.oracle_triggered ? 1 : 0)
          << "\n";
    }
  }
  return out.str();
}

std::string finals_csv(const RunTrace& trace, const std::map<int, Nat>& iso_finals,
                       const std::map<int, EacEntry>& eac, const std::string& run_id) {
  std::ostringstream out;
  out << "run_id,node,net_final,iso_final,eac_estimate\n";
  for (const auto& [label, net] : trace.final_outputs) {
    out << run_id << "," << label << "," << net.get_str() << ","
        << iso_finals.at(label).get_str() << "," << eac.at(label).eac << "\n";
  }
  return out.str();
}

}  // namespace bbig::runner
