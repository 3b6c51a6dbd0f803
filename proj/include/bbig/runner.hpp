#pragma once

// Synchronous Busy Beaver imitation runs: every node computes once on the
// network input, then the per-node maximum diffuses over the temporal graph,
// one hop per interval. Non-halting computations (budget exceeded) stand in
// for oracle triggers: the node contributes value 0 and its final output is
// pinned to 0, though by default it still relays received values.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bbig/machine.hpp"
#include "bbig/temporal_graph.hpp"

namespace bbig::runner {

using machine::Nat;
using machine::Program;

struct Member {
  int label;  // 1-based
  Program program;
};

struct Population {
  std::vector<Member> members;  // labels 1..N in order
  int size() const { return static_cast<int>(members.size()); }
};

struct Binding {
  std::vector<int> vertex_to_node;  // bijection [0,N) -> labels 1..N
  int c0 = 0;                       // pre-diffusion idle cycles
  int n_cycles = 0;                 // total cycles, >= c0 + T + 1

  void validate(int population_size, int instant_count) const;
};

struct PartialOutput {
  Nat w;        // network input
  int carrier;  // label of the program whose cycle-1 value is carried
  Nat value;
};

struct NodeCycleState {
  PartialOutput output;
  int lineage;  // origin label of the current value
  bool oracle_triggered;
};

struct RunTrace {
  int vertex_count = 0;
  int instant_count = 0;
  Binding binding;
  Nat network_input;
  // states[t][v]: the node at vertex v as of instant t. states[0] holds the
  // cycle-1 computed values; states[t] reflects exchanges over edges
  // departing t-1.
  std::vector<std::vector<NodeCycleState>> states;
  std::map<int, Nat> final_outputs;  // label -> final value (oracle nodes pinned to 0)

  int node_at_vertex(int v) const { return binding.vertex_to_node[v]; }
  int vertex_of_node(int label) const;
};

Population sample_population(int n, Rng& rng);

Binding identity_binding(int n, int instant_count, int c0 = 0);
Binding sample_binding(int n, int instant_count, Rng& rng, int c0 = 0);

// Isolated baseline: reiterate each member's own partial output as the next
// input for c cycles; any non-halting cycle pins the final output to 0.
std::map<int, Nat> run_isolated(const Population& pop, const Nat& w, int cycles,
                                uint64_t budget);

struct RunOptions {
  // Whether oracle-triggered nodes keep relaying received values. Both
  // readings of the protocol are available; relaying is the default.
  bool oracle_nodes_relay = true;
};

RunTrace run_networked(const tvg::TemporalGraph& g, const Population& pop,
                       const Binding& binding, const Nat& w, uint64_t budget,
                       const RunOptions& options = {});

struct EacEntry {
  int64_t eac;      // signed complexity difference, networked minus isolated
  bool fell_back;   // proxy fallback was used for this node
};

// Per-node emergent algorithmic complexity: estimate(net) - estimate(iso),
// with the same backend on both sides. When ExactTiny cannot certify either
// side of a node, that node falls back to the proxy on both sides.
std::map<int, EacEntry> eac_estimates(const std::map<int, Nat>& net_finals,
                                      const std::map<int, Nat>& iso_finals,
                                      const machine::ComplexityEstimator& estimator);

struct EeacResult {
  double mean = 0.0;        // over sampled bindings of the per-binding node average
  double std_error = 0.0;   // over bindings; 0 when a single binding is sampled
  int binding_samples = 0;
  std::vector<double> per_binding_aeac;
};

EeacResult eeac_estimate(const tvg::TemporalGraph& g, const Population& pop, const Nat& w,
                         uint64_t budget, int binding_samples, Rng& rng,
                         const machine::ComplexityEstimator& estimator);

// Trace export per the CSV contracts (run_id,cycle,node,value,carrier,
// lineage,oracle_flag) and (run_id,node,net_final,iso_final,eac_estimate).
std::string trace_csv(const RunTrace& trace, const std::string& run_id);
std::string finals_csv(const RunTrace& trace, const std::map<int, Nat>& iso_finals,
                       const std::map<int, EacEntry>& eac, const std::string& run_id);

}  // namespace bbig::runner
