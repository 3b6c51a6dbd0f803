#pragma once

// Time-varying graphs as composite edges (u, t, v): a transmission leaving u
// during the interval that starts at instant t and landing at v at t+1.
// Diffusion is SI-style, one hop per time interval, with waiting allowed.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbig/util.hpp"

namespace bbig::tvg {

using Steps = std::optional<int>;               // nullopt = Infinite/Unreachable
using Fraction = boost::rational<int64_t>;      // exact counts over N
using MaybeFraction = std::optional<Fraction>;  // nullopt = Infinite

struct Edge {
  int t;  // departure instant, in [0, T-1)
  int u;
  int v;
  auto operator<=>(const Edge&) const = default;
};

class TemporalGraph {
 public:
  // Edges are validated, deduplicated and kept sorted by (t, u, v). An
  // undirected graph expands each input edge to both arrows.
  TemporalGraph(int vertex_count, int instant_count, std::vector<Edge> edges,
                bool undirected = false);

  int vertex_count() const { return n_; }
  int instant_count() const { return t_; }
  bool undirected() const { return undirected_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edges departing at instant t.
  const std::vector<Edge>& edges_at(int t) const;

  // Subgraph from instant `start` on, with instants re-indexed to 0.
  TemporalGraph slice_from(int start) const;

  bool operator==(const TemporalGraph& o) const {
    return n_ == o.n_ && t_ == o.t_ && edges_ == o.edges_;
  }

 private:
  int n_;
  int t_;
  bool undirected_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Edge>> by_instant_;
};

struct ReachProfile {
  int source = 0;
  int start = 0;
  std::vector<Steps> arrival;  // per vertex: minimal intervals after start
};

struct DiffusionSummary {
  MaybeFraction cover_time;
  Steps diameter;
  std::vector<Steps> per_source_dt;  // dt at the summary's tau per source
};

// Earliest arrival (in time intervals after `start`, the starting instant
// itself not counted) from `source` to every vertex.
ReachProfile temporal_bfs(const TemporalGraph& g, int start, int source);

// Least k such that at least a fraction tau of all vertices is reached
// within k intervals; Infinite when tau is never reached.
Steps dt(const TemporalGraph& g, int start, int source, const Fraction& tau);
Steps dt(const ReachProfile& profile, int vertex_count, const Fraction& tau);

// (1/N) sum over sources of dt, Infinite if any source fails to reach tau.
MaybeFraction cover_time(const TemporalGraph& g, int start, const Fraction& tau);

// max over sources of dt at tau = 1.
Steps temporal_diameter(const TemporalGraph& g, int start);

DiffusionSummary diffusion_summary(const TemporalGraph& g, int start, const Fraction& tau);

// Static network: the same snapshot replicated at every departing instant.
TemporalGraph gen_static(int vertex_count, int instant_count,
                         const std::vector<std::pair<int, int>>& base_edges,
                         bool undirected = false);

TemporalGraph gen_static_complete(int vertex_count, int instant_count);
TemporalGraph gen_static_ring(int vertex_count, int instant_count);  // directed cycle

struct SmallDiameterParams {
  double degree_param = 1.0;    // out-chords added per vertex per snapshot
  double diameter_factor = 3.0; // accept when diameter <= ceil(factor * lg N)
  int max_retries = 32;
};

// Directed ring plus random chords per snapshot; regenerated with an
// incremented sub-seed until the measured diameter from t0 meets the bound.
// Throws std::runtime_error when retries are exhausted.
TemporalGraph gen_small_diameter(int vertex_count, int instant_count, uint64_t seed,
                                 const SmallDiameterParams& params = {});

// Line-oriented text format: `tvg 1`, `n <N>`, `t <T>`, optional
// `undirected`, then `e <t> <u> <v>` lines; `#` starts a comment.
TemporalGraph load_graph(const std::string& path);
TemporalGraph parse_graph(std::istream& in);
void store_graph(const TemporalGraph& g, const std::string& path);
std::string format_graph(const TemporalGraph& g);

}  // namespace bbig::tvg
