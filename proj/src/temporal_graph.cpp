#include "bbig/temporal_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bbig::tvg {

TemporalGraph::TemporalGraph(int vertex_count, int instant_count, std::vector<Edge> edges,
                             bool undirected)
    : n_(vertex_count), t_(instant_count), undirected_(undirected) {
  if (n_ < 1) throw std::invalid_argument("TemporalGraph: vertex_count must be positive");
  if (t_ < 1) throw std::invalid_argument("TemporalGraph: instant_count must be positive");
  if (undirected) {
    std::vector<Edge> expanded;
    expanded.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
      expanded.push_back(e);
      expanded.push_back({e.t, e.v, e.u});
    }
    edges = std::move(expanded);
  }
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw std::invalid_argument("TemporalGraph: vertex index out of range");
    if (e.u == e.v) throw std::invalid_argument("TemporalGraph: self-loops are not allowed");
    if (e.t < 0 || e.t >= t_ - 1)
      throw std::invalid_argument("TemporalGraph: departure instant out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  by_instant_.resize(t_);
  for (const Edge& e : edges_) by_instant_[e.t].push_back(e);
}

const std::vector<Edge>& TemporalGraph::edges_at(int t) const {
  if (t < 0 || t >= t_) throw std::invalid_argument("edges_at: instant out of range");
  return by_instant_[t];
}

TemporalGraph TemporalGraph::slice_from(int start) const {
  if (start < 0 || start >= t_) throw std::invalid_argument("slice_from: instant out of range");
  std::vector<Edge> edges;
  for (const Edge& e : edges_)
    if (e.t >= start) edges.push_back({e.t - start, e.u, e.v});
  return TemporalGraph(n_, t_ - start, std::move(edges));
}

ReachProfile temporal_bfs(const TemporalGraph& g, int start, int source) {
  const int n = g.vertex_count();
  const int t_count = g.instant_count();
  if (start < 0 || start > t_count - 1) throw std::invalid_argument("temporal_bfs: start out of range");
  if (source < 0 || source >= n) throw std::invalid_argument("temporal_bfs: source out of range");
  ReachProfile profile;
  profile.source = source;
  profile.start = start;
  profile.arrival.assign(n, std::nullopt);
  profile.arrival[source] = 0;
  // SI spreading: every reached vertex transmits over every edge departing at
  // the current instant; one hop per interval.
  for (int t = start; t < t_count - 1; ++t) {
    int step = t - start + 1;
    std::vector<int> newly;
    for (const Edge& e : g.edges_at(t)) {
      if (profile.arrival[e.u].has_value() && !profile.arrival[e.v].has_value())
        newly.push_back(e.v);
    }
    for (int v : newly)
      if (!profile.arrival[v].has_value()) profile.arrival[v] = step;
  }
  return profile;
}

Steps dt(const ReachProfile& profile, int vertex_count, const Fraction& tau) {
  if (tau <= Fraction(0) || tau > Fraction(1))
    throw std::invalid_argument("dt: tau must be in (0, 1]");
  // counts at step k, compared exactly: reached/N >= tau
  int max_step = 0;
  int reached_total = 0;
  for (const Steps& a : profile.arrival)
    if (a.has_value()) {
      ++reached_total;
      max_step = std::max(max_step, *a);
    }
  for (int k = 0; k <= max_step; ++k) {
    int64_t count = 0;
    for (const Steps& a : profile.arrival)
      if (a.has_value() && *a <= k) ++count;
    if (Fraction(count, vertex_count) >= tau) return k;
  }
  return std::nullopt;
}

Steps dt(const TemporalGraph& g, int start, int source, const Fraction& tau) {
  return dt(temporal_bfs(g, start, source), g.vertex_count(), tau);
}

MaybeFraction cover_time(const TemporalGraph& g, int start, const Fraction& tau) {
  Fraction sum(0);
  for (int u = 0; u < g.vertex_count(); ++u) {
    Steps d = dt(g, start, u, tau);
    if (!d) return std::nullopt;
    sum += Fraction(*d);
  }
  return sum / Fraction(g.vertex_count());
}

Steps temporal_diameter(const TemporalGraph& g, int start) {
  int worst = 0;
  for (int u = 0; u < g.vertex_count(); ++u) {
    Steps d = dt(g, start, u, Fraction(1));
    if (!d) return std::nullopt;
    worst = std::max(worst, *d);
  }
  return worst;
}

DiffusionSummary diffusion_summary(const TemporalGraph& g, int start, const Fraction& tau) {
  DiffusionSummary s;
  s.per_source_dt.reserve(g.vertex_count());
  Fraction sum(0);
  bool all_reach = true;
  for (int u = 0; u < g.vertex_count(); ++u) {
    Steps d = dt(g, start, u, tau);
    s.per_source_dt.push_back(d);
    if (d)
      sum += Fraction(*d);
    else
      all_reach = false;
  }
  s.cover_time = all_reach ? MaybeFraction(sum / Fraction(g.vertex_count())) : std::nullopt;
  s.diameter = temporal_diameter(g, start);
  return s;
}

TemporalGraph gen_static(int vertex_count, int instant_count,
                         const std::vector<std::pair<int, int>>& base_edges,
                         bool undirected) {
  std::vector<Edge> edges;
  edges.reserve(base_edges.size() * std::max(0, instant_count - 1));
  for (int t = 0; t < instant_count - 1; ++t)
    for (const auto& [u, v] : base_edges) edges.push_back({t, u, v});
  return TemporalGraph(vertex_count, instant_count, std::move(edges), undirected);
}

TemporalGraph gen_static_complete(int vertex_count, int instant_count) {
  std::vector<std::pair<int, int>> base;
  for (int u = 0; u < vertex_count; ++u)
    for (int v = 0; v < vertex_count; ++v)
      if (u != v) base.emplace_back(u, v);
  return gen_static(vertex_count, instant_count, base);
}

TemporalGraph gen_static_ring(int vertex_count, int instant_count) {
  std::vector<std::pair<int, int>> base;
  for (int u = 0; u < vertex_count; ++u) base.emplace_back(u, (u + 1) % vertex_count);
  return gen_static(vertex_count, instant_count, base);
}

TemporalGraph gen_small_diameter(int vertex_count, int instant_count, uint64_t seed,
                                 const SmallDiameterParams& params) {
  if (vertex_count < 2) throw std::invalid_argument("gen_small_diameter: need N >= 2");
  const int n = vertex_count;
  const int bound =
      std::max(1, static_cast<int>(std::ceil(params.diameter_factor * std::log2(n))));
  const int chords = std::max(0, static_cast<int>(std::ceil(params.degree_param)));
  Steps measured;
  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    Rng rng(sub_seed(seed, "small_diameter", attempt));
    std::vector<Edge> edges;
    for (int t = 0; t < instant_count - 1; ++t) {
      for (int u = 0; u < n; ++u) {
        edges.push_back({t, u, (u + 1) % n});
        for (int c = 0; c < chords; ++c) {
          int v = static_cast<int>(rng.below(n - 1));
          if (v >= u) ++v;  // uniform over vertices != u
          edges.push_back({t, u, v});
        }
      }
    }
    TemporalGraph g(n, instant_count, std::move(edges));
    measured = temporal_diameter(g, 0);
    if (measured && *measured <= bound) return g;
  }
  std::ostringstream msg;
  msg << "gen_small_diameter: retries exhausted; last measured diameter ";
  if (measured)
    msg << *measured;
  else
    msg << "Infinite";
  msg << " > bound " << bound;
  throw std::runtime_error(msg.str());
}

// --- file format -----------------------------------------------------------

std::string format_graph(const TemporalGraph& g) {
  std::ostringstream out;
  out << "tvg 1\n";
  out << "n " << g.vertex_count() << "\n";
  out << "t " << g.instant_count() << "\n";
  for (const Edge& e : g.edges()) out << "e " << e.t << " " << e.u << " " << e.v << "\n";
  return out.str();
}

void store_graph(const TemporalGraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("store_graph: cannot open " + path);
  f << format_graph(g);
}

TemporalGraph parse_graph(std::istream& in) {
  int n = -1, t = -1;
  bool undirected = false;
  bool header_seen = false;
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  auto fail = [&line_no](const std::string& why) {
    throw std::runtime_error("graph parse error at line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (!header_seen) {
      int version;
      if (key != "tvg" || !(ls >> version) || version != 1) fail("expected header 'tvg 1'");
      header_seen = true;
    } else if (key == "n") {
      if (!(ls >> n) || n < 1) fail("bad vertex count");
    } else if (key == "t") {
      if (!(ls >> t) || t < 1) fail("bad instant count");
    } else if (key == "undirected") {
      undirected = true;
    } else if (key == "e") {
      if (n < 0 || t < 0) fail("edge before n/t declarations");
      Edge e;
      if (!(ls >> e.t >> e.u >> e.v)) fail("malformed edge");
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) fail("vertex index out of range");
      if (e.t < 0 || e.t >= t - 1) fail("departure instant out of range");
      edges.push_back(e);
    } else {
      fail("unknown directive '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (!header_seen) {
    line_no = 1;
    fail("missing header");
  }
  if (n < 0 || t < 0) {
    line_no = 1;
    fail("missing n/t declarations");
  }
  return TemporalGraph(n, t, std::move(edges), undirected);
}

TemporalGraph load_graph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_graph: cannot open " + path);
  return parse_graph(f);
}

}  // namespace bbig::tvg
