#include "bbig/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bbig::harness {

namespace fs = std::filesystem;

namespace {

tvg::Fraction parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    int64_t num = std::stoll(s.substr(0, slash));
    int64_t den = std::stoll(s.substr(slash + 1));
    return tvg::Fraction(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return tvg::Fraction(std::stoll(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  int64_t den = 1;
  for (size_t i = 0; i < s.size() - dot - 1; ++i) den *= 10;
  return tvg::Fraction(std::stoll(digits), den);
}

std::string format_fraction(const tvg::Fraction& f) {
  std::ostringstream out;
  out << f.numerator() << "/" << f.denominator();
  return out.str();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "seed") {
    c.seed = std::stoull(value);
  } else if (key == "n_grid") {
    c.n_grid.clear();
    std::istringstream vs(value);
    std::string item;
    while (std::getline(vs, item, ','))
      if (!item.empty()) c.n_grid.push_back(std::stoi(item));
    if (c.n_grid.empty()) throw ConfigError("n_grid: empty list");
  } else if (key == "instants") {
    c.instants = std::stoi(value);
  } else if (key == "graph") {
    if (value == "static_complete") c.graph = GraphKind::kStaticComplete;
    else if (value == "static_ring") c.graph = GraphKind::kStaticRing;
    else if (value == "small_diameter") c.graph = GraphKind::kSmallDiameter;
    else if (value == "file") c.graph = GraphKind::kFile;
    else throw ConfigError("graph: unknown kind '" + value + "'");
  } else if (key == "small_diameter_k") {
    c.small_diameter_k = std::stod(value);
  } else if (key == "graph_file") {
    c.graph_file = value;
  } else if (key == "tau") {
    c.tau = parse_fraction(value);
    if (c.tau <= tvg::Fraction(0) || c.tau > tvg::Fraction(1))
      throw ConfigError("tau: must be in (0, 1]");
  } else if (key == "budget") {
    c.budget = std::stoull(value);
    if (c.budget < 1) throw ConfigError("budget: must be >= 1");
  } else if (key == "binding_samples") {
    c.binding_samples = std::stoi(value);
    if (c.binding_samples < 1) throw ConfigError("binding_samples: must be >= 1");
  } else if (key == "estimator") {
    if (value == "exact_tiny") c.estimator = machine::EstimatorBackend::kExactTiny;
    else if (value == "compress_proxy") c.estimator = machine::EstimatorBackend::kCompressProxy;
    else throw ConfigError("estimator: unknown backend '" + value + "'");
  } else if (key == "exact_cap_bits") {
    c.exact_cap_bits = std::stoi(value);
  } else if (key == "omega_samples") {
    c.omega_samples = std::stoi(value);
    if (c.omega_samples < 1) throw ConfigError("omega_samples: must be >= 1");
  } else if (key == "epsilon") {
    c.epsilon = std::stod(value);
  } else if (key == "c0") {
    c.c0 = std::stoi(value);
    if (c.c0 < 0) throw ConfigError("c0: must be >= 0");
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    set_key(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  return parse(f);
}

void ExperimentConfig::apply_override(const std::string& key_value) {
  auto eq = key_value.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value");
  set_key(*this, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)));
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "seed = " << seed << "\n";
  out << "n_grid = ";
  for (size_t i = 0; i < n_grid.size(); ++i) out << (i ? "," : "") << n_grid[i];
  out << "\n";
  out << "instants = " << instants << "\n";
  out << "graph = ";
  switch (graph) {
    case GraphKind::kStaticComplete: out << "static_complete"; break;
    case GraphKind::kStaticRing: out << "static_ring"; break;
    case GraphKind::kSmallDiameter: out << "small_diameter"; break;
    case GraphKind::kFile: out << "file"; break;
  }
  out << "\n";
  out << "small_diameter_k = " << fmt_double(small_diameter_k) << "\n";
  out << "graph_file = " << graph_file << "\n";
  out << "tau = " << format_fraction(tau) << "\n";
  out << "budget = " << budget << "\n";
  out << "binding_samples = " << binding_samples << "\n";
  out << "estimator = "
      << (estimator == machine::EstimatorBackend::kExactTiny ? "exact_tiny" : "compress_proxy")
      << "\n";
  out << "exact_cap_bits = " << exact_cap_bits << "\n";
  out << "omega_samples = " << omega_samples << "\n";
  out << "epsilon = " << fmt_double(epsilon) << "\n";
  out << "c0 = " << c0 << "\n";
  // out_dir is where results land, not part of the experiment identity
  return out.str();
}

uint64_t ExperimentConfig::config_hash() const {
  return fnv1a64(canonical_text() + "|" + kToolVersion);
}

int ExperimentConfig::instants_for(int n) const {
  if (instants > 0) return instants;
  switch (graph) {
    case GraphKind::kStaticComplete: return 3;
    case GraphKind::kStaticRing: return n + 1;
    case GraphKind::kSmallDiameter:
      return static_cast<int>(std::ceil(small_diameter_k * std::log2(std::max(2, n)))) + 2;
    case GraphKind::kFile: return tvg::load_graph(graph_file).instant_count();
  }
  return 3;
}

std::string RunManifest::text() const {
  std::ostringstream out;
  out << "config_hash " << config_hash << "\n";
  out << "tool_version " << tool_version << "\n";
  for (const auto& [name, s] : sub_seeds) out << "sub_seed " << name << " " << s << "\n";
  for (const auto& f : output_files) out << "output " << f << "\n";
  return out.str();
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const size_t n = a.size();
  if (n != b.size() || n < 2) throw std::invalid_argument("spearman: need paired data");
  auto ranks = [](const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&v](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = 0, mb = 0;
  for (size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (size_t i = 0; i < n; ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0 || vb == 0) return 0;
  return cov / std::sqrt(va * vb);
}

std::string svg_line_chart(const std::string& title, const std::vector<double>& xs,
                           const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const int width = 640, height = 420, margin = 60;
  double xmin = xs.empty() ? 0 : *std::min_element(xs.begin(), xs.end());
  double xmax = xs.empty() ? 1 : *std::max_element(xs.begin(), xs.end());
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  for (const auto& [name, ys] : series)
    for (double y : ys) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(ymin)) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin - 8 << "\" y=\"" << py(ymin) << "\" text-anchor=\"end\" font-size=\"11\">"
      << fmt_double(ymin) << "</text>\n";
  out << "<text x=\"" << margin - 8 << "\" y=\"" << py(ymax) << "\" text-anchor=\"end\" font-size=\"11\">"
      << fmt_double(ymax) << "</text>\n";
  for (double x : xs)
    out << "<text x=\"" << px(x) << "\" y=\"" << height - margin + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_double(x) << "</text>\n";
  int si = 0;
  for (const auto& [name, ys] : series) {
    const char* color = colors[si % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < ys.size() && i < xs.size(); ++i)
      out << px(xs[i]) << "," << py(ys[i]) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << width - margin + 4 << "\" y=\"" << margin + 16 * si
        << "\" font-size=\"11\" fill=\"" << color << "\">" << name << "</text>\n";
    ++si;
  }
  out << "</svg>\n";
  return out.str();
}

// --- validate --------------------------------------------------------------

namespace {

// Independent brute-force earliest arrivals: explicit enumeration of all
// temporal paths (waiting allowed, one hop per interval).
std::vector<std::optional<int>> brute_force_arrivals(const tvg::TemporalGraph& g, int start,
                                                     int source) {
  const int n = g.vertex_count();
  std::vector<std::optional<int>> best(n);
  best[source] = 0;
  std::function<void(int, int)> walk = [&](int vertex, int instant) {
    for (const tvg::Edge& e : g.edges()) {
      if (e.u != vertex || e.t < instant) continue;
      int arrival = e.t + 1 - start;
      if (!best[e.v].has_value() || arrival < *best[e.v]) {
        best[e.v] = arrival;
        walk(e.v, e.t + 1);
      } else if (arrival <= *best[e.v]) {
        walk(e.v, e.t + 1);
      }
    }
  };
  walk(source, start);
  return best;
}

tvg::TemporalGraph random_tvg(Rng& rng, int max_n, int max_t) {
  int n = 2 + static_cast<int>(rng.below(max_n - 1));
  int t = 2 + static_cast<int>(rng.below(max_t - 1));
  std::vector<tvg::Edge> edges;
  for (int ti = 0; ti < t - 1; ++ti)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.below(4) == 0) edges.push_back({ti, u, v});
  return tvg::TemporalGraph(n, t, std::move(edges));
}

runner::Population tiny_population(Rng& rng, int n) {
  runner::Population pop;
  for (int i = 1; i <= n; ++i) pop.members.push_back({i, machine::sample_program(rng)});
  return pop;
}

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

}  // namespace

int cmd_validate(const ExperimentConfig& config, std::ostream& log) {
  std::vector<CheckResult> checks;
  auto add = [&checks](const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({name, ok, detail});
  };

  {  // temporal BFS against path enumeration
    Rng rng(sub_seed(config.seed, "validate_bfs", 0));
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 300 && ok; ++i) {
      tvg::TemporalGraph g = random_tvg(rng, 8, 5);
      for (int start = 0; start < g.instant_count() && ok; ++start)
        for (int src = 0; src < g.vertex_count() && ok; ++src) {
          auto got = tvg::temporal_bfs(g, start, src).arrival;
          auto want = brute_force_arrivals(g, start, src);
          if (got != want) {
            ok = false;
            detail = "mismatch on random graph " + std::to_string(i);
          }
        }
    }
    add("temporal_bfs_oracle", ok, detail);
  }

  {  // contagion against temporal reachability
    Rng rng(sub_seed(config.seed, "validate_contagion", 0));
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 100 && ok; ++i) {
      tvg::TemporalGraph g = random_tvg(rng, 8, 5);
      const int n = g.vertex_count();
      runner::Population pop = tiny_population(rng, n);
      runner::Binding b = runner::sample_binding(n, g.instant_count(), rng);
      runner::RunTrace trace = runner::run_networked(g, pop, b, 0, 64);
      for (int v = 0; v < n && ok; ++v) {
        machine::Nat want = trace.states[0][v].output.value;
        for (int u = 0; u < n; ++u) {
          auto arr = brute_force_arrivals(g, 0, u);
          if (arr[v].has_value() && trace.states[0][u].output.value > want)
            want = trace.states[0][u].output.value;
        }
        if (trace.states.back()[v].output.value != want) {
          ok = false;
          detail = "triple " + std::to_string(i) + " vertex " + std::to_string(v);
        }
      }
    }
    add("contagion_oracle", ok, detail);
  }

  {  // Kraft sum behavior
    bool ok = machine::kraft_sum(3).numerator * 8 == machine::kraft_sum(3).denominator;
    double prev = 0;
    for (int len = 3; len <= 24; ++len) {
      auto ks = machine::kraft_sum(len);
      double v = ks.value();
      if (ks.numerator > ks.denominator) ok = false;
      if (len % 3 == 0 && v <= prev) ok = false;  // new programs appear at every multiple of 3
      prev = std::max(prev, v);
    }
    add("kraft_monotone_bounded", ok);
  }

  {  // prefix-freeness by enumeration
    std::vector<std::string> all;
    machine::enumerate_programs(15, [&all](const machine::Program& p) { all.push_back(p.bits); });
    std::sort(all.begin(), all.end());
    bool ok = true;
    for (size_t i = 0; i + 1 < all.size(); ++i)
      if (all[i + 1].compare(0, all[i].size(), all[i]) == 0) ok = false;
    add("prefix_free", ok);
  }

  {  // sampling measure of the HALT program
    Rng rng(sub_seed(config.seed, "validate_sampling", 0));
    const int samples = 100000;
    int halt_only = 0;
    for (int i = 0; i < samples; ++i)
      if (machine::sample_program(rng).bits == "000") ++halt_only;
    double freq = static_cast<double>(halt_only) / samples;
    double sigma = std::sqrt(0.125 * 0.875 / samples);
    add("sampling_measure", std::abs(freq - 0.125) <= 3 * sigma, fmt_double(freq));
  }

  {  // omega monotone in c on a fixed sample set
    Rng rng(sub_seed(config.seed, "validate_omega", 0));
    std::vector<machine::Program> set;
    for (int i = 0; i < 2000; ++i) set.push_back(machine::sample_program(rng));
    double prev = 1.0;
    bool ok = true;
    std::vector<machine::Program> halting;
    for (int c : {1, 2, 4, 8}) {
      auto est = metrics::halting_fraction(0, c, config.budget, set);
      if (est.omega_hat > prev) ok = false;
      prev = est.omega_hat;
      if (c == 1) halting = est.halting;
    }
    add("omega_monotone", ok);
    add("gibbs_entropy", metrics::gibbs_entropy_check(halting) != metrics::ComplementCheck::kFails);
  }

  {  // complement identity on fully covered runs
    Rng rng(sub_seed(config.seed, "validate_complement", 0));
    bool ok = true;
    int covered = 0;
    for (int i = 0; i < 50; ++i) {
      tvg::TemporalGraph g = tvg::gen_static_complete(3 + static_cast<int>(rng.below(4)), 4);
      runner::Population pop = tiny_population(rng, g.vertex_count());
      runner::Binding b = runner::sample_binding(g.vertex_count(), g.instant_count(), rng);
      runner::RunTrace trace = runner::run_networked(g, pop, b, 0, 64);
      for (int mid = 0; mid < g.instant_count(); ++mid) {
        auto check = metrics::complement_identity_check(trace, 0, mid);
        if (check == metrics::ComplementCheck::kFails) ok = false;
        if (check == metrics::ComplementCheck::kHolds) ++covered;
      }
    }
    add("complement_identity", ok && covered > 0);
  }

  {  // exhaustive bindings at N=3: runner route equals reachability route
    Rng rng(sub_seed(config.seed, "validate_aeac", 0));
    machine::ComplexityEstimator est(machine::EstimatorBackend::kCompressProxy, 0, config.budget);
    tvg::TemporalGraph g = tvg::gen_static(3, 3, {{0, 1}, {1, 2}}, true);
    runner::Population pop = tiny_population(rng, 3);
    auto iso = runner::run_isolated(pop, 0, g.instant_count() + 1, config.budget);
    std::vector<int> perm = {1, 2, 3};
    double total_runner = 0, total_oracle = 0;
    bool ok = true;
    do {
      runner::Binding b;
      b.vertex_to_node = perm;
      b.n_cycles = g.instant_count() + 1;
      runner::RunTrace trace = runner::run_networked(g, pop, b, 0, config.budget);
      auto eac = runner::eac_estimates(trace.final_outputs, iso, est);
      for (const auto& [label, entry] : eac) total_runner += static_cast<double>(entry.eac);
      // oracle route: reachability maxima instead of the runner
      for (int v = 0; v < 3; ++v) {
        machine::Nat best = trace.states[0][v].output.value;
        for (int u = 0; u < 3; ++u) {
          auto arr = brute_force_arrivals(g, 0, u);
          if (arr[v].has_value() && trace.states[0][u].output.value > best)
            best = trace.states[0][u].output.value;
        }
        machine::Nat net = trace.states[0][v].oracle_triggered ? machine::Nat(0) : best;
        int label = b.vertex_to_node[v];
        total_oracle += static_cast<double>(machine::compress_proxy_bits(net)) -
                        static_cast<double>(machine::compress_proxy_bits(iso.at(label)));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    ok = std::abs(total_runner - total_oracle) < 1e-9;
    add("aeac_exhaustive_bindings", ok);
  }

  // report
  nlohmann::ordered_json report;
  report["tool_version"] = kToolVersion;
  report["config_hash"] = config.config_hash();
  bool all_ok = true;
  std::ostringstream csv;
  csv << "check,status,detail\n";
  for (const CheckResult& c : checks) {
    report["checks"][c.name] = {{"passed", c.passed}, {"detail", c.detail}};
    csv << c.name << "," << (c.passed ? "pass" : "fail") << "," << c.detail << "\n";
    log << (c.passed ? "PASS " : "FAIL ") << c.name
        << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    all_ok = all_ok && c.passed;
  }
  fs::path out(config.out_dir);
  write_file(out / "validate_report.json", report.dump(2) + "\n");
  write_file(out / "validate_report.csv", csv.str());
  RunManifest manifest{config.config_hash(), kToolVersion, {}, {"validate_report.json", "validate_report.csv"}};
  write_file(out / "manifest_validate.txt", manifest.text());
  return all_ok ? kExitOk : kExitPropertyFailure;
}

// --- growth ----------------------------------------------------------------

namespace {

tvg::TemporalGraph build_graph(const ExperimentConfig& config, int n, uint64_t seed) {
  const int t = config.instants_for(n);
  switch (config.graph) {
    case GraphKind::kStaticComplete: return tvg::gen_static_complete(n, t);
    case GraphKind::kStaticRing: return tvg::gen_static_ring(n, t);
    case GraphKind::kSmallDiameter: {
      tvg::SmallDiameterParams params;
      params.diameter_factor = config.small_diameter_k;
      return tvg::gen_small_diameter(n, t, seed, params);
    }
    case GraphKind::kFile: return tvg::load_graph(config.graph_file);
  }
  throw std::logic_error("build_graph: unreachable");
}

}  // namespace

int cmd_growth(const ExperimentConfig& config, std::ostream& log) {
  for (size_t i = 0; i + 1 < config.n_grid.size(); ++i)
    if (config.n_grid[i] >= config.n_grid[i + 1])
      throw ConfigError("growth: n_grid must be strictly ascending");

  machine::ComplexityEstimator estimator(config.estimator, config.exact_cap_bits, config.budget);
  RunManifest manifest{config.config_hash(), kToolVersion, {}, {}};

  std::ostringstream csv, dat;
  csv << "experiment_id,N,seed,instants,cover_time,eeac,eeac_stderr,amax,amax_bits,tau_E,"
         "omega_hat,leading_term,lower_bound\n";
  dat << "# lgN eeac leading_term\n";
  std::vector<double> lg_ns, eeacs, leadings;

  const std::string experiment_id = "growth-" + std::to_string(config.config_hash());
  for (int n : config.n_grid) {
    const uint64_t graph_seed = sub_seed(config.seed, "graph", n);
    const uint64_t pop_seed = sub_seed(config.seed, "population", n);
    manifest.sub_seeds.emplace_back("graph/" + std::to_string(n), graph_seed);
    manifest.sub_seeds.emplace_back("population/" + std::to_string(n), pop_seed);

    tvg::TemporalGraph g = build_graph(config, n, graph_seed);
    const int t_count = g.instant_count();
    Rng pop_rng(pop_seed);
    runner::Population pop = runner::sample_population(n, pop_rng);

    Rng eeac_rng(sub_seed(config.seed, "bindings", n));
    runner::EeacResult eeac =
        runner::eeac_estimate(g, pop, 0, config.budget, config.binding_samples, eeac_rng, estimator);

    metrics::AmaxEstimate amax = metrics::amax_estimate(pop, 0, config.budget, estimator);

    auto ct = tvg::cover_time(g, 0, config.tau);
    Rng tau_rng(sub_seed(config.seed, "tau", n));
    double tau_e = metrics::tau_expected(g, pop, 0, config.budget, config.binding_samples,
                                         tau_rng, 0, t_count - 1);
    Rng omega_rng(sub_seed(config.seed, "omega", n));
    auto omega = metrics::halting_fraction(0, config.c0 + t_count + 1, config.budget,
                                           config.omega_samples, omega_rng);

    metrics::LowerBoundParams params;
    params.tau_e = tau_e;
    params.omega = omega.omega_hat;
    params.n = n;
    int fi = 0;
    if (ct) fi = static_cast<int>((ct->numerator() + ct->denominator() - 1) / ct->denominator());
    params.x = std::max<int64_t>(2, fi + 2);
    double bound = metrics::lower_bound_eval(params);
    double leading = metrics::leading_coefficient(params) * std::log2(static_cast<double>(n));

    csv << experiment_id << "," << n << "," << config.seed << "," << t_count << ","
        << (ct ? format_fraction(*ct) : "inf") << "," << fmt_double(eeac.mean) << ","
        << fmt_double(eeac.std_error) << "," << amax.value.get_str() << "," << amax.bits.bits
        << "," << fmt_double(tau_e) << "," << fmt_double(omega.omega_hat) << ","
        << fmt_double(leading) << "," << fmt_double(bound) << "\n";
    double lg_n = std::log2(static_cast<double>(n));
    dat << fmt_double(lg_n) << " " << fmt_double(eeac.mean) << " " << fmt_double(leading) << "\n";
    lg_ns.push_back(lg_n);
    eeacs.push_back(eeac.mean);
    leadings.push_back(leading);
    log << "N=" << n << " eeac=" << fmt_double(eeac.mean) << " leading=" << fmt_double(leading)
        << " omega=" << fmt_double(omega.omega_hat) << "\n";
  }

  if (lg_ns.size() >= 2) {
    bool eeac_mono = std::is_sorted(eeacs.begin(), eeacs.end());
    bool lead_mono = std::is_sorted(leadings.begin(), leadings.end());
    log << "trend: eeac " << (eeac_mono ? "nondecreasing" : "NOT nondecreasing")
        << " (spearman " << fmt_double(spearman(lg_ns, eeacs)) << "), leading term "
        << (lead_mono ? "nondecreasing" : "NOT nondecreasing") << " (spearman "
        << fmt_double(spearman(lg_ns, leadings)) << ")\n";
  } else {
    log << "trend: single row, no trend computed\n";
  }

  fs::path out(config.out_dir);
  write_file(out / "growth.csv", csv.str());
  write_file(out / "growth.dat", dat.str());
  write_file(out / "growth.svg",
             svg_line_chart("EEAC and leading term vs lg N", lg_ns,
                            {{"eeac", eeacs}, {"leading", leadings}}));
  manifest.output_files = {"growth.csv", "growth.dat", "growth.svg"};
  write_file(out / "manifest_growth.txt", manifest.text());
  return kExitOk;
}

// --- centrality ------------------------------------------------------------

int cmd_centrality(const ExperimentConfig& config, std::ostream& log) {
  const int n = config.n_grid.front();
  const uint64_t graph_seed = sub_seed(config.seed, "graph", n);
  tvg::TemporalGraph g = build_graph(config, n, graph_seed);
  if (g.instant_count() < 2) throw ConfigError("centrality: need a TVG with T >= 2");
  Rng pop_rng(sub_seed(config.seed, "population", n));
  runner::Population pop = runner::sample_population(n, pop_rng);

  metrics::CentralityConfig cc;
  cc.tau = config.tau;
  cc.budget = config.budget;
  cc.binding_samples = config.binding_samples;
  cc.omega_samples = config.omega_samples;
  cc.epsilon = config.epsilon;
  cc.c0 = config.c0;
  Rng rng(sub_seed(config.seed, "centrality", n));
  metrics::CentralityResult res = metrics::time_centrality(g, pop, 0, rng, cc);

  std::ostringstream csv;
  csv << "experiment_id,N,seed,t_z,cover_time,tau_E,omega_hat,coefficient_C,lower_bound,t_cen\n";
  const std::string experiment_id = "centrality-" + std::to_string(config.config_hash());
  const std::string t_cen = res.t_cen ? std::to_string(*res.t_cen) : "None";
  for (const metrics::InstantScore& row : res.table) {
    csv << experiment_id << "," << n << "," << config.seed << "," << row.z << ","
        << (row.f ? format_fraction(*row.f) : "inf") << "," << fmt_double(row.tau_e) << ","
        << fmt_double(row.omega_hat) << "," << fmt_double(row.coefficient) << ","
        << fmt_double(row.bound) << "," << t_cen << "\n";
  }
  fs::path out(config.out_dir);
  write_file(out / "centrality.csv", csv.str());
  RunManifest manifest{config.config_hash(), kToolVersion, {{"centrality", sub_seed(config.seed, "centrality", n)}}, {"centrality.csv"}};
  write_file(out / "manifest_centrality.txt", manifest.text());
  if (!res.t_cen)
    log << "warning: no qualifying instant, t_cen=None\n";
  else
    log << "t_cen=" << *res.t_cen << "\n";
  return kExitOk;
}

// --- gen-graph / sample-pop ------------------------------------------------

int cmd_gen_graph(const ExperimentConfig& config, std::ostream& log) {
  fs::path out(config.out_dir);
  RunManifest manifest{config.config_hash(), kToolVersion, {}, {}};
  for (int n : config.n_grid) {
    const uint64_t graph_seed = sub_seed(config.seed, "graph", n);
    tvg::TemporalGraph g = build_graph(config, n, graph_seed);
    std::string name = "graph_" + std::to_string(n) + ".tvg";
    write_file(out / name, tvg::format_graph(g));
    manifest.output_files.push_back(name);
    log << "wrote " << name << " (T=" << g.instant_count() << ", edges=" << g.edges().size()
        << ")\n";
  }
  write_file(out / "manifest_gen_graph.txt", manifest.text());
  return kExitOk;
}

int cmd_sample_pop(const ExperimentConfig& config, std::ostream& log) {
  fs::path out(config.out_dir);
  RunManifest manifest{config.config_hash(), kToolVersion, {}, {}};
  for (int n : config.n_grid) {
    Rng rng(sub_seed(config.seed, "population", n));
    runner::Population pop = runner::sample_population(n, rng);
    std::ostringstream csv;
    csv << "label,bits,length\n";
    for (const runner::Member& m : pop.members)
      csv << m.label << "," << m.program.bits << "," << m.program.length() << "\n";
    std::string name = "pop_" + std::to_string(n) + ".csv";
    write_file(out / name, csv.str());
    manifest.output_files.push_back(name);
    log << "wrote " << name << "\n";
  }
  write_file(out / "manifest_sample_pop.txt", manifest.text());
  return kExitOk;
}

}  // namespace bbig::harness
