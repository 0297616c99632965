// pathperc: path percolation simulator and Smoluchowski solver.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathperc/csv.hpp"
#include "pathperc/dynamics.hpp"
#include "pathperc/generators.hpp"
#include "pathperc/graph_io.hpp"
#include "pathperc/outputs.hpp"
#include "pathperc/parallel.hpp"
#include "pathperc/phase.hpp"
#include "pathperc/smoluchowski.hpp"
#include "pathperc/stats.hpp"

#ifndef PATHPERC_GIT_HASH
#define PATHPERC_GIT_HASH "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pathperc;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNoConvergence = 3, kPartialFailure = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint64_t seed = 1;
  std::string out = "out";
  std::size_t workers = 0;

  std::string kind = "ust";
  std::size_t n = 1000;
  double mean_degree = 2.0;
  double disk_radius = 1.8e3;
  int photons = 50;
  std::string graph;  // optional edge list to start from

  std::string scheme = "cross";
  double alpha = 0.0;
  std::string retry = "resample";

  std::uint64_t steps = 1000;
  std::uint64_t record_every = 1;
  std::size_t replicas = 1;
  std::uint64_t burn_in = 0;
  std::uint64_t window = 0;
  std::uint64_t snapshot_every = 0;
  double stationarity_tol = 0.01;
  std::size_t pairs = 20;

  std::vector<std::size_t> ns{100, 400};
  std::vector<double> alphas;
  std::vector<double> xs{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 2.0, 3.0};
  double eta_target = 0.5;
  std::size_t n_large = 0;

  std::size_t smax = 1000;
  double tol = 1e-10;
  double damping = 0.5;
  std::size_t max_iter = 200000;
  std::string kernel = "per_parent";
  std::string equation = "approximate";
  std::size_t node_count = 0;

  double tau = 2.25;
  std::string vs_file;
  std::string length_kernel = "rayleigh";
};

void add_options(CLI::App& app, Config& c) {
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--workers", c.workers, "Worker threads (0: PATHPERC_WORKERS or all cores)");

  app.add_option("--kind", c.kind, "ust | er | honeycomb | complete | satellite")->capture_default_str();
  app.add_option("--n", c.n, "Node count")->capture_default_str();
  app.add_option("--mean-degree", c.mean_degree, "ER mean degree")->capture_default_str();
  app.add_option("--disk-radius", c.disk_radius, "Satellite disk radius, km")->capture_default_str();
  app.add_option("--photons", c.photons, "Photons per downlink attempt")->capture_default_str();
  app.add_option("--graph", c.graph, "Start from this edge list instead of generating");

  app.add_option("--scheme", c.scheme, "cross | downlink | redundancy")->capture_default_str();
  app.add_option("--alpha", c.alpha, "Links per step")->capture_default_str();
  app.add_option("--downlink-retry", c.retry, "consume | resample")->capture_default_str();

  app.add_option("--steps", c.steps, "Trajectory length")->capture_default_str();
  app.add_option("--record-every", c.record_every, "Trajectory record spacing")->capture_default_str();
  app.add_option("--replicas", c.replicas, "Independent runs")->capture_default_str();
  app.add_option("--burn-in", c.burn_in, "Burn-in steps (0: 20 N)")->capture_default_str();
  app.add_option("--window", c.window, "Measurement window (0: 10 N)")->capture_default_str();
  app.add_option("--snapshot-every", c.snapshot_every, "Snapshot spacing (0: N/10)")->capture_default_str();
  app.add_option("--stationarity-tol", c.stationarity_tol, "Max eta drift between window halves")
      ->capture_default_str();
  app.add_option("--pairs", c.pairs, "Sampled pairs per component for ell(s)")->capture_default_str();

  app.add_option("--ns", c.ns, "Sweep node counts")->delimiter(',')->capture_default_str();
  app.add_option("--alphas", c.alphas, "Sweep alphas (overrides --x)")->delimiter(',');
  app.add_option("--x", c.xs, "Sweep alpha / sqrt(N) grid")->delimiter(',')->capture_default_str();
  app.add_option("--eta-target", c.eta_target, "Threshold availability")->capture_default_str();
  app.add_option("--n-large", c.n_large, "Second size for the curve crossing")->capture_default_str();

  app.add_option("--smax", c.smax, "Solver truncation size")->capture_default_str();
  app.add_option("--tol", c.tol, "Solver residual tolerance")->capture_default_str();
  app.add_option("--damping", c.damping, "Solver damping")->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "Solver iteration cap")->capture_default_str();
  app.add_option("--kernel", c.kernel, "per_parent | asymptotic | exact_tree")->capture_default_str();
  app.add_option("--equation", c.equation, "approximate | finite")->capture_default_str();
  app.add_option("--node-count", c.node_count, "N for the finite equation (0: smax)")->capture_default_str();

  app.add_option("--tau", c.tau, "Power-law exponent for the closed forms")->capture_default_str();
  app.add_option("--vs", c.vs_file, "v(s) CSV to turn into a p(l) prediction");
  app.add_option("--length-kernel", c.length_kernel, "rayleigh | exact_tree")->capture_default_str();
}

// --- conversions -----------------------------------------------------------

template <class F>
auto usage_guard(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

KernelMode parse_kernel(const std::string& s) {
  if (s == "per_parent" || s == "per_parent_normalized") return KernelMode::PerParent;
  if (s == "asymptotic" || s == "asymptotic_half") return KernelMode::AsymptoticHalf;
  if (s == "exact_tree") return KernelMode::ExactTree;
  throw UsageError("unknown kernel: " + s);
}

RateEquation parse_equation(const std::string& s) {
  if (s == "approximate") return RateEquation::Approximate;
  if (s == "finite" || s == "finite_size") return RateEquation::FiniteSize;
  throw UsageError("unknown equation: " + s);
}

LengthKernel parse_length_kernel(const std::string& s) {
  if (s == "rayleigh") return LengthKernel::Rayleigh;
  if (s == "exact_tree") return LengthKernel::ExactTree;
  throw UsageError("unknown length kernel: " + s);
}

DownlinkRetry parse_retry(const std::string& s) {
  if (s == "consume") return DownlinkRetry::Consume;
  if (s == "resample") return DownlinkRetry::Resample;
  throw UsageError("unknown downlink retry: " + s);
}

ReplicaTemplate make_template(const Config& c) {
  ReplicaTemplate t;
  t.initial.kind = usage_guard([&] { return parse_topology_kind(c.kind); });
  t.initial.node_count = c.n;
  t.initial.mean_degree = c.mean_degree;
  t.initial.disk.radius_km = c.disk_radius;
  t.initial.disk.photon_count = c.photons;
  t.scheme.scheme = usage_guard([&] { return parse_scheme(c.scheme); });
  t.scheme.alpha = c.alpha;
  t.scheme.photon_count = c.photons;
  t.scheme.downlink_retry = parse_retry(c.retry);
  t.steady.burn_in = c.burn_in;
  t.steady.window = c.window;
  t.steady.snapshot_every = c.snapshot_every;
  t.steady.stationarity_tol = c.stationarity_tol;
  t.steady.path_length_pairs = c.pairs;
  t.workers = c.workers;
  if (c.alpha < 0.0) throw UsageError("alpha must be non-negative");
  if (c.replicas < 1) throw UsageError("replicas must be >= 1");
  if (c.n < 2) throw UsageError("n must be >= 2");
  return t;
}

std::size_t resolve_workers(std::size_t flag) { return flag > 0 ? flag : default_workers(); }

// --- output bookkeeping ----------------------------------------------------

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  template <class Writer>
  void write(const std::string& name, Writer&& writer) {
    fs::create_directories(dir_);
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    writer(f);
    files_.push_back(name);
  }
  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

// --- commands --------------------------------------------------------------

int cmd_generate(const Config& c, Outputs& out, json& results) {
  ReplicaTemplate t = make_template(c);
  Rng rng(c.seed);
  const Topology topo = usage_guard([&] { return generate(t.initial, rng); });
  out.write("graph.txt", [&](std::ostream& f) { write_edge_list(f, topo.network); });
  if (!topo.positions.empty()) {
    out.write("positions.csv", [&](std::ostream& f) { write_positions_csv(f, topo.positions, topo.accept_prob); });
  }
  results["nodes"] = topo.network.node_count();
  results["edges"] = topo.network.edge_count();
  results["components"] = topo.network.component_count();
  return kOk;
}

Simulation build_simulation(const Config& c, const ReplicaTemplate& t, std::uint64_t seed) {
  if (c.graph.empty()) return usage_guard([&] { return make_replica(t, c.n, c.alpha, seed); });
  std::ifstream f(c.graph);
  if (!f) throw UsageError("cannot read " + c.graph);
  Network net = read_edge_list(f);
  SchemeConfig cfg = t.scheme;
  if (cfg.scheme == Scheme::Downlink) {
    // acceptance from a positions file next to the graph
    const fs::path pos = fs::path(c.graph).replace_filename("positions.csv");
    std::ifstream pf(pos);
    if (!pf) throw UsageError("downlink on a loaded graph needs " + pos.string());
    cfg.downlink_profile = read_acceptance_csv(pf);
  }
  return usage_guard([&] { return Simulation(std::move(net), cfg, splitmix64(seed)); });
}

int cmd_run(const Config& c, Outputs& out, json& results) {
  const ReplicaTemplate t = make_template(c);
  if (c.steps < 1) throw UsageError("steps must be >= 1");
  if (c.record_every < 1) throw UsageError("record-every must be >= 1");
  const auto runs = run_replicas<std::vector<StepRecord>>(c.replicas, resolve_workers(c.workers), [&](std::size_t r) {
    Simulation sim = build_simulation(c, t, derive_seed(c.seed, r));
    std::vector<StepRecord> recs{sim.snapshot()};
    auto more = sim.run_trajectory(c.steps, c.record_every);
    recs.insert(recs.end(), more.begin(), more.end());
    return recs;
  });
  json per = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    json item;
    item["replica"] = r;
    if (!runs[r].ok()) {
      item["error"] = runs[r].error;
      per.push_back(item);
      continue;
    }
    const auto& recs = *runs[r].value;
    const std::string name = c.replicas == 1 ? "trajectory.csv" : "trajectory_" + std::to_string(r) + ".csv";
    out.write(name, [&](std::ostream& f) { write_trajectory_csv(f, recs); });
    json first_zero = nullptr;
    for (const auto& rec : recs) {
      if (rec.eta == 0.0) {
        first_zero = rec.step;
        break;
      }
    }
    item["final_eta"] = recs.back().eta;
    item["eta_zero_at"] = first_zero;
    item["last_positive_eta_step"] = first_zero.is_null() ? json(nullptr) : json(first_zero.get<std::uint64_t>() - 1);
    per.push_back(item);
  }
  results["replicas"] = per;
  return kOk;
}


int cmd_steady(const Config& c, Outputs& out, json& results) {
  const ReplicaTemplate t = make_template(c);
  const auto runs = run_replicas<SteadyState>(c.replicas, resolve_workers(c.workers), [&](std::size_t r) {
    Simulation sim = build_simulation(c, t, derive_seed(c.seed, r));
    return sim.run_to_steady_state(t.steady);
  });
  std::vector<SizeDistribution> vs;
  std::vector<double> etas;
  PathLengthScaling ell;
  LengthHistogram pl;
  bool converged = true;
  std::size_t failures = 0;
  json errors = json::array();
  for (const auto& run : runs) {
    if (!run.ok()) {
      ++failures;
      errors.push_back(run.error);
      continue;
    }
    const SteadyState& st = *run.value;
    vs.push_back(st.sizes);
    etas.push_back(st.eta_mean);
    ell.merge(st.path_lengths);
    for (const auto& [l, n] : st.removed_lengths.counts) pl.counts[l] += n;
    pl.total += st.removed_lengths.total;
    converged = converged && st.converged;
  }
  if (vs.empty()) throw std::runtime_error("every replica failed");
  const SizeDistribution merged = vs.size() == 1 ? vs.front() : SizeDistribution::from_replicas(vs);
  out.write("vs.csv", [&](std::ostream& f) { write_vs_csv(f, merged); });
  out.write("ell.csv", [&](std::ostream& f) { write_ell_csv(f, ell); });
  if (pl.total > 0) out.write("pl.csv", [&](std::ostream& f) { write_pl_csv(f, pl); });

  const MeanError eta = mean_and_stderr(etas);
  results["eta_mean"] = eta.mean;
  results["eta_stderr"] = vs.size() == 1 && runs.front().ok() ? runs.front().value->eta_stderr : eta.stderr_mean;
  results["mean_removed_length"] = pl.total > 0 ? pl.mean() : 0.0;
  results["converged"] = converged;
  results["failures"] = failures;
  results["errors"] = errors;
  return failures > 0 ? kPartialFailure : kOk;
}

std::vector<GridCell> sweep_grid(const Config& c) {
  std::vector<GridCell> grid;
  for (std::size_t n : c.ns) {
    if (n < 2) throw UsageError("sweep sizes must be >= 2");
    if (!c.alphas.empty()) {
      for (double a : c.alphas) grid.push_back({n, a});
    } else {
      for (double x : c.xs) grid.push_back({n, x * std::sqrt(static_cast<double>(n))});
    }
  }
  for (const auto& g : grid) {
    if (g.alpha < 0.0) throw UsageError("alpha must be non-negative");
  }
  if (grid.empty()) throw UsageError("empty sweep grid");
  return grid;
}

json phase_summary(std::span<const PhasePoint> pts, std::size_t& failures) {
  json cells = json::array();
  for (const auto& p : pts) {
    failures += p.failures;
    if (p.failures > 0 || !p.converged) {
      cells.push_back({{"N", p.n}, {"alpha", p.alpha}, {"failures", p.failures}, {"converged", p.converged}});
    }
  }
  return cells;
}

int cmd_sweep(const Config& c, Outputs& out, json& results) {
  ReplicaTemplate t = make_template(c);
  t.workers = resolve_workers(c.workers);
  const auto grid = sweep_grid(c);
  const auto pts = sweep_phase_diagram(grid, t, c.replicas, c.seed);
  out.write("phase.csv", [&](std::ostream& f) { write_phase_csv(f, pts); });
  std::size_t failures = 0;
  results["flagged_cells"] = phase_summary(pts, failures);
  results["failures"] = failures;
  return failures > 0 ? kPartialFailure : kOk;
}

int cmd_threshold(const Config& c, Outputs& out, json& results) {
  ReplicaTemplate t = make_template(c);
  t.workers = resolve_workers(c.workers);
  if (!(c.eta_target > 0.0 && c.eta_target < 1.0)) throw UsageError("eta-target must be in (0,1)");
  const ThresholdEstimate est = estimate_threshold(c.n, t, c.replicas, c.seed, c.eta_target);
  out.write("threshold_evaluations.csv", [&](std::ostream& f) { write_phase_csv(f, est.evaluations); });
  const double root_n = std::sqrt(static_cast<double>(c.n));
  std::size_t failures = 0;
  phase_summary(est.evaluations, failures);
  json th;
  th["N"] = c.n;
  th["alpha_star"] = est.alpha_star;
  th["alpha_star_stderr"] = est.stderr_alpha;
  th["alpha_star_over_sqrt_n"] = est.alpha_star / root_n;
  th["bracket"] = {est.lo, est.hi};
  th["bracket_ok"] = est.bracket_ok;

  if (c.n_large > 0) {
    const CrossingEstimate cross = estimate_crossing(c.n, c.n_large, c.xs, t, c.replicas, derive_seed(c.seed, 1));
    std::vector<PhasePoint> all(cross.small);
    all.insert(all.end(), cross.large.begin(), cross.large.end());
    phase_summary(all, failures);
    out.write("phase.csv", [&](std::ostream& f) { write_phase_csv(f, all); });
    th["crossing"] = {{"N_small", c.n},
                      {"N_large", c.n_large},
                      {"found", cross.found},
                      {"x_star", cross.x_star},
                      {"x_star_stderr", cross.stderr_x}};
  }
  out.write("threshold.json", [&](std::ostream& f) { f << th.dump(2) << '\n'; });
  results["threshold"] = th;
  results["failures"] = failures;
  return failures > 0 ? kPartialFailure : kOk;
}

int cmd_solve(const Config& c, Outputs& out, json& results) {
  SolverOptions o;
  o.alpha = c.alpha;
  o.s_max = c.smax;
  o.tol = c.tol;
  o.damping = c.damping;
  o.max_iterations = c.max_iter;
  o.kernel = parse_kernel(c.kernel);
  o.equation = parse_equation(c.equation);
  o.node_count = c.node_count;
  if (!(c.alpha > 0.0)) throw UsageError("solve needs alpha > 0");
  const SolverState st = usage_guard([&] { return solve_steady_state(o); });
  out.write("vs_theory.csv", [&](std::ostream& f) { write_vs_theory_csv(f, st); });
  results["converged"] = st.converged;
  results["residual"] = st.residual;
  results["iterations"] = st.iterations;
  results["clipped"] = st.clipped;
  results["kernel"] = to_string(st.kernel);
  results["equation"] = to_string(st.equation);
  results["mean_size"] = st.mean_size();
  return st.converged ? kOk : kNoConvergence;
}

std::vector<double> read_vs_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::string line;
  std::getline(f, line);
  std::vector<double> v(1, 0.0);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string s_tok, v_tok;
    std::getline(ss, s_tok, ',');
    std::getline(ss, v_tok, ',');
    const std::size_t s = std::stoul(s_tok);
    if (s == 0) throw UsageError("v(s) CSV has s = 0");
    if (v.size() <= s) v.resize(s + 1, 0.0);
    v[s] = std::stod(v_tok);
  }
  return v;
}

int cmd_predict(const Config& c, Outputs& out, json& results) {
  const MomentReport rep = usage_guard([&] { return critical_alpha_closed_form(c.tau, c.smax); });
  out.write("moments.json", [&](std::ostream& f) { f << moment_report_json(rep); });
  results["alpha_star_asym_over_sqrt_smax"] = rep.alpha_star_asym / std::sqrt(rep.s_max);
  results["balance_to_moment_ratio"] = balance_to_moment_ratio();
  if (!c.vs_file.empty()) {
    const auto v = read_vs_csv(c.vs_file);
    const auto p = usage_guard([&] { return predict_removed_length_distribution(v, parse_length_kernel(c.length_kernel)); });
    out.write("pl_theory.csv", [&](std::ostream& f) { write_predictor_csv(f, p); });
    double mean = 0.0;
    for (std::size_t l = 1; l < p.size(); ++l) mean += static_cast<double>(l) * p[l];
    results["predicted_mean_length"] = mean;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path percolation simulator and Smoluchowski solver"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags win");
  Config c;
  add_options(app, c);

  struct Cmd {
    const char* name;
    const char* help;
    int (*fn)(const Config&, Outputs&, json&);
  };
  const Cmd cmds[] = {
      {"generate", "Write an initial topology as an edge list", cmd_generate},
      {"run", "Trajectory CSV from one or more replicas", cmd_run},
      {"steady", "Steady-state v(s), ell(s) and p(l)", cmd_steady},
      {"sweep", "Phase diagram over (N, alpha)", cmd_sweep},
      {"threshold", "alpha* by bisection, plus the two-size crossing", cmd_threshold},
      {"solve", "Steady state of the rate equation", cmd_solve},
      {"predict", "Closed-form alpha* report and p(l) prediction", cmd_predict},
  };
  std::vector<CLI::App*> subs;
  for (const auto& cmd : cmds) subs.push_back(app.add_subcommand(cmd.name, cmd.help)->fallthrough());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const Cmd& cmd = cmds[which];

  const auto t0 = std::chrono::steady_clock::now();
  Outputs out{fs::path(c.out)};
  json results;
  int code = kOk;
  try {
    code = cmd.fn(c, out, results);
  } catch (const UsageError& e) {
    std::cerr << "pathperc " << cmd.name << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pathperc " << cmd.name << ": " << e.what() << '\n';
    code = kPartialFailure;
    results["error"] = e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Replay with: pathperc <command> --config <out>/config.ini
  const std::string config_text = app.config_to_str(true, false);
  out.write("config.ini", [&](std::ostream& f) { f << config_text; });
  json manifest;
  manifest["command"] = cmd.name;
  manifest["config_file"] = "config.ini";
  manifest["config"] = config_text;
  manifest["rng"] = kRngName;
  manifest["seed"] = c.seed;
  manifest["workers"] = resolve_workers(c.workers);
  manifest["git_hash"] = PATHPERC_GIT_HASH;
  manifest["wall_time_s"] = wall;
  manifest["exit_code"] = code;
  manifest["outputs"] = out.files();
  manifest["results"] = results;
  out.write("manifest.json", [&](std::ostream& f) { f << manifest.dump(2) << '\n'; });
  if (code == kNoConvergence) std::cerr << "pathperc " << cmd.name << ": did not converge\n";
  if (code == kPartialFailure) std::cerr << "pathperc " << cmd.name << ": some replicas failed, see manifest\n";
  return code;
}
