#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/experiments.hpp"
#include "qaoa/report_io.hpp"

namespace qaoa::cli {

namespace {

using io::Json;

enum class Format { Json, Csv };

struct Common {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "json";
  int max_qubits = SimLimits{}.max_qubits;
  int max_bruteforce = GraphLimits{}.max_bruteforce_vertices;
  int max_attempts = GraphLimits{}.max_generation_attempts;
  int max_tries = ExperimentLimits{}.max_maxcut_tries;

  ExperimentLimits limits() const {
    ExperimentLimits l;
    l.sim.max_qubits = max_qubits;
    l.graph.max_bruteforce_vertices = max_bruteforce;
    l.graph.max_generation_attempts = max_attempts;
    l.max_maxcut_tries = max_tries;
    return l;
  }
};

struct Options {
  Common common;
  // graph inputs / generation
  std::string graph_path;
  std::string angles_path;
  int n = 20;
  int d = 3;
  double er_p = -1.0;
  bool largest = false;
  bool permute = false;
  int maxcut = -1;
  // neighborhood
  int edge = 0;
  int radius = 1;
  // simulation / optimization
  int p = 1;
  int shots = 1000;
  int restarts = 20;
  std::string direction = "maximize";
  double tol = 1e-6;
  int max_iters = 3000;
  int resolution = 16;
  std::string angles_out;
  // experiments
  std::vector<int> sizes{10, 20};
  std::vector<int> p_list{2, 3, 4, 5, 6, 7};
  std::vector<std::string> regimes;
  int instances = 25;
  int train_n = 10;
  int refine_iters = 200;
  int evals = 10;
  int n_train = 10;
  int n_eval = 24;
  // Experiment subcommands default to the library configs.
  int exp_p = 8;
  int exp_maxcut = ConcentrationConfig{}.target_cmax.value_or(-1);
  int regime_restarts = RegimeOptions{}.restarts;
  int med_train_n = RegimeOptions{}.med_train_n;
  int med_restarts = RegimeOptions{}.med_restarts;
  int corr_instances = CorrelationConfig{}.instances;
  int leap_restarts = LeapfrogOptions{}.restarts;
  int xfer_restarts = TransferConfig{}.restarts;
  int xfer_evals = TransferConfig{}.eval_count;
  // bound
  double t = 0.0;
  long long L = 1;
  double c = 1.0;
};

void add_common(CLI::App* sub, Common& c, bool with_format) {
  sub->add_option("--seed", c.seed, "Root seed; all random streams derive from it");
  sub->add_option("--threads", c.threads, "Worker threads (0 = OpenMP default); never changes results");
  sub->add_option("--out", c.out, "Output file (default: stdout)");
  if (with_format)
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--max-qubits", c.max_qubits, "Statevector size cap")->check(CLI::Range(1, 34));
  sub->add_option("--max-bruteforce", c.max_bruteforce, "Brute-force MaxCut vertex cap")->check(CLI::Range(1, 63));
  sub->add_option("--max-attempts", c.max_attempts, "Pairing-model restarts per regular graph")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-tries", c.max_tries, "Graphs tried per MaxCut-filtered instance")
      ->check(CLI::PositiveNumber);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Graph load_graph(const std::string& path, const Common& c) {
  if (path.empty()) throw ConfigError("--graph is required");
  Graph g = parse_edge_list(slurp(path));
  if (g.num_vertices() > c.max_qubits)
    throw ResourceError("graph has " + std::to_string(g.num_vertices()) + " vertices; cap is " +
                        std::to_string(c.max_qubits));
  return g;
}

void check_size(int n, int cap, const char* what) {
  if (n > cap)
    throw ResourceError(std::string(what) + " = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

// Every flag of the subcommand with its effective value, except --threads
// (which must not influence output) and --config.
Json config_of(const CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "threads" || name == "config") continue;
    if (opt->count() > 0) {
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      j[name] = joined;
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + c.out + "'");
  f << text;
}

std::string document(const std::string& command, const CLI::App* sub, Json result) {
  Json doc{{"command", command}, {"config", config_of(sub)}, {"result", std::move(result)}};
  return doc.dump(2) + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QAOA MaxCut simulation and fixed-angle concentration experiments"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML/INI file with flag values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  Options o;
  Common& c = o.common;

  auto* gen = app.add_subcommand("gen-graph", "Generate a random graph as an edge list");
  add_common(gen, c, false);
  gen->add_option("--n", o.n, "Vertex count")->check(CLI::NonNegativeNumber);
  gen->add_option("--d", o.d, "Degree of the regular graph")->check(CLI::NonNegativeNumber);
  gen->add_option("--er-p", o.er_p, "Erdos-Renyi edge probability (negative: regular graph)");
  gen->add_flag("--largest-component", o.largest, "Keep only the largest connected component");
  gen->add_option("--maxcut", o.maxcut, "Required MaxCut value (negative: no filter)");
  gen->add_flag("--permute-labels", o.permute, "Randomly relabel edges after generation");

  auto* maxcut = app.add_subcommand("maxcut", "Brute-force MaxCut of a graph");
  add_common(maxcut, c, false);
  maxcut->add_option("--graph", o.graph_path, "Edge-list file")->required();

  auto* census = app.add_subcommand("census", "p=1 edge-type census of a 3-regular graph");
  add_common(census, c, false);
  census->add_option("--graph", o.graph_path, "Edge-list file")->required();

  auto* nbhd = app.add_subcommand("neighborhood", "Subgraph within a radius of an edge");
  add_common(nbhd, c, false);
  nbhd->add_option("--graph", o.graph_path, "Edge-list file")->required();
  nbhd->add_option("--edge", o.edge, "Edge label (0-based)");
  nbhd->add_option("--radius", o.radius, "Graph distance from either endpoint")->check(CLI::NonNegativeNumber);

  auto* eval = app.add_subcommand("evaluate", "Objective and per-edge expectations at fixed angles");
  add_common(eval, c, false);
  eval->add_option("--graph", o.graph_path, "Edge-list file")->required();
  eval->add_option("--angles", o.angles_path, "Angle file")->required();

  auto* sample = app.add_subcommand("sample", "Sample bit strings from the QAOA state");
  add_common(sample, c, false);
  sample->add_option("--graph", o.graph_path, "Edge-list file")->required();
  sample->add_option("--angles", o.angles_path, "Angle file")->required();
  sample->add_option("--shots", o.shots, "Number of samples")->check(CLI::PositiveNumber);

  auto* opt = app.add_subcommand("optimize", "Multistart Nelder-Mead over the 2p angles");
  add_common(opt, c, false);
  opt->add_option("--graph", o.graph_path, "Edge-list file")->required();
  opt->add_option("--p", o.p, "Depth")->check(CLI::PositiveNumber);
  opt->add_option("--restarts", o.restarts, "Random restarts")->check(CLI::PositiveNumber);
  opt->add_option("--direction", o.direction, "maximize or minimize")
      ->check(CLI::IsMember({"maximize", "minimize"}));
  opt->add_option("--tol", o.tol, "Simplex value-spread tolerance")->check(CLI::PositiveNumber);
  opt->add_option("--max-iters", o.max_iters, "Iterations per local search")->check(CLI::PositiveNumber);
  opt->add_option("--angles-out", o.angles_out, "Also write the best angles to this file");

  auto* land = app.add_subcommand("landscape", "p=1 objective on a (gamma, beta) grid");
  add_common(land, c, true);
  land->add_option("--graph", o.graph_path, "Edge-list file")->required();
  land->add_option("--resolution", o.resolution, "Grid points per axis")->check(CLI::Range(2, 4096));

  auto* leap = app.add_subcommand("leapfrog", "Optimize small, transfer and refine at larger sizes");
  add_common(leap, c, true);
  leap->add_option("--sizes", o.sizes, "Strictly increasing vertex counts")->delimiter(',');
  leap->add_option("--p", o.exp_p, "Depth")->check(CLI::PositiveNumber);
  leap->add_option("--restarts", o.leap_restarts, "Restarts at the first size")->check(CLI::PositiveNumber);
  leap->add_option("--refine-iters", o.refine_iters, "Local-search iterations per later stage")
      ->check(CLI::PositiveNumber);
  leap->add_option("--evals", o.evals, "Fresh graphs scored per stage")->check(CLI::NonNegativeNumber);

  auto* conc = app.add_subcommand("concentration", "Objective mean/std across random instances at fixed angles");
  add_common(conc, c, true);
  conc->add_option("--n", o.n, "Vertices per instance")->check(CLI::PositiveNumber);
  conc->add_option("--p-list", o.p_list, "Depths")->delimiter(',');
  conc->add_option("--regimes", o.regimes, "Angle regimes (default Low,Random,High)")->delimiter(',');
  conc->add_option("--instances", o.instances, "Instances per cell")->check(CLI::PositiveNumber);
  conc->add_option("--maxcut", o.exp_maxcut, "Required MaxCut value (negative: no filter)");
  conc->add_option("--train-n", o.train_n, "Size of the instance the regime angles are found on")
      ->check(CLI::PositiveNumber);
  conc->add_option("--restarts", o.regime_restarts, "Restarts per regime search")->check(CLI::PositiveNumber);

  auto* corr = app.add_subcommand("correlation", "Clause correlation estimate per regime");
  add_common(corr, c, true);
  corr->add_option("--n", o.n, "Vertices per instance")->check(CLI::PositiveNumber);
  corr->add_option("--p", o.exp_p, "Depth")->check(CLI::PositiveNumber);
  corr->add_option("--regimes", o.regimes, "Angle regimes (default all five)")->delimiter(',');
  corr->add_option("--instances", o.corr_instances, "Instances per regime")->check(CLI::Range(2, 1000000));
  corr->add_option("--maxcut", o.exp_maxcut, "Required MaxCut value (negative: no filter)");
  corr->add_option("--train-n", o.train_n, "Size of the instance the regime angles are found on")
      ->check(CLI::PositiveNumber);
  corr->add_option("--restarts", o.regime_restarts, "Restarts per regime search")->check(CLI::PositiveNumber);
  corr->add_option("--med-train-n", o.med_train_n, "Training size for the Med regimes (0: same as --n)")
      ->check(CLI::NonNegativeNumber);
  corr->add_option("--med-restarts", o.med_restarts, "Restarts per Med regime search")->check(CLI::PositiveNumber);

  auto* xfer = app.add_subcommand("transfer", "Optimize at one size, evaluate frozen angles at another");
  add_common(xfer, c, true);
  xfer->add_option("--n-train", o.n_train, "Training instance size")->check(CLI::PositiveNumber);
  xfer->add_option("--n-eval", o.n_eval, "Evaluation instance size")->check(CLI::PositiveNumber);
  xfer->add_option("--p", o.exp_p, "Depth")->check(CLI::PositiveNumber);
  xfer->add_option("--restarts", o.xfer_restarts, "Training restarts")->check(CLI::PositiveNumber);
  xfer->add_option("--evals", o.xfer_evals, "Evaluation instances")->check(CLI::PositiveNumber);

  auto* bound = app.add_subcommand("bound", "McDiarmid tail bound exp(-2t^2/(L c^2))");
  add_common(bound, c, false);
  bound->add_option("--t", o.t, "Deviation")->required();
  bound->add_option("--L", o.L, "Number of independent bits")->required();
  bound->add_option("--c", o.c, "Per-bit sensitivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? 0 : kExitConfig;
  }

  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);
    const auto limits = c.limits();
    const auto local = LocalSearchOptions{o.tol, o.max_iters, 0.1, std::nullopt};
    auto regimes = [&](std::vector<Regime> fallback) {
      if (o.regimes.empty()) return fallback;
      std::vector<Regime> r;
      for (const auto& s : o.regimes) r.push_back(parse_regime(s));
      return r;
    };
    const std::optional<int> target = o.maxcut >= 0 ? std::optional<int>(o.maxcut) : std::nullopt;
    const std::optional<int> exp_target = o.exp_maxcut >= 0 ? std::optional<int>(o.exp_maxcut) : std::nullopt;
    const Format format = c.format == "csv" ? Format::Csv : Format::Json;
    std::string summary;

    if (gen->parsed()) {
      if (exp_target) check_size(o.n, c.max_bruteforce, "--n");
      Rng rng = substream(c.seed, "gen-graph");
      Graph g;
      if (o.er_p >= 0.0) {
        if (target) throw ConfigError("--maxcut applies to regular graphs only");
        g = gen_erdos_renyi(o.n, o.er_p, rng);
      } else if (target) {
        g = gen_regular_with_maxcut(o.n, o.d, *target, rng, c.max_tries, limits.graph);
      } else {
        g = gen_regular(o.n, o.d, rng, limits.graph);
      }
      if (o.largest) g = largest_component(g);
      if (o.permute) g = permute_edge_labels(g, rng);
      emit(to_edge_list(g), c, out);
      if (!c.out.empty()) {
        std::ofstream meta(c.out + ".meta.json", std::ios::binary);
        meta << document("gen-graph", gen, Json{{"n", g.num_vertices()}, {"m", g.num_edges()}});
      }
      summary = "gen-graph: n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges());
    } else if (maxcut->parsed()) {
      const Graph g = load_graph(o.graph_path, c);
      const auto r = brute_force_maxcut(g, limits.graph);
      std::string bits;
      for (int v = 0; v < g.num_vertices(); ++v) bits += ((r.witness >> v) & 1U) ? '1' : '0';
      emit(document("maxcut", maxcut, Json{{"cmax", r.cmax}, {"witness", bits}}), c, out);
      summary = "maxcut: cmax=" + std::to_string(r.cmax);
    } else if (census->parsed()) {
      const Graph g = parse_edge_list(slurp(o.graph_path));
      const auto r = census_p1(g);
      emit(document("census", census, io::to_json(r)), c, out);
      summary = "census: w=(" + std::to_string(r.w_shared2) + "," + std::to_string(r.w_shared1) + "," +
                std::to_string(r.w_shared0) + ")";
    } else if (nbhd->parsed()) {
      const Graph g = parse_edge_list(slurp(o.graph_path));
      const auto r = neighborhood(g, o.edge, o.radius);
      emit(document("neighborhood", nbhd,
                    Json{{"n", r.subgraph.num_vertices()},
                         {"m", r.subgraph.num_edges()},
                         {"edge_list", to_edge_list(r.subgraph)},
                         {"original_label", r.original_label}}),
           c, out);
      summary = "neighborhood: " + std::to_string(r.subgraph.num_vertices()) + " vertices";
    } else if (eval->parsed()) {
      const Graph g = load_graph(o.graph_path, c);
      const auto angles = parse_angle_json(slurp(o.angles_path));
      const QaoaInstance instance(g, limits.sim);
      const double f = instance.objective(angles);
      const auto edges = instance.edge_expectations(angles);
      double sum = 0.0;
      for (double e : edges) sum += e;
      emit(document("evaluate", eval,
                    Json{{"objective", f}, {"edge_sum", sum}, {"edge_expectations", edges},
                         {"angles", io::to_json(angles)}}),
           c, out);
      summary = "evaluate: F=" + std::to_string(f);
    } else if (sample->parsed()) {
      const Graph g = load_graph(o.graph_path, c);
      const auto angles = parse_angle_json(slurp(o.angles_path));
      const QaoaInstance instance(g, limits.sim);
      const auto state = instance.prepare(angles);
      Rng rng = substream(c.seed, "sample");
      const auto shots = sample_bitstrings(state, rng, o.shots);
      double mean = 0.0;
      int best = -1;
      std::uint64_t best_z = 0;
      for (auto z : shots) {
        const int cost = instance.table()[z];
        mean += cost;
        if (cost > best) {
          best = cost;
          best_z = z;
        }
      }
      mean /= static_cast<double>(shots.size());
      emit(document("sample", sample,
                    Json{{"objective", objective_from_state(state, instance.table())},
                         {"sample_mean_cost", mean},
                         {"best_cost", best},
                         {"best_string", best_z},
                         {"samples", shots}}),
           c, out);
      summary = "sample: best cost " + std::to_string(best);
    } else if (opt->parsed()) {
      const Graph g = load_graph(o.graph_path, c);
      const QaoaInstance instance(g, limits.sim);
      const auto r = multistart(instance, o.p, c.seed,
                                MultistartOptions{o.restarts, parse_direction(o.direction), local});
      if (!o.angles_out.empty()) {
        std::ofstream f(o.angles_out, std::ios::binary);
        f << to_angle_json(r.best_angles);
      }
      emit(document("optimize", opt, io::to_json(r)), c, out);
      summary = "optimize: best=" + std::to_string(r.best_value);
    } else if (land->parsed()) {
      const Graph g = load_graph(o.graph_path, c);
      const auto grid = landscape_grid(g, o.resolution, limits.sim);
      emit(format == Format::Csv
               ? io::landscape_csv(grid, o.resolution)
               : document("landscape", land, Json{{"resolution", o.resolution}, {"grid", grid}}),
           c, out);
      summary = "landscape: " + std::to_string(grid.size()) + " points";
    } else if (leap->parsed()) {
      for (int n : o.sizes) check_size(n, std::min(c.max_qubits, c.max_bruteforce), "--sizes entry");
      LeapfrogOptions lo;
      lo.p = o.exp_p;
      lo.restarts = o.leap_restarts;
      lo.refine.max_iters = o.refine_iters;
      lo.eval_count = o.evals;
      lo.graph_limits = limits.graph;
      lo.sim_limits = limits.sim;
      const auto stages = leapfrog(o.sizes, c.seed, lo);
      emit(format == Format::Csv ? io::to_csv(stages) : document("leapfrog", leap, io::to_json(stages)), c, out);
      summary = "leapfrog: final mean ratio " + std::to_string(stages.back().mean_ratio);
    } else if (conc->parsed()) {
      check_size(o.n, c.max_qubits, "--n");
      check_size(o.train_n, c.max_qubits, "--train-n");
      if (exp_target) check_size(o.n, c.max_bruteforce, "--n");
      ConcentrationConfig cfg;
      cfg.p_list = o.p_list;
      cfg.regimes = regimes({Regime::Low, Regime::Random, Regime::High});
      cfg.instances_per_cell = o.instances;
      cfg.n = o.n;
      cfg.target_cmax = exp_target;
      cfg.seed = c.seed;
      cfg.regime.train_n = o.train_n;
      cfg.regime.restarts = o.regime_restarts;
      cfg.limits = limits;
      const auto r = concentration_table(cfg);
      emit(format == Format::Csv ? io::to_csv(r) : document("concentration", conc, io::to_json(r)), c, out);
      if (r.partial) {
        err << "concentration: partial results: " << r.error << "\n";
        return kExitGeneration;
      }
      summary = "concentration: " + std::to_string(r.rows.size()) + " cells";
    } else if (corr->parsed()) {
      check_size(o.n, c.max_qubits, "--n");
      check_size(o.train_n, c.max_qubits, "--train-n");
      check_size(o.med_train_n, c.max_qubits, "--med-train-n");
      if (exp_target) check_size(o.n, c.max_bruteforce, "--n");
      CorrelationConfig cfg;
      cfg.n = o.n;
      cfg.p = o.exp_p;
      cfg.instances = o.corr_instances;
      cfg.target_cmax = exp_target;
      cfg.regimes = regimes(all_regimes());
      cfg.seed = c.seed;
      cfg.regime.train_n = o.train_n;
      cfg.regime.restarts = o.regime_restarts;
      cfg.regime.med_train_n = o.med_train_n;
      cfg.regime.med_restarts = o.med_restarts;
      cfg.limits = limits;
      const auto r = correlation_experiment(cfg);
      emit(format == Format::Csv ? io::to_csv(r) : document("correlation", corr, io::to_json(r)), c, out);
      summary = "correlation: " + std::to_string(r.reports.size()) + " regimes";
    } else if (xfer->parsed()) {
      const int cap = std::min(c.max_qubits, c.max_bruteforce);
      check_size(o.n_train, cap, "--n-train");
      check_size(o.n_eval, cap, "--n-eval");
      TransferConfig cfg;
      cfg.n_train = o.n_train;
      cfg.n_eval = o.n_eval;
      cfg.p = o.exp_p;
      cfg.restarts = o.xfer_restarts;
      cfg.eval_count = o.xfer_evals;
      cfg.seed = c.seed;
      cfg.limits = limits;
      const auto r = transfer_experiment(cfg);
      emit(format == Format::Csv ? io::to_csv(r) : document("transfer", xfer, io::to_json(r)), c, out);
      summary = "transfer: train ratio " + std::to_string(r.train_ratio) + ", eval mean ratio " +
                std::to_string(r.mean_ratio) + " (std " + std::to_string(r.std_ratio) + ")";
    } else if (bound->parsed()) {
      const double b = mcdiarmid_bound(o.t, o.L, o.c);
      emit(document("bound", bound, Json{{"bound", b}}), c, out);
      summary = "bound: " + std::to_string(b);
    }
    err << summary << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenerationError& e) {
    err << "generation failure: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace qaoa::cli
