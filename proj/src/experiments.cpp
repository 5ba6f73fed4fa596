#include "qaoa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qaoa/errors.hpp"

namespace qaoa {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Low: return "Low";
    case Regime::MedLow: return "Med Low";
    case Regime::Random: return "Random";
    case Regime::MedHigh: return "Med High";
    case Regime::High: return "High";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  std::string key;
  for (char c : s)
    if (c != ' ' && c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "low") return Regime::Low;
  if (key == "medlow") return Regime::MedLow;
  if (key == "random") return Regime::Random;
  if (key == "medhigh") return Regime::MedHigh;
  if (key == "high") return Regime::High;
  throw ConfigError("unknown regime '" + s + "'");
}

std::vector<Regime> all_regimes() {
  return {Regime::Low, Regime::MedLow, Regime::Random, Regime::MedHigh, Regime::High};
}

Graph toss_instance(int n, int degree, std::optional<int> target_cmax, std::uint64_t seed,
                    const ExperimentLimits& limits) {
  Rng rng(seed);
  if (target_cmax)
    return gen_regular_with_maxcut(n, degree, *target_cmax, rng, limits.max_maxcut_tries, limits.graph);
  return gen_regular(n, degree, rng, limits.graph);
}

RegimeAngles find_regime_angles(Regime regime, int p, int degree, std::optional<int> target_cmax,
                                int eval_n, std::uint64_t seed, const RegimeOptions& options,
                                const ExperimentLimits& limits) {
  RegimeAngles out;
  out.regime = regime;
  const auto index = static_cast<std::uint64_t>(p);
  if (regime == Regime::Random) {
    out.search_seed = derive_seed(seed, "regime/random", index);
    Rng rng(out.search_seed);
    out.angles = random_angles(p, rng);
    return out;
  }

  const bool med = regime == Regime::MedLow || regime == Regime::MedHigh;
  out.train_n = med ? (options.med_train_n > 0 ? options.med_train_n : eval_n) : options.train_n;
  out.train_seed = derive_seed(seed, med ? "regime/train-med" : "regime/train", index);
  out.search_seed = derive_seed(seed, "regime/search/" + to_string(regime), index);
  const auto filter = out.train_n == eval_n ? target_cmax : std::nullopt;
  const QaoaInstance train(toss_instance(out.train_n, degree, filter, out.train_seed, limits), limits.sim);
  const double m = train.graph().num_edges();

  MultistartOptions ms{med ? options.med_restarts : options.restarts, Direction::Maximize, options.local};
  double band_lo = 0.0, band_hi = 0.0;
  switch (regime) {
    case Regime::Low: ms.direction = Direction::Minimize; break;
    case Regime::High: break;
    case Regime::MedLow:
      ms.direction = Direction::Minimize;
      band_lo = options.med_low_band_lo * m;
      band_hi = options.med_low_band_hi * m;
      ms.local.stop_at = band_hi;
      break;
    case Regime::MedHigh:
      band_lo = options.med_high_band_lo * m;
      band_hi = options.med_high_band_hi * m;
      ms.local.stop_at = band_lo;
      break;
    case Regime::Random: break;
  }
  const auto result = multistart(train, p, out.search_seed, ms);

  if (regime == Regime::Low || regime == Regime::High) {
    out.angles = result.best_angles;
    out.train_value = result.best_value;
    return out;
  }
  // Early-stopped searches: keep the restart closest to the band center,
  // preferring ones that landed inside the band.
  const double center = 0.5 * (band_lo + band_hi);
  const RestartRecord* pick = nullptr;
  auto score = [&](const RestartRecord& r) {
    const bool inside = r.value >= band_lo && r.value <= band_hi;
    return std::pair{inside ? 0 : 1, std::abs(r.value - center)};
  };
  for (const auto& r : result.restart_trace)
    if (pick == nullptr || score(r) < score(*pick)) pick = &r;
  out.angles = pick->converged;
  out.train_value = pick->value;
  return out;
}

SampleStats sample_stats(std::span<const double> xs) {
  SampleStats s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

namespace {

// Tosses every instance in parallel; each has its own seed so the result
// does not depend on scheduling.
std::vector<Graph> toss_instances(int n, int degree, std::optional<int> target_cmax,
                                  std::span<const std::uint64_t> seeds, const ExperimentLimits& limits) {
  std::vector<Graph> graphs(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::vector<std::map<int, int>> histograms(seeds.size());
  const auto count = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      graphs[i] = toss_instance(n, degree, target_cmax, seeds[i], limits);
    } catch (const GenerationError& e) {
      errors[i] = e.what();
      histograms[i] = e.histogram();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) throw GenerationError(errors[i], histograms[i]);
  return graphs;
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) seeds[static_cast<std::size_t>(k)] = derive_seed(base, "graph", static_cast<std::uint64_t>(k));
  return seeds;
}

}  // namespace

ConcentrationReport concentration_table(const ConcentrationConfig& config) {
  if (config.instances_per_cell < 1) throw ParameterError("concentration_table: need at least one instance per cell");
  if (config.n > config.limits.sim.max_qubits) throw ResourceError("concentration_table: n exceeds the simulator cap");
  ConcentrationReport report;
  report.config = config;
  try {
    for (int p : config.p_list) {
      std::vector<ConcentrationRow> rows;
      for (Regime regime : config.regimes) {
        ConcentrationRow row;
        row.p = p;
        row.source = find_regime_angles(regime, p, config.degree, config.target_cmax, config.n, config.seed,
                                        config.regime, config.limits);
        rows.push_back(std::move(row));
      }
      auto seeds = seed_list(derive_seed(config.seed, "concentration/instances", static_cast<std::uint64_t>(p)),
                             config.instances_per_cell);
      report.instance_seeds[p] = seeds;
      const auto graphs = toss_instances(config.n, config.degree, config.target_cmax, seeds, config.limits);
      for (const auto& g : graphs) {
        const QaoaInstance instance(g, config.limits.sim);
        for (auto& row : rows) row.values.push_back(instance.objective(row.source.angles));
      }
      for (auto& row : rows) {
        const auto stats = sample_stats(row.values);
        row.count = static_cast<int>(row.values.size());
        row.mean = stats.mean;
        row.std = stats.std;
        row.single_sample = row.count == 1;
        report.rows.push_back(std::move(row));
      }
    }
  } catch (const GenerationError& e) {
    report.partial = true;
    report.error = e.what();
  }
  return report;
}

EdgeExpectationMatrix::EdgeExpectationMatrix(int m, int n_instances)
    : m_(m), n_(n_instances), data_(static_cast<std::size_t>(m) * static_cast<std::size_t>(n_instances), 0.0) {
  if (m < 0 || n_instances < 0) throw ParameterError("expectation matrix: negative dimension");
}

double EdgeExpectationMatrix::column_sum(int instance) const {
  double s = 0.0;
  for (int e = 0; e < m_; ++e) s += at(e, instance);
  return s;
}

EdgeExpectationMatrix build_expectation_matrix(std::span<const Graph> graphs, const AngleSchedule& angles,
                                               std::uint64_t permutation_seed, const SimLimits& limits) {
  if (graphs.empty()) throw ParameterError("build_expectation_matrix: no instances");
  const int m = graphs.front().num_edges();
  for (const auto& g : graphs)
    if (g.num_edges() != m) throw ParameterError("build_expectation_matrix: instances differ in edge count");
  EdgeExpectationMatrix mat(m, static_cast<int>(graphs.size()));
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    Rng rng = substream(permutation_seed, "permutation", k);
    const auto values = edge_expectations(permute_edge_labels(graphs[k], rng), angles, limits);
    for (int e = 0; e < m; ++e) mat.at(e, static_cast<int>(k)) = values[static_cast<std::size_t>(e)];
  }
  return mat;
}

CorrelationStats correlation_stats(const EdgeExpectationMatrix& mat) {
  const int m = mat.num_edges();
  const int n = mat.num_instances();
  if (m < 2 || n < 2) throw ParameterError("correlation_stats: need m >= 2 and N >= 2");
  CorrelationStats s;
  s.m = m;
  s.n_instances = n;
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) f[static_cast<std::size_t>(k)] = mat.column_sum(k);
  s.mean_f = sample_stats(f).mean;
  double ss_f = 0.0;
  for (double x : f) ss_f += (x - s.mean_f) * (x - s.mean_f);
  s.var_f = ss_f / (n - 1);
  s.mean_c = s.mean_f / m;
  double ss_c = 0.0;
  for (int e = 0; e < m; ++e)
    for (int k = 0; k < n; ++k) ss_c += (mat.at(e, k) - s.mean_c) * (mat.at(e, k) - s.mean_c);
  s.var_c1 = ss_c / (static_cast<double>(m) * n - 1.0);
  if (!(s.var_c1 > 0.0)) throw DegenerateVarianceError("correlation_stats: per-clause variance is zero");
  s.corr = (s.var_f / (m * s.var_c1) - 1.0) / (m - 1);
  return s;
}

CorrelationExperiment correlation_experiment(const CorrelationConfig& config) {
  if (config.n > config.limits.sim.max_qubits) throw ResourceError("correlation_experiment: n exceeds the simulator cap");
  CorrelationExperiment out;
  out.config = config;
  for (Regime regime : config.regimes) {
    const auto tag = static_cast<std::uint64_t>(regime);
    CorrelationReport report;
    report.source = find_regime_angles(regime, config.p, config.degree, config.target_cmax, config.n, config.seed,
                                       config.regime, config.limits);
    report.instance_seeds = seed_list(derive_seed(config.seed, "correlation/instances", tag), config.instances);
    report.permutation_seed = derive_seed(config.seed, "correlation/permutation", tag);
    const auto graphs = toss_instances(config.n, config.degree, config.target_cmax, report.instance_seeds, config.limits);
    const auto mat = build_expectation_matrix(graphs, report.source.angles, report.permutation_seed, config.limits.sim);
    for (int k = 0; k < mat.num_instances(); ++k) report.objectives.push_back(mat.column_sum(k));
    report.stats = correlation_stats(mat);
    out.reports.push_back(std::move(report));
  }
  return out;
}

double evaluate_ratio(const Graph& g, const AngleSchedule& angles, const ExperimentLimits& limits) {
  const int cmax = brute_force_maxcut(g, limits.graph).cmax;
  return approximation_ratio(objective(g, angles, limits.sim), cmax);
}

TransferReport transfer_experiment(const TransferConfig& config) {
  const int cap = config.limits.sim.max_qubits;
  if (config.n_train > cap || config.n_eval > cap)
    throw ResourceError("transfer_experiment: instance size exceeds the simulator cap");
  TransferReport r;
  r.config = config;
  r.train_seed = derive_seed(config.seed, "transfer/train");
  r.search_seed = derive_seed(config.seed, "transfer/search");
  const QaoaInstance train(toss_instance(config.n_train, config.degree, std::nullopt, r.train_seed, config.limits),
                           config.limits.sim);
  r.train_cmax = brute_force_maxcut(train.graph(), config.limits.graph).cmax;
  const auto best = multistart(train, config.p, r.search_seed,
                               MultistartOptions{config.restarts, Direction::Maximize, config.local});
  r.angles = best.best_angles;
  r.train_value = best.best_value;
  r.train_ratio = approximation_ratio(best.best_value, r.train_cmax);
  r.train_evaluations = best.evaluations;

  r.eval_seeds = seed_list(derive_seed(config.seed, "transfer/eval"), config.eval_count);
  for (auto seed : r.eval_seeds) {
    const QaoaInstance instance(toss_instance(config.n_eval, config.degree, std::nullopt, seed, config.limits),
                                config.limits.sim);
    const int cmax = brute_force_maxcut(instance.graph(), config.limits.graph).cmax;
    const double value = instance.objective(r.angles);
    r.eval_cmax.push_back(cmax);
    r.eval_values.push_back(value);
    r.eval_ratios.push_back(approximation_ratio(value, cmax));
  }
  const auto stats = sample_stats(r.eval_ratios);
  r.mean_ratio = stats.mean;
  r.std_ratio = stats.std;
  return r;
}

double mcdiarmid_bound(double t, long long L, double c) {
  if (!(t >= 0.0) || L < 1 || !(c > 0.0) || !std::isfinite(t) || !std::isfinite(c))
    throw ParameterError("mcdiarmid_bound: need t >= 0, L >= 1, c > 0");
  return std::min(1.0, std::exp(-2.0 * t * t / (static_cast<double>(L) * c * c)));
}

}  // namespace qaoa
