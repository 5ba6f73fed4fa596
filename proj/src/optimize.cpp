#include "qaoa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <omp.h>

#include "qaoa/errors.hpp"

namespace qaoa {

std::string to_string(Direction d) { return d == Direction::Maximize ? "maximize" : "minimize"; }

Direction parse_direction(const std::string& s) {
  if (s == "maximize" || s == "max") return Direction::Maximize;
  if (s == "minimize" || s == "min") return Direction::Minimize;
  throw ConfigError("unknown direction '" + s + "'");
}

namespace {

// Work on h = sign * f so the simplex always minimizes.
class SignedObjective {
 public:
  SignedObjective(const ObjectiveFn& f, Direction d)
      : f_(f), sign_(d == Direction::Maximize ? -1.0 : 1.0) {}

  double operator()(std::span<const double> x) {
    const double v = f_(x);
    ++evaluations_;
    if (!std::isfinite(v)) throw SearchAbortError("objective returned a non-finite value");
    return sign_ * v;
  }

  double sign() const { return sign_; }
  int evaluations() const { return evaluations_; }

 private:
  const ObjectiveFn& f_;
  double sign_;
  int evaluations_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, Direction direction,
                             const LocalSearchOptions& options) {
  if (!(options.tol > 0.0)) throw ParameterError("local_search: tol must be positive");
  if (options.max_iters < 1) throw ParameterError("local_search: max_iters must be at least 1");
  if (start.empty()) throw ParameterError("local_search: empty start point");

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const std::size_t dim = start.size();
  SignedObjective h(f, direction);
  const double stop_h = options.stop_at ? h.sign() * *options.stop_at : -INFINITY;

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = h(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = c[k] + t * (w[k] - c[k]);
    return x;
  };

  NelderMeadResult result;
  std::vector<double> centroid(dim);
  for (;;) {
    sort_simplex();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    if (values[worst] - values[best] < options.tol) {
      result.converged = true;
      break;
    }
    if (values[best] <= stop_h || result.iterations >= options.max_iters) break;
    ++result.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[order[i]][k];
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto reflected = along(centroid, simplex[worst], -kReflect);
    const double hr = h(reflected);
    if (hr < values[best]) {
      auto expanded = along(centroid, simplex[worst], -kExpand);
      const double he = h(expanded);
      if (he < hr) {
        simplex[worst] = std::move(expanded);
        values[worst] = he;
      } else {
        simplex[worst] = reflected;
        values[worst] = hr;
      }
      continue;
    }
    if (hr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = hr;
      continue;
    }
    if (hr < values[worst]) {
      auto outside = along(centroid, reflected, kContract);
      const double hc = h(outside);
      if (hc <= hr) {
        simplex[worst] = std::move(outside);
        values[worst] = hc;
        continue;
      }
    } else {
      auto inside = along(centroid, simplex[worst], kContract);
      const double hc = h(inside);
      if (hc < values[worst]) {
        simplex[worst] = std::move(inside);
        values[worst] = hc;
        continue;
      }
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      simplex[i] = along(simplex[best], simplex[i], kShrink);
      values[i] = h(simplex[i]);
    }
  }

  result.x = simplex[order.front()];
  result.value = h.sign() * h(result.x);
  result.evaluations = h.evaluations();
  return result;
}

LocalSearchResult local_search(const ObjectiveFn& f, const AngleSchedule& start, Direction direction,
                               const LocalSearchOptions& options) {
  auto nm = nelder_mead(f, start.flat(), direction, options);
  return {AngleSchedule::from_flat(nm.x), nm.value, nm.evaluations, nm.iterations, nm.converged};
}

ObjectiveFn make_objective(const QaoaInstance& instance) {
  return [&instance](std::span<const double> x) {
    return instance.objective(AngleSchedule::from_flat(x));
  };
}

AngleSchedule random_angles(int p, Rng& rng) {
  if (p < 1) throw ParameterError("random_angles: p must be at least 1");
  std::uniform_real_distribution<double> gamma_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> beta_dist(0.0, std::numbers::pi);
  std::vector<double> gamma(static_cast<std::size_t>(p)), beta(static_cast<std::size_t>(p));
  for (auto& g : gamma) g = gamma_dist(rng);
  for (auto& b : beta) b = beta_dist(rng);
  return AngleSchedule(std::move(gamma), std::move(beta));
}

OptimizationResult multistart(const ObjectiveFn& f, int p, std::uint64_t seed,
                              const MultistartOptions& options) {
  if (options.restarts < 1) throw ParameterError("multistart: restarts must be at least 1");
  std::vector<RestartRecord> trace(static_cast<std::size_t>(options.restarts));
  std::vector<std::string> errors(trace.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < options.restarts; ++i) {
    try {
      Rng rng = substream(seed, "restart", static_cast<std::uint64_t>(i));
      auto start = random_angles(p, rng);
      auto local = local_search(f, start, options.direction, options.local);
      trace[static_cast<std::size_t>(i)] = {std::move(start), std::move(local.angles), local.value,
                                            local.evaluations};
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw SearchAbortError("multistart: " + e);

  OptimizationResult out;
  out.direction = options.direction;
  out.seed = seed;
  std::size_t best = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out.evaluations += trace[i].evaluations;
    const bool better = options.direction == Direction::Maximize ? trace[i].value > trace[best].value
                                                                 : trace[i].value < trace[best].value;
    if (better) best = i;
  }
  out.best_angles = trace[best].converged;
  out.best_value = trace[best].value;
  out.restart_trace = std::move(trace);
  return out;
}

OptimizationResult multistart(const QaoaInstance& instance, int p, std::uint64_t seed,
                              const MultistartOptions& options) {
  return multistart(make_objective(instance), p, seed, options);
}

std::vector<double> landscape_grid(const Graph& g, int resolution, const SimLimits& limits) {
  if (resolution < 2) throw ParameterError("landscape_grid: resolution must be at least 2");
  const QaoaInstance instance(g, limits);
  const int points = resolution * resolution;
  std::vector<double> grid(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < points; ++k) {
    const double gamma = 2.0 * std::numbers::pi * (k / resolution) / resolution;
    const double beta = std::numbers::pi * (k % resolution) / resolution;
    grid[static_cast<std::size_t>(k)] = instance.objective(AngleSchedule({gamma}, {beta}));
  }
  return grid;
}

std::vector<LeapfrogStage> leapfrog(std::span<const int> sizes, std::uint64_t seed,
                                    const LeapfrogOptions& options) {
  if (sizes.empty()) throw ParameterError("leapfrog: no sizes given");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw ParameterError("leapfrog: sizes must be strictly increasing");
  for (int n : sizes)
    if (n > options.sim_limits.max_qubits)
      throw ResourceError("leapfrog: size " + std::to_string(n) + " exceeds the simulator cap");

  std::vector<LeapfrogStage> stages;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    LeapfrogStage stage;
    stage.size = sizes[s];
    stage.instance_seed = derive_seed(seed, "leapfrog/instance", s);
    Rng rng(stage.instance_seed);
    const QaoaInstance instance(gen_regular(stage.size, options.degree, rng, options.graph_limits),
                                options.sim_limits);
    if (s == 0) {
      MultistartOptions ms{options.restarts, Direction::Maximize, options.search};
      auto best = multistart(instance, options.p, derive_seed(seed, "leapfrog/search"), ms);
      stage.angles = best.best_angles;
      stage.transferred_value = best.best_value;
      stage.refined_value = best.best_value;
    } else {
      const auto& incoming = stages.back().angles;
      const auto f = make_objective(instance);
      stage.transferred_value = instance.objective(incoming);
      auto refined = local_search(f, incoming, Direction::Maximize, options.refine);
      stage.angles = refined.angles;
      stage.refined_value = refined.value;
    }

    stage.eval_ratios.resize(static_cast<std::size_t>(options.eval_count));
    for (int k = 0; k < options.eval_count; ++k) {
      Rng eval_rng = substream(derive_seed(seed, "leapfrog/eval", s), "graph", static_cast<std::uint64_t>(k));
      const Graph g = gen_regular(stage.size, options.degree, eval_rng, options.graph_limits);
      const int cmax = brute_force_maxcut(g, options.graph_limits).cmax;
      stage.eval_ratios[static_cast<std::size_t>(k)] =
          approximation_ratio(QaoaInstance(g, options.sim_limits).objective(stage.angles), cmax);
    }
    if (!stage.eval_ratios.empty())
      stage.mean_ratio = std::accumulate(stage.eval_ratios.begin(), stage.eval_ratios.end(), 0.0) /
                         static_cast<double>(stage.eval_ratios.size());
    stages.push_back(std::move(stage));
  }
  return stages;
}

}  // namespace qaoa
