#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaoa/angles.hpp"
#include "qaoa/graphs.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {

enum class Direction { Maximize, Minimize };

std::string to_string(Direction d);
Direction parse_direction(const std::string& s);

/// Objective over the flat parameter vector (gamma_1..gamma_p, beta_1..beta_p).
/// Must be safe to call concurrently when used with multistart.
using ObjectiveFn = std::function<double(std::span<const double>)>;

struct LocalSearchOptions {
  double tol = 1e-6;
  int max_iters = 3000;
  double initial_step = 0.1;
  /// Stop as soon as the best vertex reaches this value (>= when maximizing,
  /// <= when minimizing).
  std::optional<double> stop_at;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex with coefficients reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5. The initial simplex is `start` plus one
/// vertex per coordinate offset by `initial_step`. Converged when the spread
/// of simplex values drops below `tol`. `value` is f re-evaluated at `x`.
NelderMeadResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, Direction direction,
                             const LocalSearchOptions& options);

struct LocalSearchResult {
  AngleSchedule angles;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead over angles. The search runs in unreduced coordinates; the
/// returned schedule is reduced into the canonical box.
LocalSearchResult local_search(const ObjectiveFn& f, const AngleSchedule& start, Direction direction,
                               const LocalSearchOptions& options);

ObjectiveFn make_objective(const QaoaInstance& instance);

/// gamma uniform in [0, 2pi)^p, beta uniform in [0, pi)^p.
AngleSchedule random_angles(int p, Rng& rng);

struct RestartRecord {
  AngleSchedule start;
  AngleSchedule converged;
  double value = 0.0;
  int evaluations = 0;
};

struct OptimizationResult {
  AngleSchedule best_angles;
  double best_value = 0.0;
  Direction direction = Direction::Maximize;
  long long evaluations = 0;
  std::vector<RestartRecord> restart_trace;
  std::uint64_t seed = 0;
};

struct MultistartOptions {
  int restarts = 20;
  Direction direction = Direction::Maximize;
  LocalSearchOptions local;
};

/// Independent local searches from random starts; restart i draws its start
/// from substream(seed, "restart", i). Runs restarts in parallel; the winner
/// is the best value with the lowest restart index on ties.
OptimizationResult multistart(const ObjectiveFn& f, int p, std::uint64_t seed,
                              const MultistartOptions& options);
OptimizationResult multistart(const QaoaInstance& instance, int p, std::uint64_t seed,
                              const MultistartOptions& options);

/// p = 1 objective on a resolution x resolution grid over gamma in [0, 2pi),
/// beta in [0, pi); row-major with gamma as the outer index.
std::vector<double> landscape_grid(const Graph& g, int resolution, const SimLimits& limits = {});

struct LeapfrogOptions {
  int p = 8;
  int degree = 3;
  int restarts = 50;
  LocalSearchOptions search;
  LocalSearchOptions refine{1e-6, 200, 0.05, std::nullopt};
  int eval_count = 10;
  GraphLimits graph_limits;
  SimLimits sim_limits;
};

struct LeapfrogStage {
  int size = 0;
  std::uint64_t instance_seed = 0;
  AngleSchedule angles;
  /// Objective of the incoming angles on this stage's instance (stage 0: the
  /// multistart result).
  double transferred_value = 0.0;
  double refined_value = 0.0;
  std::vector<double> eval_ratios;
  double mean_ratio = 0.0;
};

/// Optimize at sizes[0], then at each larger size toss a fresh instance and
/// refine the previous angles by a local search started from them.
std::vector<LeapfrogStage> leapfrog(std::span<const int> sizes, std::uint64_t seed,
                                    const LeapfrogOptions& options);

}  // namespace qaoa
