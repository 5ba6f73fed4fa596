#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaoa/angles.hpp"
#include "qaoa/graphs.hpp"
#include "qaoa/optimize.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {

enum class Regime { Low, MedLow, Random, MedHigh, High };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);
std::vector<Regime> all_regimes();

struct ExperimentLimits {
  GraphLimits graph;
  SimLimits sim;
  int max_maxcut_tries = 2000;
};

/// How fixed angles for a regime are produced. Low and High fully minimize /
/// maximize on a held-out training instance of `train_n` vertices; the Med
/// regimes stop the search once the objective enters a band, given as a
/// fraction of the edge count. Early-stopped angles sit on a slope of the
/// landscape and do not carry over between sizes, so the Med regimes train
/// at `med_train_n` (0: the evaluation size) with their own restart count.
struct RegimeOptions {
  int train_n = 10;
  int restarts = 30;
  int med_train_n = 0;
  int med_restarts = 4;
  LocalSearchOptions local;
  double med_low_band_lo = 7.0 / 30.0;
  double med_low_band_hi = 8.0 / 30.0;
  double med_high_band_lo = 21.0 / 30.0;
  double med_high_band_hi = 22.0 / 30.0;
};

struct RegimeAngles {
  Regime regime = Regime::Random;
  AngleSchedule angles;
  int train_n = 0;
  std::uint64_t train_seed = 0;   // 0 for Random (no training instance)
  std::uint64_t search_seed = 0;  // multistart seed, or the draw seed for Random
  double train_value = 0.0;       // objective on the training instance (Random: unused, 0)
};

/// Angles for one regime at depth p. The training instance is tossed from
/// derive_seed(seed, "regime/train", p); with train_n == eval_n and a target
/// MaxCut it is filtered the same way as evaluation instances.
RegimeAngles find_regime_angles(Regime regime, int p, int degree, std::optional<int> target_cmax,
                                int eval_n, std::uint64_t seed, const RegimeOptions& options,
                                const ExperimentLimits& limits);

/// One random instance: gen_regular, MaxCut-filtered when target_cmax is set.
Graph toss_instance(int n, int degree, std::optional<int> target_cmax, std::uint64_t seed,
                    const ExperimentLimits& limits);

struct SampleStats {
  double mean = 0.0;
  double std = 0.0;  // (N-1) estimator; 0 for a single sample
};

SampleStats sample_stats(std::span<const double> xs);

// ---------------------------------------------------------------- concentration

struct ConcentrationConfig {
  std::vector<int> p_list{2, 3, 4, 5, 6, 7};
  std::vector<Regime> regimes{Regime::Low, Regime::Random, Regime::High};
  int instances_per_cell = 25;
  int n = 20;
  int degree = 3;
  std::optional<int> target_cmax = 26;
  std::uint64_t seed = 1;
  RegimeOptions regime;
  ExperimentLimits limits;
};

struct ConcentrationRow {
  int p = 0;
  RegimeAngles source;
  int count = 0;
  double mean = 0.0;
  double std = 0.0;
  bool single_sample = false;
  std::vector<double> values;
};

struct ConcentrationReport {
  ConcentrationConfig config;
  std::vector<ConcentrationRow> rows;
  /// Per p: seed of every evaluation instance, in instance order.
  std::map<int, std::vector<std::uint64_t>> instance_seeds;
  bool partial = false;
  std::string error;
};

/// For each p, fixes one angle set per regime, then evaluates them on the
/// same instances_per_cell freshly tossed graphs.
ConcentrationReport concentration_table(const ConcentrationConfig& config);

// ---------------------------------------------------------------- correlation

/// m x N table of per-edge expectations; column k is instance k after a
/// random edge relabeling.
class EdgeExpectationMatrix {
 public:
  EdgeExpectationMatrix(int m, int n_instances);

  int num_edges() const noexcept { return m_; }
  int num_instances() const noexcept { return n_; }
  double& at(int edge, int instance) { return data_[index(edge, instance)]; }
  double at(int edge, int instance) const { return data_[index(edge, instance)]; }
  double column_sum(int instance) const;

 private:
  std::size_t index(int edge, int instance) const {
    return static_cast<std::size_t>(edge) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(instance);
  }
  int m_;
  int n_;
  std::vector<double> data_;
};

/// Column k uses edge labels permuted by substream(permutation_seed, "permutation", k).
EdgeExpectationMatrix build_expectation_matrix(std::span<const Graph> graphs, const AngleSchedule& angles,
                                               std::uint64_t permutation_seed, const SimLimits& limits = {});

struct CorrelationStats {
  int m = 0;
  int n_instances = 0;
  double mean_f = 0.0;   // F bar
  double var_f = 0.0;    // (N-1) estimator over instance objectives
  double mean_c = 0.0;   // F bar / m
  double var_c1 = 0.0;   // (mN-1) estimator over all entries
  double corr = 0.0;
};

/// Pairwise clause correlation implied by var(F) and var(C_1):
/// corr = [var_f / (m var_c1) - 1] / (m - 1).
CorrelationStats correlation_stats(const EdgeExpectationMatrix& mat);

struct CorrelationConfig {
  int n = 20;
  int p = 8;
  int degree = 3;
  int instances = 100;
  std::optional<int> target_cmax = 26;
  std::vector<Regime> regimes = all_regimes();
  std::uint64_t seed = 1;
  RegimeOptions regime;
  ExperimentLimits limits;
};

struct CorrelationReport {
  RegimeAngles source;
  CorrelationStats stats;
  std::vector<std::uint64_t> instance_seeds;
  std::uint64_t permutation_seed = 0;
  std::vector<double> objectives;
};

struct CorrelationExperiment {
  CorrelationConfig config;
  std::vector<CorrelationReport> reports;
};

CorrelationExperiment correlation_experiment(const CorrelationConfig& config);

// ---------------------------------------------------------------- transfer

struct TransferConfig {
  int n_train = 10;
  int n_eval = 24;
  int p = 8;
  int degree = 3;
  int restarts = 200;
  int eval_count = 25;
  std::uint64_t seed = 1;
  LocalSearchOptions local;
  ExperimentLimits limits;
};

struct TransferReport {
  TransferConfig config;
  std::uint64_t train_seed = 0;
  std::uint64_t search_seed = 0;
  int train_cmax = 0;
  double train_value = 0.0;
  double train_ratio = 0.0;
  long long train_evaluations = 0;
  AngleSchedule angles;
  std::vector<std::uint64_t> eval_seeds;
  std::vector<int> eval_cmax;
  std::vector<double> eval_values;
  std::vector<double> eval_ratios;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;
};

/// Optimizes at n_train and evaluates the frozen angles on fresh n_eval
/// instances, each scored against its brute-force MaxCut.
TransferReport transfer_experiment(const TransferConfig& config);

/// Approximation ratio of fixed angles on one graph.
double evaluate_ratio(const Graph& g, const AngleSchedule& angles, const ExperimentLimits& limits = {});

// ---------------------------------------------------------------- bound

/// exp(-2 t^2 / (L c^2)), capped at 1: tail bound for a function of L
/// independent bits that moves by at most c when one bit flips.
double mcdiarmid_bound(double t, long long L, double c);

}  // namespace qaoa
