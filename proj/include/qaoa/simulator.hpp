#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qaoa/angles.hpp"
#include "qaoa/graphs.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

struct SimLimits {
  int max_qubits = 26;
};

/// 2^n amplitudes; bit j of the index is qubit j.
class StateVector {
 public:
  using Amplitude = std::complex<double>;

  StateVector() = default;
  explicit StateVector(int num_qubits);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude& operator[](std::size_t z) { return amps_[z]; }
  const Amplitude& operator[](std::size_t z) const { return amps_[z]; }
  double norm_squared() const;

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

/// C(z) for every basis string: the number of edges cut by z.
class CostTable {
 public:
  CostTable() = default;
  CostTable(int num_qubits, int num_edges, std::vector<std::uint16_t> values);

  int num_qubits() const noexcept { return n_; }
  int num_edges() const noexcept { return m_; }
  std::span<const std::uint16_t> values() const noexcept { return values_; }
  std::uint16_t operator[](std::size_t z) const { return values_[z]; }
  std::uint16_t max_value() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint16_t> values_;
};

StateVector uniform_state(int n, const SimLimits& limits = {});
CostTable cost_table(const Graph& g, const SimLimits& limits = {});
void apply_cost_layer(StateVector& state, const CostTable& table, double gamma);
void apply_mixer_layer(StateVector& state, double beta);

/// A graph with its cost table, for repeated evaluation at different angles.
/// Const member functions are safe to call concurrently.
class QaoaInstance {
 public:
  explicit QaoaInstance(Graph g, const SimLimits& limits = {});

  const Graph& graph() const noexcept { return graph_; }
  const CostTable& table() const noexcept { return table_; }

  StateVector prepare(const AngleSchedule& angles) const;
  /// <gamma,beta| C |gamma,beta>.
  double objective(const AngleSchedule& angles) const;
  /// Expectation of (1 - Z_u Z_v)/2 per edge label.
  std::vector<double> edge_expectations(const AngleSchedule& angles) const;

 private:
  Graph graph_;
  CostTable table_;
};

StateVector prepare(const Graph& g, const AngleSchedule& angles, const SimLimits& limits = {});
double objective(const Graph& g, const AngleSchedule& angles, const SimLimits& limits = {});
std::vector<double> edge_expectations(const Graph& g, const AngleSchedule& angles,
                                      const SimLimits& limits = {});
double objective_from_state(const StateVector& state, const CostTable& table);

double approximation_ratio(double f, int cmax);

/// Draws `shots` basis strings i.i.d. from |amplitude|^2.
std::vector<std::uint64_t> sample_bitstrings(const StateVector& state, Rng& rng, int shots);

}  // namespace qaoa
