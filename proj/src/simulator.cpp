#include "qaoa/simulator.hpp"

#include <algorithm>
#include <string>

#include "qaoa/errors.hpp"
#include "qaoa/kernels.hpp"

namespace qaoa {

namespace {

void check_qubits(int n, const SimLimits& limits) {
  if (n < 1) throw ParameterError("simulator: need at least one qubit");
  if (n > limits.max_qubits || n > 40)
    throw ResourceError("simulator: " + std::to_string(n) + " qubits exceeds cap " +
                        std::to_string(limits.max_qubits));
}

}  // namespace

StateVector::StateVector(int num_qubits)
    : n_(num_qubits), amps_(std::size_t{1} << num_qubits) {}

double StateVector::norm_squared() const { return kernels::parallel::norm_squared(amps_); }

CostTable::CostTable(int num_qubits, int num_edges, std::vector<std::uint16_t> values)
    : n_(num_qubits), m_(num_edges), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << num_qubits))
    throw ParameterError("cost table: size does not match qubit count");
}

std::uint16_t CostTable::max_value() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

StateVector uniform_state(int n, const SimLimits& limits) {
  check_qubits(n, limits);
  StateVector s(n);
  kernels::parallel::fill_uniform(s.amplitudes());
  return s;
}

CostTable cost_table(const Graph& g, const SimLimits& limits) {
  check_qubits(g.num_vertices(), limits);
  if (g.num_edges() > 0xffff) throw ResourceError("cost table: too many edges");
  std::vector<std::uint16_t> values(std::size_t{1} << g.num_vertices());
  kernels::parallel::cost_table(g, values);
  return CostTable(g.num_vertices(), g.num_edges(), std::move(values));
}

void apply_cost_layer(StateVector& state, const CostTable& table, double gamma) {
  if (state.num_qubits() != table.num_qubits())
    throw ParameterError("apply_cost_layer: state and cost table sizes differ");
  kernels::parallel::apply_phase(state.amplitudes(), table.values(), gamma);
}

void apply_mixer_layer(StateVector& state, double beta) {
  kernels::parallel::apply_mixer(state.amplitudes(), state.num_qubits(), beta);
}

QaoaInstance::QaoaInstance(Graph g, const SimLimits& limits)
    : graph_(std::move(g)), table_(cost_table(graph_, limits)) {}

StateVector QaoaInstance::prepare(const AngleSchedule& angles) const {
  const int n = graph_.num_vertices();
  StateVector state(n);
  kernels::parallel::fill_uniform(state.amplitudes());
  for (int k = 0; k < angles.depth(); ++k)
    kernels::parallel::apply_layer(state.amplitudes(), n, table_.values(),
                                   angles.gamma()[static_cast<std::size_t>(k)],
                                   angles.beta()[static_cast<std::size_t>(k)]);
  return state;
}

double QaoaInstance::objective(const AngleSchedule& angles) const {
  return objective_from_state(prepare(angles), table_);
}

std::vector<double> QaoaInstance::edge_expectations(const AngleSchedule& angles) const {
  const StateVector state = prepare(angles);
  std::vector<double> out(static_cast<std::size_t>(graph_.num_edges()));
  kernels::parallel::edge_expectations(state.amplitudes(), graph_, out);
  return out;
}

StateVector prepare(const Graph& g, const AngleSchedule& angles, const SimLimits& limits) {
  return QaoaInstance(g, limits).prepare(angles);
}

double objective(const Graph& g, const AngleSchedule& angles, const SimLimits& limits) {
  return QaoaInstance(g, limits).objective(angles);
}

std::vector<double> edge_expectations(const Graph& g, const AngleSchedule& angles,
                                      const SimLimits& limits) {
  return QaoaInstance(g, limits).edge_expectations(angles);
}

double objective_from_state(const StateVector& state, const CostTable& table) {
  if (state.num_qubits() != table.num_qubits())
    throw ParameterError("objective: state and cost table sizes differ");
  return kernels::parallel::expectation(state.amplitudes(), table.values());
}

double approximation_ratio(double f, int cmax) {
  if (cmax <= 0) throw ParameterError("approximation_ratio: undefined for cmax = 0");
  return f / cmax;
}

std::vector<std::uint64_t> sample_bitstrings(const StateVector& state, Rng& rng, int shots) {
  if (shots < 1) throw ParameterError("sample_bitstrings: shots must be positive");
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) {
    acc += std::norm(amps[z]);
    cdf[z] = acc;
  }
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
  for (auto& s : out) {
    const double r = uni(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    // r can round up to the total; take the last string with nonzero weight.
    if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), acc);
    s = static_cast<std::uint64_t>(it - cdf.begin());
  }
  return out;
}

}  // namespace qaoa
