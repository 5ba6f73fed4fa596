#include <cmath>

#include "qaoa/kernels.hpp"

namespace qaoa::kernels::reference {

void fill_uniform(std::span<Amplitude> amps) {
  const double a = 1.0 / std::sqrt(static_cast<double>(amps.size()));
  for (auto& x : amps) x = {a, 0.0};
}

void cost_table(const Graph& g, std::span<std::uint16_t> values) {
  for (std::size_t z = 0; z < values.size(); ++z) {
    int cut = 0;
    for (const auto& [u, v] : g.edges())
      if (((z >> u) & 1U) != ((z >> v) & 1U)) ++cut;
    values[z] = static_cast<std::uint16_t>(cut);
  }
}

void apply_phase(std::span<Amplitude> amps, std::span<const std::uint16_t> values, double gamma) {
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= std::polar(1.0, -gamma * values[z]);
}

void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta) {
  const Amplitude c{std::cos(beta), 0.0};
  const Amplitude mis{0.0, -std::sin(beta)};
  for (int j = 0; j < num_qubits; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t z = 0; z < amps.size(); ++z) {
      if (z & bit) continue;
      const Amplitude a0 = amps[z];
      const Amplitude a1 = amps[z | bit];
      amps[z] = c * a0 + mis * a1;
      amps[z | bit] = mis * a0 + c * a1;
    }
  }
}

double norm_squared(std::span<const Amplitude> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

double expectation(std::span<const Amplitude> amps, std::span<const std::uint16_t> values) {
  double s = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) s += std::norm(amps[z]) * values[z];
  return s;
}

void edge_expectations(std::span<const Amplitude> amps, const Graph& g, std::span<double> out) {
  // <(1 - Z_u Z_v)/2> per edge.
  for (std::size_t e = 0; e < out.size(); ++e) {
    const auto& [u, v] = g.edge(static_cast<int>(e));
    double zz = 0.0;
    for (std::size_t z = 0; z < amps.size(); ++z) {
      const bool differ = ((z >> u) & 1U) != ((z >> v) & 1U);
      zz += differ ? -std::norm(amps[z]) : std::norm(amps[z]);
    }
    out[e] = 0.5 * (1.0 - zz);
  }
}

}  // namespace qaoa::kernels::reference
