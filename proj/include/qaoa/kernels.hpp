#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "qaoa/graphs.hpp"

// Statevector kernels. Basis index z carries qubit j in bit j.
//
// `reference` is the plain serial implementation that the tests treat as
// ground truth. `parallel` is the OpenMP version used by the simulator: the
// mixer is cache-blocked over the low qubits and handles high qubits two at
// a time, and every reduction sums fixed-size blocks before folding them in
// block order, so results are bitwise identical for any thread count.

namespace qaoa::kernels {

using Amplitude = std::complex<double>;

namespace reference {

void fill_uniform(std::span<Amplitude> amps);
void cost_table(const Graph& g, std::span<std::uint16_t> values);
void apply_phase(std::span<Amplitude> amps, std::span<const std::uint16_t> values, double gamma);
void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta);
double norm_squared(std::span<const Amplitude> amps);
double expectation(std::span<const Amplitude> amps, std::span<const std::uint16_t> values);
void edge_expectations(std::span<const Amplitude> amps, const Graph& g, std::span<double> out);

}  // namespace reference

namespace parallel {

/// Amplitudes per reduction block; also the cache block of the mixer.
inline constexpr int kBlockBits = 12;

void fill_uniform(std::span<Amplitude> amps);
void cost_table(const Graph& g, std::span<std::uint16_t> values);
void apply_phase(std::span<Amplitude> amps, std::span<const std::uint16_t> values, double gamma);
void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta);
/// Phase layer followed by mixer layer, sharing the first pass over memory.
void apply_layer(std::span<Amplitude> amps, int num_qubits, std::span<const std::uint16_t> values,
                 double gamma, double beta);
double norm_squared(std::span<const Amplitude> amps);
double expectation(std::span<const Amplitude> amps, std::span<const std::uint16_t> values);
void edge_expectations(std::span<const Amplitude> amps, const Graph& g, std::span<double> out);

}  // namespace parallel

}  // namespace qaoa::kernels
