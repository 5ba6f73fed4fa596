#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "qaoa/kernels.hpp"

namespace qaoa::kernels::parallel {

namespace {

using Index = std::int64_t;

constexpr Index kParallelMinDim = Index{1} << 14;

inline Index block_len(Index dim) { return std::min(dim, Index{1} << kBlockBits); }

// e^{-i beta X} on (a0, a1) with c = cos(beta), s = sin(beta).
inline void butterfly(Amplitude& a0, Amplitude& a1, double c, double s) {
  const double r0 = a0.real(), i0 = a0.imag();
  const double r1 = a1.real(), i1 = a1.imag();
  a0 = {c * r0 + s * i1, c * i0 - s * r1};
  a1 = {c * r1 + s * i0, c * i1 - s * r0};
}

// All qubits below `bits` inside one contiguous block of 2^bits amplitudes.
void mix_low_qubits(Amplitude* blk, int bits, double c, double s) {
  const Index len = Index{1} << bits;
  for (int j = 0; j < bits; ++j) {
    const Index stride = Index{1} << j;
    for (Index base = 0; base < len; base += 2 * stride)
      for (Index k = base; k < base + stride; ++k) butterfly(blk[k], blk[k + stride], c, s);
  }
}

void mix_one_high(Amplitude* a, Index dim, int j, double c, double s) {
  const Index lo = Index{1} << j;
  const Index count = dim / 2;
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index t = 0; t < count; ++t) {
    const Index z = ((t >> j) << (j + 1)) | (t & (lo - 1));
    butterfly(a[z], a[z + lo], c, s);
  }
}

// Qubits j and j+1 in one sweep over memory.
void mix_two_high(Amplitude* a, Index dim, int j, double c, double s) {
  const Index lo = Index{1} << j;
  const Index hi = lo << 1;
  const Index count = dim / 4;
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index t = 0; t < count; ++t) {
    const Index z = ((t >> j) << (j + 2)) | (t & (lo - 1));
    Amplitude& a00 = a[z];
    Amplitude& a01 = a[z + lo];
    Amplitude& a10 = a[z + hi];
    Amplitude& a11 = a[z + lo + hi];
    butterfly(a00, a01, c, s);
    butterfly(a10, a11, c, s);
    butterfly(a00, a10, c, s);
    butterfly(a01, a11, c, s);
  }
}

void mix_high_qubits(Amplitude* a, Index dim, int num_qubits, int first, double c, double s) {
  int j = first;
  for (; j + 1 < num_qubits; j += 2) mix_two_high(a, dim, j, c, s);
  if (j < num_qubits) mix_one_high(a, dim, j, c, s);
}

std::vector<Amplitude> phase_lookup(std::span<const std::uint16_t> values, double gamma) {
  std::uint16_t top = 0;
  for (auto v : values) top = std::max(top, v);
  std::vector<Amplitude> phases(static_cast<std::size_t>(top) + 1);
  for (std::size_t c = 0; c < phases.size(); ++c)
    phases[c] = std::polar(1.0, -gamma * static_cast<double>(c));
  return phases;
}

template <class BlockFn>
double blocked_sum(Index dim, BlockFn&& fn) {
  const Index len = block_len(dim);
  const Index blocks = dim / len;
  std::vector<double> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index b = 0; b < blocks; ++b) partial[static_cast<std::size_t>(b)] = fn(b * len, len);
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

}  // namespace

void fill_uniform(std::span<Amplitude> amps) {
  const Index dim = static_cast<Index>(amps.size());
  const Amplitude a{1.0 / std::sqrt(static_cast<double>(dim)), 0.0};
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index z = 0; z < dim; ++z) amps[static_cast<std::size_t>(z)] = a;
}

void cost_table(const Graph& g, std::span<std::uint16_t> values) {
  const Index dim = static_cast<Index>(values.size());
  const auto& edges = g.edges();
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index z = 0; z < dim; ++z) {
    unsigned cut = 0;
    for (const auto& [u, v] : edges) cut += static_cast<unsigned>(((z >> u) ^ (z >> v)) & 1);
    values[static_cast<std::size_t>(z)] = static_cast<std::uint16_t>(cut);
  }
}

void apply_phase(std::span<Amplitude> amps, std::span<const std::uint16_t> values, double gamma) {
  const auto phases = phase_lookup(values, gamma);
  const Index dim = static_cast<Index>(amps.size());
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index z = 0; z < dim; ++z)
    amps[static_cast<std::size_t>(z)] *= phases[values[static_cast<std::size_t>(z)]];
}

void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  const Index dim = static_cast<Index>(amps.size());
  const Index len = block_len(dim);
  const int low = std::min(num_qubits, kBlockBits);
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index b = 0; b < dim; b += len) mix_low_qubits(amps.data() + b, low, c, s);
  mix_high_qubits(amps.data(), dim, num_qubits, low, c, s);
}

void apply_layer(std::span<Amplitude> amps, int num_qubits, std::span<const std::uint16_t> values,
                 double gamma, double beta) {
  const auto phases = phase_lookup(values, gamma);
  const double c = std::cos(beta), s = std::sin(beta);
  const Index dim = static_cast<Index>(amps.size());
  const Index len = block_len(dim);
  const int low = std::min(num_qubits, kBlockBits);
#pragma omp parallel for schedule(static) if (dim >= kParallelMinDim)
  for (Index b = 0; b < dim; b += len) {
    Amplitude* blk = amps.data() + b;
    const std::uint16_t* vals = values.data() + b;
    for (Index k = 0; k < len; ++k) blk[k] *= phases[vals[k]];
    mix_low_qubits(blk, low, c, s);
  }
  mix_high_qubits(amps.data(), dim, num_qubits, low, c, s);
}

double norm_squared(std::span<const Amplitude> amps) {
  return blocked_sum(static_cast<Index>(amps.size()), [&](Index start, Index len) {
    double s = 0.0;
    for (Index k = start; k < start + len; ++k) s += std::norm(amps[static_cast<std::size_t>(k)]);
    return s;
  });
}

double expectation(std::span<const Amplitude> amps, std::span<const std::uint16_t> values) {
  return blocked_sum(static_cast<Index>(amps.size()), [&](Index start, Index len) {
    double s = 0.0;
    for (Index k = start; k < start + len; ++k)
      s += std::norm(amps[static_cast<std::size_t>(k)]) * values[static_cast<std::size_t>(k)];
    return s;
  });
}

void edge_expectations(std::span<const Amplitude> amps, const Graph& g, std::span<double> out) {
  const Index dim = static_cast<Index>(amps.size());
  const Index len = block_len(dim);
  const Index blocks = dim / len;
  const std::size_t m = out.size();
  const auto& edges = g.edges();
  std::vector<double> partial(static_cast<std::size_t>(blocks) * m);
#pragma omp parallel if (dim >= kParallelMinDim)
  {
    std::vector<double> prob(static_cast<std::size_t>(len));
#pragma omp for schedule(static)
    for (Index b = 0; b < blocks; ++b) {
      const Index start = b * len;
      for (Index k = 0; k < len; ++k) prob[static_cast<std::size_t>(k)] = std::norm(amps[static_cast<std::size_t>(start + k)]);
      for (std::size_t e = 0; e < m; ++e) {
        const int u = edges[e].first, v = edges[e].second;
        double s = 0.0;
        for (Index k = 0; k < len; ++k) {
          const Index z = start + k;
          s += prob[static_cast<std::size_t>(k)] * static_cast<double>(((z >> u) ^ (z >> v)) & 1);
        }
        partial[static_cast<std::size_t>(b) * m + e] = s;
      }
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (Index b = 0; b < blocks; ++b)
    for (std::size_t e = 0; e < m; ++e) out[e] += partial[static_cast<std::size_t>(b) * m + e];
}

}  // namespace qaoa::kernels::parallel
