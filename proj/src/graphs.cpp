#include "qaoa/graphs.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include <omp.h>

#include "qaoa/errors.hpp"

namespace qaoa {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ParameterError("graph: negative vertex count");
  adjacency_.assign(static_cast<std::size_t>(n), {});
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw ParameterError("graph: edge endpoint out of range");
    if (u == v) throw ParameterError("graph: self-loop");
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw ParameterError("graph: duplicate edge");
  }
}

Graph Graph::canonical(int n, std::vector<Edge> edges) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  return Graph(n, std::move(edges));
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_regular(int d) const {
  return std::all_of(adjacency_.begin(), adjacency_.end(),
                     [d](const auto& nb) { return static_cast<int>(nb.size()) == d; });
}

Graph gen_regular(int n, int d, Rng& rng, const GraphLimits& limits) {
  if (n < 0 || d < 0) throw ParameterError("gen_regular: negative n or d");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw ParameterError("gen_regular: n*d must be even");
  if (n > 0 && d >= n) throw ParameterError("gen_regular: need d < n");

  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int attempt = 0; attempt < limits.max_generation_attempts; ++attempt) {
    stubs.clear();
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = std::min(stubs[i], stubs[i + 1]);
      int v = std::max(stubs[i], stubs[i + 1]);
      if (u == v) {
        simple = false;
        break;
      }
      edges.emplace_back(u, v);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(n, std::move(edges));
  }
  throw GenerationError("gen_regular: exceeded " + std::to_string(limits.max_generation_attempts) +
                        " pairing attempts");
}

Graph gen_erdos_renyi(int n, double p_edge, Rng& rng) {
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) throw ParameterError("gen_erdos_renyi: p_edge outside [0,1]");
  if (n < 0) throw ParameterError("gen_erdos_renyi: negative n");
  std::bernoulli_distribution keep(p_edge);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (keep(rng)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph largest_component(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return g;
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> sizes;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    int count = 0;
    std::queue<int> q;
    q.push(s);
    comp[static_cast<std::size_t>(s)] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      ++count;
      for (int w : g.neighbors(v)) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          q.push(w);
        }
      }
    }
    sizes.push_back(count);
  }
  // Components are numbered by their lowest vertex, so max_element's first hit is the tie-break.
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<int> relabel(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (comp[static_cast<std::size_t>(v)] == best) relabel[static_cast<std::size_t>(v)] = next++;
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (comp[static_cast<std::size_t>(u)] == best)
      edges.emplace_back(relabel[static_cast<std::size_t>(u)], relabel[static_cast<std::size_t>(v)]);
  return Graph(next, std::move(edges));
}

namespace {

// Gray-code blocks are a fixed partition of the search space, so the chosen
// witness (first optimum in Gray order) does not depend on the thread count.
constexpr int kMaxCutBlockBits = 12;

int cut_value(const std::vector<std::uint64_t>& adj, std::uint64_t z) {
  int cut = 0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    // Count each edge from its lower endpoint only.
    const std::uint64_t higher = adj[v] & ~((std::uint64_t{2} << v) - 1);
    const std::uint64_t side = ((z >> v) & 1U) ? ~z : z;
    cut += std::popcount(higher & side);
  }
  return cut;
}

}  // namespace

MaxCutResult brute_force_maxcut(const Graph& g, const GraphLimits& limits) {
  const int n = g.num_vertices();
  if (n > limits.max_bruteforce_vertices || n > 63)
    throw ResourceError("brute_force_maxcut: n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(std::min(limits.max_bruteforce_vertices, 63)));
  if (n <= 1 || g.num_edges() == 0) return {};

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);

  const int free_bits = n - 1;
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  const int block_bits = std::min(free_bits, kMaxCutBlockBits);
  const std::uint64_t block_len = std::uint64_t{1} << block_bits;
  const std::int64_t num_blocks = static_cast<std::int64_t>(total / block_len);

  std::vector<int> block_best(static_cast<std::size_t>(num_blocks), -1);
  std::vector<std::uint64_t> block_witness(static_cast<std::size_t>(num_blocks), 0);

#pragma omp parallel for schedule(static) if (num_blocks > 1)
  for (std::int64_t b = 0; b < num_blocks; ++b) {
    std::uint64_t i = static_cast<std::uint64_t>(b) * block_len;
    std::uint64_t z = i ^ (i >> 1);
    int cut = cut_value(adj, z);
    int best = cut;
    std::uint64_t best_z = z;
    for (std::uint64_t k = 1; k < block_len; ++k) {
      ++i;
      const int v = std::countr_zero(i);
      const std::uint64_t side = ((z >> v) & 1U) ? ~z : z;
      const int same = std::popcount(adj[static_cast<std::size_t>(v)] & ~side);
      cut += 2 * same - deg[static_cast<std::size_t>(v)];
      z ^= std::uint64_t{1} << v;
      if (cut > best) {
        best = cut;
        best_z = z;
      }
    }
    block_best[static_cast<std::size_t>(b)] = best;
    block_witness[static_cast<std::size_t>(b)] = best_z;
  }

  MaxCutResult result{-1, 0};
  for (std::size_t b = 0; b < block_best.size(); ++b) {
    if (block_best[b] > result.cmax) {
      result.cmax = block_best[b];
      result.witness = block_witness[b];
    }
  }
  return result;
}

Graph gen_regular_with_maxcut(int n, int d, int target_cmax, Rng& rng, int max_tries,
                              const GraphLimits& limits) {
  if (static_cast<long long>(n) * d / 2 < target_cmax)
    throw ParameterError("gen_regular_with_maxcut: target exceeds edge count");
  std::map<int, int> histogram;
  for (int t = 0; t < max_tries; ++t) {
    Graph g = gen_regular(n, d, rng, limits);
    const int cmax = brute_force_maxcut(g, limits).cmax;
    if (cmax == target_cmax) return g;
    ++histogram[cmax];
  }
  std::ostringstream msg;
  msg << "gen_regular_with_maxcut: no graph with MaxCut " << target_cmax << " in " << max_tries
      << " tries; observed";
  for (const auto& [value, count] : histogram) msg << ' ' << value << ':' << count;
  throw GenerationError(msg.str(), std::move(histogram));
}

Graph permute_edge_labels(const Graph& g, Rng& rng) {
  std::vector<Edge> edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph(g.num_vertices(), std::move(edges));
}

EdgeP1Type classify_edge_p1(const Graph& g, int edge_label) {
  if (edge_label < 0 || edge_label >= g.num_edges())
    throw ParameterError("classify_edge_p1: edge label out of range");
  if (!g.is_regular(3)) throw ParameterError("classify_edge_p1: graph is not 3-regular");
  const auto& [u, v] = g.edge(edge_label);
  const auto& nu = g.neighbors(u);
  const auto& nv = g.neighbors(v);
  std::vector<int> common;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
  switch (common.size()) {
    case 0: return EdgeP1Type::SharedZero;
    case 1: return EdgeP1Type::SharedOne;
    default: return EdgeP1Type::SharedTwo;
  }
}

CensusP1 census_p1(const Graph& g) {
  const int m = g.num_edges();
  if (m == 0) throw ParameterError("census_p1: fractions undefined for a graph without edges");
  CensusP1 c;
  for (int e = 0; e < m; ++e) {
    switch (classify_edge_p1(g, e)) {
      case EdgeP1Type::SharedTwo: ++c.w_shared2; break;
      case EdgeP1Type::SharedOne: ++c.w_shared1; break;
      case EdgeP1Type::SharedZero: ++c.w_shared0; break;
    }
  }
  c.f_shared2 = static_cast<double>(c.w_shared2) / m;
  c.f_shared1 = static_cast<double>(c.w_shared1) / m;
  c.f_shared0 = static_cast<double>(c.w_shared0) / m;
  return c;
}

Neighborhood neighborhood(const Graph& g, int edge_label, int radius) {
  if (edge_label < 0 || edge_label >= g.num_edges())
    throw ParameterError("neighborhood: edge label out of range");
  if (radius < 0) throw ParameterError("neighborhood: negative radius");
  const int n = g.num_vertices();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  const auto& [a, b] = g.edge(edge_label);
  for (int s : {a, b}) {
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (dist[static_cast<std::size_t>(v)] == radius) continue;
    for (int w : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  Neighborhood out;
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (dist[static_cast<std::size_t>(v)] >= 0) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(out.original_label.size());
      out.original_label.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (local[static_cast<std::size_t>(u)] >= 0 && local[static_cast<std::size_t>(v)] >= 0)
      edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
  out.subgraph = Graph::canonical(static_cast<int>(out.original_label.size()), std::move(edges));
  return out;
}

std::int64_t qaoa_tree_size(int p) {
  if (p < 1 || p > 60) throw ParameterError("qaoa_tree_size: p must be in [1, 60]");
  return 2 * ((std::int64_t{1} << (p + 1)) - 1);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0 || n > std::numeric_limits<int>::max())
    throw ConfigError("edge list: bad header, expected \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw ConfigError("edge list: expected " + std::to_string(m) + " edges");
    edges.emplace_back(u, v);
  }
  try {
    return Graph(static_cast<int>(n), std::move(edges));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("edge list: ") + e.what());
  }
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace qaoa
