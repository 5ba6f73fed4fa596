#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qaoa/rng.hpp"

namespace qaoa {

using Edge = std::pair<int, int>;

/// Undirected simple graph. Edge labels are list positions; each pair is
/// stored with u < v. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Keeps the given edge order. Pairs are normalized to u < v; self-loops,
  /// duplicates and out-of-range endpoints throw ParameterError.
  Graph(int n, std::vector<Edge> edges);

  /// Same as the constructor but sorts the edge list lexicographically.
  static Graph canonical(int n, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int label) const { return edges_.at(static_cast<std::size_t>(label)); }

  /// Sorted neighbor list of v.
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;
  bool is_regular(int d) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

struct GraphLimits {
  int max_generation_attempts = 10000;
  int max_bruteforce_vertices = 30;
};

/// Random simple d-regular graph from the pairing model, restarting on any
/// self-loop or repeated pair.
Graph gen_regular(int n, int d, Rng& rng, const GraphLimits& limits = {});

/// G(n, p): each of the n(n-1)/2 pairs kept independently with probability p_edge.
Graph gen_erdos_renyi(int n, double p_edge, Rng& rng);

/// Induced subgraph on the largest connected component, relabeled in
/// increasing original order. Ties go to the component with the lowest vertex.
Graph largest_component(const Graph& g);

struct MaxCutResult {
  int cmax = 0;
  /// Bit j is the side of vertex j. Vertex n-1 is always on side 0.
  std::uint64_t witness = 0;
};

/// Exhaustive MaxCut over all 2^(n-1) assignments with the last vertex pinned.
MaxCutResult brute_force_maxcut(const Graph& g, const GraphLimits& limits = {});

/// Rejection-samples gen_regular until the MaxCut optimum equals target_cmax.
Graph gen_regular_with_maxcut(int n, int d, int target_cmax, Rng& rng, int max_tries,
                              const GraphLimits& limits = {});

/// Uniformly random relabeling of the edges; vertices untouched.
Graph permute_edge_labels(const Graph& g, Rng& rng);

/// p=1 light-cone type of an edge in a 3-regular graph, by number of common
/// neighbors of its endpoints.
enum class EdgeP1Type { SharedTwo, SharedOne, SharedZero };

EdgeP1Type classify_edge_p1(const Graph& g, int edge_label);

struct CensusP1 {
  int w_shared2 = 0;
  int w_shared1 = 0;
  int w_shared0 = 0;
  double f_shared2 = 0.0;
  double f_shared1 = 0.0;
  double f_shared0 = 0.0;
};

CensusP1 census_p1(const Graph& g);

struct Neighborhood {
  Graph subgraph;
  /// original_label[i] is the vertex of the parent graph behind local vertex i.
  std::vector<int> original_label;
};

/// Induced subgraph on every vertex within distance `radius` of either
/// endpoint of the edge.
Neighborhood neighborhood(const Graph& g, int edge_label, int radius);

/// Vertex count of the depth-p double tree hanging off an edge of a
/// 3-regular graph: 2 (2^(p+1) - 1).
std::int64_t qaoa_tree_size(int p);

/// Edge-list text: "n m" then one "u v" line per edge in label order.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);
std::string to_edge_list(const Graph& g);
Graph parse_edge_list(const std::string& text);

}  // namespace qaoa
