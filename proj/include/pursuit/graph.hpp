#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

using vertex_t = int;

enum class graph_family { star, path, cycle, random_tree, gnp_connected };

graph_family parse_family(std::string_view name);
std::string_view family_name(graph_family f);

// Undirected connected simple graph on vertices 0..n-1 with sorted adjacency
// lists. Symmetry, simplicity and connectivity are checked at construction;
// instances are immutable afterwards and safe to share across threads.
class graph {
public:
  // Throws: empty_graph (n < 1), invalid_parameter (endpoint out of range),
  // self_loop, duplicate_edge, disconnected.
  static graph from_edges(int n,
                          const std::vector<std::pair<vertex_t, vertex_t>>& edges);

  // Edge-list text: first significant line is n, each following significant
  // line is "u v". Blank lines and '#' comment lines are ignored.
  // Throws: malformed_line plus everything from_edges throws.
  static graph parse(std::string_view edge_list_text);

  // Standard families. Random families are deterministic given the seed;
  // gnp_connected resamples until connected and requires edge_prob in (0,1].
  static graph generate(graph_family family, int n, std::uint64_t seed = 0,
                        double edge_prob = 0.5);

  int n() const { return n_; }
  std::span<const vertex_t> neighbors(vertex_t v) const { return adj_[v]; }
  int degree(vertex_t v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(vertex_t u, vertex_t v) const;
  long long edge_count() const;

  // Same format parse() accepts; parse(to_edge_list()) round-trips.
  std::string to_edge_list() const;

private:
  graph() = default;

  int n_ = 0;
  std::vector<std::vector<vertex_t>> adj_;
};

// Rooted spanning tree; children lists sorted ascending, parent[root] == -1.
struct spanning_tree {
  vertex_t root = 0;
  std::vector<vertex_t> parent;
  std::vector<std::vector<vertex_t>> children;

  int n() const { return static_cast<int>(parent.size()); }

  int tree_degree(vertex_t v) const {
    return static_cast<int>(children[v].size()) + (v == root ? 0 : 1);
  }

  bool tree_adjacent(vertex_t u, vertex_t v) const {
    return parent[u] == v || parent[v] == u;
  }
};

// Deterministic BFS tree from `root`, neighbors explored in ascending index
// order. Throws invalid_parameter when root is out of range.
spanning_tree bfs_spanning_tree(const graph& g, vertex_t root);

// Non-root degree-1 vertices of the tree, ascending. A degree-1 root is not
// a leaf: the closed walk already visits it twice whenever n >= 2.
std::vector<vertex_t> leaves(const spanning_tree& t);

}  // namespace pursuit
