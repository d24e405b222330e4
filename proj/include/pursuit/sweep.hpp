#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

// Cop strategy parameters. wait_fraction is the c in |U| = ceil(c*n); the
// default minimizes the worst-case capture-time coefficient (see bounds.hpp).
// With both resample flags on, sweeps are i.i.d., which the exact engine's
// composition formula requires.
struct strategy_config {
  double wait_fraction = 0.72912;
  vertex_t root = 0;
  bool resample_wait_set = true;
  bool resample_direction = true;
};

enum class sweep_direction : std::uint8_t { forward, backward };

// One sweep: the vertex the cop occupies at each turn, plus the randomness
// (wait set, coin) that produced it. The walk starts and ends at the root;
// consecutive entries are equal or tree-adjacent.
struct sweep_walk {
  std::vector<vertex_t> visits;
  sweep_direction direction = sweep_direction::forward;
  vertex_t root = 0;
  std::vector<vertex_t> wait_set;  // sorted
};

// ceil(c*n), tolerating FP noise within 1e-9 of an integer; clamped to [0,n].
long long wait_count(long long n, double c);
int wait_set_size(int n, double c);

// Closed preorder DFS walk from the root, children ascending. Records the
// cop's vertex every turn, so each tree edge contributes two entries and the
// length is exactly 2n-1.
std::vector<vertex_t> dfs_closed_walk(const spanning_tree& t);

// Uniform random subset of {0..n-1} of size ceil(c*n), sorted ascending.
// Partial Fisher-Yates; deterministic given the rng state.
std::vector<vertex_t> sample_wait_set(int n, double c, rng64& rng);

// Duplicates the single visit to each leaf in wait ∩ leaves, in place; no
// other change. Both index lists must be sorted ascending.
std::vector<vertex_t> augment_walk(std::span<const vertex_t> walk,
                                   std::span<const vertex_t> wait_sorted,
                                   std::span<const vertex_t> leaves_sorted);

// forward is the identity; backward reverses the visit sequence (the walk is
// closed, so it still starts and ends at the root).
sweep_walk orient(sweep_walk w, sweep_direction direction);

// Immutable per-(tree, config) data shared by the engines.
struct sweep_context {
  spanning_tree tree;
  strategy_config cfg;
  std::vector<vertex_t> base_walk;       // closed DFS walk
  std::vector<vertex_t> leaf_list;       // sorted
  std::vector<std::uint8_t> leaf_mask;   // size n
  std::vector<int> base_count;           // visits per vertex in base_walk
  int n = 0;
  int wait_size = 0;

  int max_len() const { return static_cast<int>(base_walk.size()) + wait_size; }
};

sweep_context make_sweep_context(const graph& g, const strategy_config& cfg);

// Fresh wait set, fresh coin: closed walk -> augment -> orient.
sweep_walk build_sweep(const sweep_context& ctx, rng64& rng);
sweep_walk build_sweep(const spanning_tree& t, const strategy_config& cfg, rng64& rng);

}  // namespace pursuit
