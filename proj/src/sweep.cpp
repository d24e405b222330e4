#include "pursuit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pursuit {

long long wait_count(long long n, double c) {
  if (c < 0.0 || c > 1.0) raise(errc::invalid_parameter, "wait fraction must be in [0,1]");
  const double t = c * static_cast<double>(n);
  auto k = static_cast<long long>(std::ceil(t - 1e-9));
  return std::clamp<long long>(k, 0, n);
}

int wait_set_size(int n, double c) {
  return static_cast<int>(wait_count(n, c));
}

std::vector<vertex_t> dfs_closed_walk(const spanning_tree& t) {
  std::vector<vertex_t> walk;
  walk.reserve(2 * t.n() - 1);
  walk.push_back(t.root);
  std::vector<std::pair<vertex_t, std::size_t>> stack;
  stack.emplace_back(t.root, 0);
  while (!stack.empty()) {
    auto& [v, child_idx] = stack.back();
    if (child_idx < t.children[v].size()) {
      vertex_t child = t.children[v][child_idx++];
      walk.push_back(child);
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().first);
    }
  }
  return walk;
}

std::vector<vertex_t> sample_wait_set(int n, double c, rng64& rng) {
  const int k = wait_set_size(n, c);
  std::vector<vertex_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<vertex_t> augment_walk(std::span<const vertex_t> walk,
                                   std::span<const vertex_t> wait_sorted,
                                   std::span<const vertex_t> leaves_sorted) {
  std::vector<vertex_t> out;
  out.reserve(walk.size() + wait_sorted.size());
  for (vertex_t v : walk) {
    out.push_back(v);
    if (std::binary_search(wait_sorted.begin(), wait_sorted.end(), v) &&
        std::binary_search(leaves_sorted.begin(), leaves_sorted.end(), v))
      out.push_back(v);
  }
  return out;
}

sweep_walk orient(sweep_walk w, sweep_direction direction) {
  w.direction = direction;
  if (direction == sweep_direction::backward)
    std::reverse(w.visits.begin(), w.visits.end());
  return w;
}

sweep_context make_sweep_context(const graph& g, const strategy_config& cfg) {
  sweep_context ctx;
  ctx.cfg = cfg;
  ctx.n = g.n();
  ctx.tree = bfs_spanning_tree(g, cfg.root);
  ctx.base_walk = dfs_closed_walk(ctx.tree);
  ctx.leaf_list = leaves(ctx.tree);
  ctx.leaf_mask.assign(ctx.n, 0);
  for (vertex_t v : ctx.leaf_list) ctx.leaf_mask[v] = 1;
  ctx.base_count.assign(ctx.n, 0);
  for (vertex_t v : ctx.base_walk) ++ctx.base_count[v];
  ctx.wait_size = wait_set_size(ctx.n, cfg.wait_fraction);
  return ctx;
}

sweep_walk build_sweep(const sweep_context& ctx, rng64& rng) {
  sweep_walk w;
  w.root = ctx.tree.root;
  w.wait_set = sample_wait_set(ctx.n, ctx.cfg.wait_fraction, rng);
  w.visits = augment_walk(ctx.base_walk, w.wait_set, ctx.leaf_list);
  const auto direction =
      rng.next_coin() ? sweep_direction::backward : sweep_direction::forward;
  return orient(std::move(w), direction);
}

sweep_walk build_sweep(const spanning_tree& t, const strategy_config& cfg, rng64& rng) {
  sweep_walk w;
  w.root = t.root;
  w.wait_set = sample_wait_set(t.n(), cfg.wait_fraction, rng);
  w.visits = augment_walk(dfs_closed_walk(t), w.wait_set, leaves(t));
  const auto direction =
      rng.next_coin() ? sweep_direction::backward : sweep_direction::forward;
  return orient(std::move(w), direction);
}

}  // namespace pursuit
