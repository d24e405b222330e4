#include "pursuit/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace pursuit {

namespace {
constexpr std::uint64_t kTurnHorizon = 1'000'000'000ull;
}

std::uint32_t simulate_capture(const sweep_context& ctx, const gambler_distribution& d,
                               rng64& rng, mc_scratch& scratch) {
  const int n = ctx.n;
  const auto& base = ctx.base_walk;
  const int base_len = static_cast<int>(base.size());

  // Scratch is reset on entry so a trial's outcome only depends on its own
  // rng stream, never on which worker ran the previous trial.
  scratch.pool.resize(n);
  std::iota(scratch.pool.begin(), scratch.pool.end(), 0);
  scratch.dup_mask.assign(n, 0);

  std::uint64_t turn = 0;
  bool have_randomness = false;
  bool backward = false;

  for (;;) {
    if (!have_randomness || ctx.cfg.resample_wait_set) {
      std::fill(scratch.dup_mask.begin(), scratch.dup_mask.end(), 0);
      // Partial Fisher-Yates; the pool stays a permutation across sweeps,
      // which keeps the drawn subsets uniform without re-initialization.
      for (int i = 0; i < ctx.wait_size; ++i) {
        const auto j =
            i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(scratch.pool[i], scratch.pool[j]);
        const vertex_t u = scratch.pool[i];
        scratch.dup_mask[u] = ctx.leaf_mask[u];
      }
    }
    if (!have_randomness || ctx.cfg.resample_direction) backward = rng.next_coin();
    have_randomness = true;

    for (int i = 0; i < base_len; ++i) {
      const vertex_t v = base[backward ? base_len - 1 - i : i];
      const int stays = 1 + scratch.dup_mask[v];
      for (int s = 0; s < stays; ++s) {
        ++turn;
        if (d.sample(rng) == v) return static_cast<std::uint32_t>(turn);
        if (turn >= kTurnHorizon)
          raise(errc::non_termination, "no capture within the turn horizon");
      }
    }
  }
}

std::uint32_t simulate_capture(const graph& g, const strategy_config& cfg,
                               const gambler_distribution& d, rng64& rng) {
  const sweep_context ctx = make_sweep_context(g, cfg);
  mc_scratch scratch;
  return simulate_capture(ctx, d, rng, scratch);
}

capture_estimate estimate_expected_capture(const graph& g, const strategy_config& cfg,
                                           const gambler_distribution& d,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int workers) {
  if (trials < 1) raise(errc::invalid_parameter, "need at least one trial");
  const sweep_context ctx = make_sweep_context(g, cfg);

  workers = std::clamp(workers, 1, 256);
  std::vector<std::uint32_t> turns(trials);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    mc_scratch scratch;
    for (std::uint64_t t = begin; t < end; ++t) {
      rng64 rng = rng64::substream(seed, t);
      turns[t] = simulate_capture(ctx, d, rng, scratch);
    }
  };

  if (workers == 1 || trials < 2) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  capture_estimate est;
  est.trials = trials;
  est.seed = seed;
  est.min_turns = turns[0];
  est.max_turns = turns[0];
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double x = turns[i];
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
    est.min_turns = std::min(est.min_turns, turns[i]);
    est.max_turns = std::max(est.max_turns, turns[i]);
  }
  est.mean = mean;
  if (trials > 1)
    est.std_error = std::sqrt(m2 / static_cast<double>(trials - 1) /
                              static_cast<double>(trials));
  return est;
}

}  // namespace pursuit
