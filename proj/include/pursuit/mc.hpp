#pragma once

#include <cstdint>
#include <vector>

#include "pursuit/exact.hpp"
#include "pursuit/gambler.hpp"
#include "pursuit/sweep.hpp"

namespace pursuit {

struct capture_estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample stdev / sqrt(trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t min_turns = 0;
  std::uint32_t max_turns = 0;
};

// Reusable per-worker buffers for the simulation inner loop.
struct mc_scratch {
  std::vector<vertex_t> pool;
  std::vector<std::uint8_t> dup_mask;
};

// Plays one full game and returns the 1-based capture turn; turn 1 is the
// cop's initial placement. Aborts with non_termination past 10^9 turns.
std::uint32_t simulate_capture(const sweep_context& ctx, const gambler_distribution& d,
                               rng64& rng, mc_scratch& scratch);
std::uint32_t simulate_capture(const graph& g, const strategy_config& cfg,
                               const gambler_distribution& d, rng64& rng);

// i.i.d. trials with per-trial substreams keyed on (seed, trial index), so
// the estimate is identical for any worker count. Reduction runs over trials
// in index order (Welford), then std_error = stdev / sqrt(trials).
capture_estimate estimate_expected_capture(const graph& g, const strategy_config& cfg,
                                           const gambler_distribution& d,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int workers = 1);

}  // namespace pursuit
