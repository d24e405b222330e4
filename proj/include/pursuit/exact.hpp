#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "pursuit/gambler.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/sweep.hpp"

namespace pursuit {

// Capture statistics of one fixed walk against one fixed distribution.
struct sweep_stats {
  double evasion_prob = 0.0;  // product of per-turn survival factors
  int length = 0;
  double capture_mass = 0.0;  // sums with evasion_prob to 1 up to rounding
  // E[capture turn | capture]; empty when capture is impossible (the
  // conditional is undefined, which is reported rather than fabricated).
  std::optional<double> mean_capture_turn;
};

// Survival product over the visit multiset: prod_v (1-p_v)^{count_v}.
// Count-based, so it is exactly invariant under reversal of the walk.
// Uses log-space accumulation when n > 64 to avoid underflow.
double sweep_evasion_prob(std::span<const vertex_t> visits, std::span<const double> probs);
double sweep_evasion_prob(const sweep_walk& w, const gambler_distribution& d);

// P(first capture at turn t) = p_{v_t} * prod_{s<t}(1 - p_{v_s}).
sweep_stats analyze_sweep(std::span<const vertex_t> visits, std::span<const double> probs);

enum class aggregate_kind : std::uint8_t { enumerated, sampled };

// How per-sweep statistics are averaged over the strategy's randomness:
// exact enumeration of every (wait set, direction) pair, or a seeded sample.
struct aggregate_mode {
  aggregate_kind kind = aggregate_kind::enumerated;
  std::uint64_t budget = 1'000'000;  // max variants accepted for enumeration
  int samples = 100'000;
  std::uint64_t seed = 0;

  static aggregate_mode enumerated(std::uint64_t budget = 1'000'000) {
    return {aggregate_kind::enumerated, budget, 0, 0};
  }
  static aggregate_mode sampled(int samples, std::uint64_t seed) {
    return {aggregate_kind::sampled, 0, samples, seed};
  }
};

// Number of (wait set, direction) variants, i.e. 2*C(n,k), or nullopt when
// it exceeds `cap`.
std::optional<std::uint64_t> enumeration_size(int n, int k, std::uint64_t cap);

// Visits every k-subset of {0..n-1} in lexicographic order.
void for_each_combination(int n, int k,
                          const std::function<void(std::span<const vertex_t>)>& fn);

struct policy_stats {
  double mean_evasion = 0.0;            // q̄ over the strategy's randomness
  double mean_len_given_evade = 0.0;    // 0 when evasion is impossible
  double mean_turn_given_capture = 0.0;
  aggregate_kind kind = aggregate_kind::enumerated;
  std::uint64_t variants = 0;           // enumerated pairs or drawn samples
  double stderr_evasion = 0.0;          // sampled mode only
};

// Averages analyze_sweep over the strategy's randomness. Enumerated mode
// throws budget_exceeded when 2*C(n, ceil(cn)) > budget (use sampled mode).
policy_stats policy_sweep_aggregate(const sweep_context& ctx,
                                    std::span<const double> probs,
                                    const aggregate_mode& mode);
policy_stats policy_sweep_aggregate(const graph& g, const strategy_config& cfg,
                                    const gambler_distribution& d,
                                    const aggregate_mode& mode);

struct exact_capture_time {
  double value = 0.0;
  double expected_failed_turns = 0.0;   // turns spent in evaded sweeps
  double expected_success_turns = 0.0;  // capture turn within the final sweep
};

// Expected total capture time for i.i.d. sweeps:
//   q̄/(1-q̄) failed sweeps on average, each of expected length E[L | evade],
//   plus E[capture turn | capture] inside the successful sweep.
// Throws non_iid_sweeps unless both resample flags are set, and
// degenerate_evasion when q̄ = 1.
exact_capture_time expected_capture_time(const sweep_context& ctx,
                                         std::span<const double> probs,
                                         const aggregate_mode& mode);
exact_capture_time expected_capture_time(const graph& g, const strategy_config& cfg,
                                         const gambler_distribution& d,
                                         const aggregate_mode& mode);

}  // namespace pursuit
