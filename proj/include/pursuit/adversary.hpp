#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pursuit/exact.hpp"
#include "pursuit/gambler.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/sweep.hpp"

namespace pursuit {

enum class adversary_objective : std::uint8_t { sweep_evasion, capture_time };

struct objective_eval {
  double value = 0.0;
  std::vector<double> gradient;          // raw partials dq̄/dp_i
  std::vector<double> gradient_tangent;  // projected onto the sum-zero tangent
};

// Mean per-sweep evasion q̄(p) and its analytic gradient,
//   dq̄/dp_i = -sum_w π_w m_{w,i} q_w / (1 - p_i),
// with m_{w,i} the visit count of i in walk w. Evaluated over the enumerated
// or sampled sweep set of `mode`; probs need not sum to one, which makes the
// partials checkable by plain central differences.
objective_eval evasion_objective(const sweep_context& ctx,
                                 std::span<const double> probs,
                                 const aggregate_mode& mode);
objective_eval evasion_objective(const graph& g, const strategy_config& cfg,
                                 const gambler_distribution& d,
                                 const aggregate_mode& mode);

struct adversary_options {
  int restarts = 8;
  int max_iters = 200;
  std::uint64_t seed = 0;
  aggregate_mode mode = aggregate_mode::enumerated();
};

struct adversary_result {
  gambler_distribution best_distribution;
  double best_objective = 0.0;
  adversary_objective kind = adversary_objective::sweep_evasion;
  int iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  // Norm of the projected gradient step ||P(x + g) - x|| at the solution.
  double grad_norm = 0.0;
};

// Projected gradient ascent on the probability simplex with backtracking
// line search (halving from step 1), multi-start from the uniform point,
// point masses, and Dirichlet(1) draws. Euclidean projection reaches the
// boundary exactly, where adversarial optima often sit.
adversary_result maximize_evasion(const graph& g, const strategy_config& cfg,
                                  const adversary_options& opt);

// Same ascent with exact expected capture time as the objective; gradient by
// central finite differences (step 1e-6, one-sided at the box boundary).
adversary_result maximize_capture_time(const graph& g, const strategy_config& cfg,
                                       const adversary_options& opt);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> y);

}  // namespace pursuit
