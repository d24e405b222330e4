#include "pursuit/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pursuit {

namespace {

// Compensated accumulator; enumeration order is fixed, so results are
// deterministic, and compensation keeps them accurate over many variants.
struct kahan {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

constexpr int kLogSpaceThreshold = 64;

double product_from_counts(std::span<const int> count, std::span<const double> probs) {
  const int n = static_cast<int>(probs.size());
  if (n > kLogSpaceThreshold) {
    double log_sum = 0.0;
    for (int v = 0; v < n; ++v) {
      if (count[v] == 0) continue;
      const double s = 1.0 - probs[v];
      if (s <= 0.0) return 0.0;
      log_sum += count[v] * std::log1p(-probs[v]);
    }
    return std::exp(log_sum);
  }
  double prod = 1.0;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < count[v]; ++i) prod *= 1.0 - probs[v];
  return prod;
}

// Forward/backward sequential pass: first-capture mass and sum of t * P(t).
struct capture_accum {
  double mass = 0.0;
  double turn_weighted = 0.0;
};

template <class It>
capture_accum capture_pass(It first, It last, std::span<const double> probs) {
  capture_accum acc;
  double survival = 1.0;
  long long t = 0;
  for (It it = first; it != last; ++it) {
    ++t;
    const double p = probs[*it];
    const double hit = survival * p;
    acc.mass += hit;
    acc.turn_weighted += static_cast<double>(t) * hit;
    survival *= 1.0 - p;
  }
  return acc;
}

struct variant_accum {
  kahan evasion;            // sum w * q
  kahan evade_len;          // sum w * q * L
  kahan capture_mass;       // sum w * (per-walk capture mass)
  kahan capture_turns;      // sum w * (per-walk sum of t * P(t))
  double weight_total = 0.0;
};

void accumulate_directed(variant_accum& acc, std::span<const vertex_t> visits,
                         double q, double weight, std::span<const double> probs,
                         bool backward) {
  const auto len = static_cast<double>(visits.size());
  capture_accum cap =
      backward ? capture_pass(visits.rbegin(), visits.rend(), probs)
               : capture_pass(visits.begin(), visits.end(), probs);
  acc.evasion.add(weight * q);
  acc.evade_len.add(weight * q * len);
  acc.capture_mass.add(weight * cap.mass);
  acc.capture_turns.add(weight * cap.turn_weighted);
  acc.weight_total += weight;
}

policy_stats finish(const variant_accum& acc, aggregate_kind kind,
                    std::uint64_t variants, double stderr_evasion) {
  policy_stats stats;
  stats.kind = kind;
  stats.variants = variants;
  stats.stderr_evasion = stderr_evasion;
  stats.mean_evasion = acc.evasion.sum;
  stats.mean_len_given_evade =
      stats.mean_evasion > 0.0 ? acc.evade_len.sum / stats.mean_evasion : 0.0;
  stats.mean_turn_given_capture =
      acc.capture_mass.sum > 0.0 ? acc.capture_turns.sum / acc.capture_mass.sum : 0.0;
  return stats;
}

}  // namespace

double sweep_evasion_prob(std::span<const vertex_t> visits, std::span<const double> probs) {
  std::vector<int> count(probs.size(), 0);
  for (vertex_t v : visits) ++count[v];
  return product_from_counts(count, probs);
}

double sweep_evasion_prob(const sweep_walk& w, const gambler_distribution& d) {
  return sweep_evasion_prob(w.visits, d.probs());
}

sweep_stats analyze_sweep(std::span<const vertex_t> visits, std::span<const double> probs) {
  if (visits.empty()) raise(errc::invalid_parameter, "empty walk");
  sweep_stats stats;
  stats.length = static_cast<int>(visits.size());
  stats.evasion_prob = sweep_evasion_prob(visits, probs);
  const capture_accum cap = capture_pass(visits.begin(), visits.end(), probs);
  stats.capture_mass = cap.mass;
  if (cap.mass > 0.0) stats.mean_capture_turn = cap.turn_weighted / cap.mass;
  return stats;
}

std::optional<std::uint64_t> enumeration_size(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return std::nullopt;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > (static_cast<unsigned __int128>(1) << 100)) return std::nullopt;
  }
  c *= 2;  // forward and backward
  if (c > cap) return std::nullopt;
  return static_cast<std::uint64_t>(c);
}

void for_each_combination(int n, int k,
                          const std::function<void(std::span<const vertex_t>)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<vertex_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

policy_stats policy_sweep_aggregate(const sweep_context& ctx,
                                    std::span<const double> probs,
                                    const aggregate_mode& mode) {
  if (static_cast<int>(probs.size()) != ctx.n)
    raise(errc::invalid_parameter, "distribution size does not match graph");

  variant_accum acc;

  if (mode.kind == aggregate_kind::enumerated) {
    const auto variants = enumeration_size(ctx.n, ctx.wait_size, mode.budget);
    if (!variants)
      raise(errc::budget_exceeded,
            "enumeration of wait sets exceeds the budget; use sampled mode");
    // The base walk's survival product is shared by every variant; each wait
    // set only multiplies in one extra factor per duplicated leaf.
    const double base_q = product_from_counts(ctx.base_count, probs);
    const double weight = 1.0 / static_cast<double>(*variants);
    std::vector<vertex_t> walk_buf;
    walk_buf.reserve(ctx.max_len());
    for_each_combination(ctx.n, ctx.wait_size, [&](std::span<const vertex_t> wait) {
      walk_buf.clear();
      double q = base_q;
      for (vertex_t v : ctx.base_walk) {
        walk_buf.push_back(v);
        if (ctx.leaf_mask[v] &&
            std::binary_search(wait.begin(), wait.end(), v)) {
          walk_buf.push_back(v);
          q *= 1.0 - probs[v];
        }
      }
      accumulate_directed(acc, walk_buf, q, weight, probs, /*backward=*/false);
      accumulate_directed(acc, walk_buf, q, weight, probs, /*backward=*/true);
    });
    return finish(acc, aggregate_kind::enumerated, *variants, 0.0);
  }

  if (mode.samples < 1) raise(errc::invalid_parameter, "sampled mode needs samples >= 1");
  const double weight = 1.0 / static_cast<double>(mode.samples);
  double mean_q = 0.0, m2_q = 0.0;
  for (int s = 0; s < mode.samples; ++s) {
    rng64 rng = rng64::substream(mode.seed, static_cast<std::uint64_t>(s));
    const sweep_walk w = build_sweep(ctx, rng);
    const double q = sweep_evasion_prob(w.visits, probs);
    accumulate_directed(acc, w.visits, q, weight, probs, /*backward=*/false);
    const double delta = q - mean_q;
    mean_q += delta / (s + 1);
    m2_q += delta * (q - mean_q);
  }
  double se = 0.0;
  if (mode.samples > 1)
    se = std::sqrt(m2_q / (mode.samples - 1) / mode.samples);
  return finish(acc, aggregate_kind::sampled,
                static_cast<std::uint64_t>(mode.samples), se);
}

policy_stats policy_sweep_aggregate(const graph& g, const strategy_config& cfg,
                                    const gambler_distribution& d,
                                    const aggregate_mode& mode) {
  return policy_sweep_aggregate(make_sweep_context(g, cfg), d.probs(), mode);
}

exact_capture_time expected_capture_time(const sweep_context& ctx,
                                         std::span<const double> probs,
                                         const aggregate_mode& mode) {
  if (!ctx.cfg.resample_wait_set || !ctx.cfg.resample_direction)
    raise(errc::non_iid_sweeps,
          "composition formula needs fresh wait set and coin every sweep");
  const policy_stats stats = policy_sweep_aggregate(ctx, probs, mode);
  if (stats.mean_evasion >= 1.0)
    raise(errc::degenerate_evasion, "evasion is certain; capture time diverges");
  exact_capture_time out;
  out.expected_failed_turns = stats.mean_evasion / (1.0 - stats.mean_evasion) *
                              stats.mean_len_given_evade;
  out.expected_success_turns = stats.mean_turn_given_capture;
  out.value = out.expected_failed_turns + out.expected_success_turns;
  return out;
}

exact_capture_time expected_capture_time(const graph& g, const strategy_config& cfg,
                                         const gambler_distribution& d,
                                         const aggregate_mode& mode) {
  return expected_capture_time(make_sweep_context(g, cfg), d.probs(), mode);
}

}  // namespace pursuit
