#include "pursuit/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace pursuit {

namespace {

// Per-variant view of the sweep set: every variant shares the base walk's
// visit counts and adds one extra visit per duplicated leaf.
struct evasion_model {
  int n = 0;
  std::vector<int> base_count;
  std::vector<std::vector<vertex_t>> extras;

  double weight() const { return 1.0 / static_cast<double>(extras.size()); }

  double base_product(std::span<const double> p, int skip = -1) const {
    if (n > 64) {
      double log_sum = 0.0;
      for (int v = 0; v < n; ++v) {
        if (v == skip || base_count[v] == 0) continue;
        const double s = 1.0 - p[v];
        if (s <= 0.0) return 0.0;
        log_sum += base_count[v] * std::log1p(-p[v]);
      }
      return std::exp(log_sum);
    }
    double prod = 1.0;
    for (int v = 0; v < n; ++v) {
      if (v == skip) continue;
      for (int i = 0; i < base_count[v]; ++i) prod *= 1.0 - p[v];
    }
    return prod;
  }

  double value(std::span<const double> p) const {
    const double base = base_product(p);
    if (base == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& extra : extras) {
      double q = base;
      for (vertex_t v : extra) q *= 1.0 - p[v];
      sum += q;
    }
    return sum * weight();
  }

  void value_and_grad(std::span<const double> p, double& val,
                      std::vector<double>& grad) const {
    grad.assign(n, 0.0);
    int zero_vertex = -1;
    int zero_count = 0;
    for (int v = 0; v < n; ++v) {
      if (1.0 - p[v] <= 0.0) {
        zero_vertex = v;
        ++zero_count;
      }
    }
    if (zero_count >= 2) {  // every walk visits both, so value and grad vanish
      val = 0.0;
      return;
    }
    if (zero_count == 1) {
      val = 0.0;
      const int z = zero_vertex;
      if (base_count[z] > 1) return;  // (1-p_z)^{m-1} still vanishes
      const double rest = base_product(p, z);
      double slope = 0.0;
      for (const auto& extra : extras) {
        if (std::binary_search(extra.begin(), extra.end(), z)) continue;
        double q = rest;
        for (vertex_t v : extra) q *= 1.0 - p[v];
        slope -= q;
      }
      grad[z] = slope * weight();
      return;
    }

    const double base = base_product(p);
    std::vector<double> score(n, 0.0);  // sum_w π q_w [v duplicated in w]
    double sum = 0.0;
    for (const auto& extra : extras) {
      double q = base;
      for (vertex_t v : extra) q *= 1.0 - p[v];
      sum += q;
      for (vertex_t v : extra) score[v] += q;
    }
    val = sum * weight();
    for (int v = 0; v < n; ++v)
      grad[v] = -(base_count[v] * val + score[v] * weight()) / (1.0 - p[v]);
  }
};

evasion_model build_model(const sweep_context& ctx, const aggregate_mode& mode) {
  evasion_model m;
  m.n = ctx.n;
  m.base_count = ctx.base_count;
  if (mode.kind == aggregate_kind::enumerated) {
    if (!enumeration_size(ctx.n, ctx.wait_size, mode.budget))
      raise(errc::budget_exceeded,
            "enumeration of wait sets exceeds the budget; use sampled mode");
    for_each_combination(ctx.n, ctx.wait_size, [&](std::span<const vertex_t> wait) {
      std::vector<vertex_t> extra;
      for (vertex_t v : wait)
        if (ctx.leaf_mask[v]) extra.push_back(v);
      m.extras.push_back(std::move(extra));
    });
  } else {
    if (mode.samples < 1) raise(errc::invalid_parameter, "need samples >= 1");
    m.extras.reserve(mode.samples);
    for (int s = 0; s < mode.samples; ++s) {
      rng64 rng = rng64::substream(mode.seed, static_cast<std::uint64_t>(s));
      const sweep_walk w = build_sweep(ctx, rng);
      std::vector<vertex_t> extra;
      for (vertex_t v : w.wait_set)
        if (ctx.leaf_mask[v]) extra.push_back(v);
      m.extras.push_back(std::move(extra));
    }
  }
  return m;
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

using objective_fn = std::function<double(std::span<const double>)>;
using gradient_fn =
    std::function<void(std::span<const double>, double&, std::vector<double>&)>;

struct ascent_outcome {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  double map_norm = 0.0;
};

ascent_outcome ascend(const objective_fn& f, const gradient_fn& fg,
                      std::vector<double> x0, int max_iters) {
  std::vector<double> x = project_to_simplex(std::move(x0));
  double fx = 0.0;
  std::vector<double> g;
  std::vector<double> candidate(x.size());
  int it = 0;
  double map_norm = 0.0;
  for (; it < max_iters; ++it) {
    fg(x, fx, g);
    for (std::size_t i = 0; i < x.size(); ++i) candidate[i] = x[i] + g[i];
    const std::vector<double> mapped = project_to_simplex(candidate);
    map_norm = l2_distance(mapped, x);
    if (map_norm < 1e-8) break;

    double step = 1.0;
    bool moved = false;
    while (step >= 1e-12) {
      for (std::size_t i = 0; i < x.size(); ++i) candidate[i] = x[i] + step * g[i];
      std::vector<double> next = project_to_simplex(candidate);
      const double fn = f(next);
      if (fn > fx) {
        x = std::move(next);
        fx = fn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // stationary up to line-search resolution
  }
  fg(x, fx, g);
  for (std::size_t i = 0; i < x.size(); ++i) candidate[i] = x[i] + g[i];
  map_norm = l2_distance(project_to_simplex(candidate), x);
  return {std::move(x), fx, it, map_norm};
}

// Start points: uniform, point masses at the least-visited vertices (the
// most promising hiding spots), then Dirichlet(1) draws.
std::vector<std::vector<double>> start_points(const sweep_context& ctx,
                                              int restarts, std::uint64_t seed) {
  const int n = ctx.n;
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / n);

  std::vector<vertex_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) {
    return ctx.base_count[a] < ctx.base_count[b];
  });
  const int masses = std::min<int>(n, std::max(0, (restarts - 1) / 2));
  for (int i = 0; i < masses; ++i) {
    std::vector<double> x(n, 0.0);
    x[order[i]] = 1.0;
    starts.push_back(std::move(x));
  }
  for (int r = static_cast<int>(starts.size()); r < restarts; ++r) {
    rng64 rng = rng64::substream(seed, 0x5eedull + r);
    std::vector<double> x(n);
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
      x[v] = -std::log1p(-rng.next_double());
      total += x[v];
    }
    for (double& xv : x) xv /= total;
    starts.push_back(std::move(x));
  }
  starts.resize(std::min<std::size_t>(starts.size(), std::max(restarts, 1)));
  return starts;
}

adversary_result run_restarts(const sweep_context& ctx, const objective_fn& f,
                              const gradient_fn& fg, const adversary_options& opt,
                              adversary_objective kind) {
  const auto starts = start_points(ctx, opt.restarts, opt.seed);
  adversary_result result;
  result.kind = kind;
  result.seed = opt.seed;
  result.restarts = static_cast<int>(starts.size());
  bool have_best = false;
  for (const auto& x0 : starts) {
    ascent_outcome out = ascend(f, fg, x0, opt.max_iters);
    if (!have_best || out.value > result.best_objective) {
      have_best = true;
      result.best_objective = out.value;
      result.iterations = out.iterations;
      result.grad_norm = out.map_norm;
      result.best_distribution = gambler_distribution::from_weights(out.x);
    }
  }
  return result;
}

}  // namespace

std::vector<double> project_to_simplex(std::vector<double> y) {
  const std::size_t n = y.size();
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<>());
  double prefix = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prefix += u[i];
    const double t = (prefix - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (double& v : y) v = std::max(0.0, v - theta);
  // One exact renormalization pass guards against accumulated rounding.
  double total = std::accumulate(y.begin(), y.end(), 0.0);
  if (total > 0.0)
    for (double& v : y) v /= total;
  return y;
}

objective_eval evasion_objective(const sweep_context& ctx,
                                 std::span<const double> probs,
                                 const aggregate_mode& mode) {
  if (static_cast<int>(probs.size()) != ctx.n)
    raise(errc::invalid_parameter, "distribution size does not match graph");
  const evasion_model model = build_model(ctx, mode);
  objective_eval out;
  model.value_and_grad(probs, out.value, out.gradient);
  out.gradient_tangent = out.gradient;
  const double mean = std::accumulate(out.gradient.begin(), out.gradient.end(), 0.0) /
                      static_cast<double>(ctx.n);
  for (double& g : out.gradient_tangent) g -= mean;
  return out;
}

objective_eval evasion_objective(const graph& g, const strategy_config& cfg,
                                 const gambler_distribution& d,
                                 const aggregate_mode& mode) {
  return evasion_objective(make_sweep_context(g, cfg), d.probs(), mode);
}

adversary_result maximize_evasion(const graph& g, const strategy_config& cfg,
                                  const adversary_options& opt) {
  const sweep_context ctx = make_sweep_context(g, cfg);
  const evasion_model model = build_model(ctx, opt.mode);
  objective_fn f = [&model](std::span<const double> p) { return model.value(p); };
  gradient_fn fg = [&model](std::span<const double> p, double& v,
                            std::vector<double>& grad) {
    model.value_and_grad(p, v, grad);
  };
  return run_restarts(ctx, f, fg, opt, adversary_objective::sweep_evasion);
}

adversary_result maximize_capture_time(const graph& g, const strategy_config& cfg,
                                       const adversary_options& opt) {
  const sweep_context ctx = make_sweep_context(g, cfg);
  objective_fn f = [&ctx, &opt](std::span<const double> p) {
    return expected_capture_time(ctx, p, opt.mode).value;
  };
  gradient_fn fg = [&ctx, &opt, &f](std::span<const double> p, double& v,
                                    std::vector<double>& grad) {
    v = f(p);
    const std::size_t n = p.size();
    grad.assign(n, 0.0);
    std::vector<double> probe(p.begin(), p.end());
    constexpr double h = 1e-6;
    for (std::size_t i = 0; i < n; ++i) {
      const double up = std::min(h, 1.0 - p[i]);
      const double down = std::min(h, p[i]);
      if (up + down <= 0.0) continue;
      probe[i] = p[i] + up;
      const double f_up = f(probe);
      probe[i] = p[i] - down;
      const double f_down = f(probe);
      probe[i] = p[i];
      grad[i] = (f_up - f_down) / (up + down);
    }
  };
  return run_restarts(ctx, f, fg, opt, adversary_objective::capture_time);
}

}  // namespace pursuit
