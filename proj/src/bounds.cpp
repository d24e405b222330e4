#include "pursuit/bounds.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "pursuit/sweep.hpp"

namespace pursuit {

namespace {

constexpr double kDefaultWaitFraction = 0.72912;
constexpr double kCaseMaxEvasion = 0.17745;
constexpr double kPairThreshold = 0.732;

// Golden-section minimization on [lo, hi]; assumes unimodality there.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Coarse grid scan to bracket the best point, then golden refinement. Works
// for functions that are only piecewise unimodal.
unimodal_opt grid_golden_max(const std::function<double(double)>& f, double lo,
                             double hi, int grid_points, double tol) {
  double best_x = lo, best_f = f(lo);
  const double step = (hi - lo) / (grid_points - 1);
  int best_i = 0;
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + i * step;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
      best_i = i;
    }
  }
  const double a = lo + std::max(0, best_i - 1) * step;
  const double b = lo + std::min(grid_points - 1, best_i + 1) * step;
  const double x = golden_min([&](double t) { return -f(t); }, a, b, tol);
  const double fx = f(x);
  if (fx >= best_f) return {x, fx};
  return {best_x, best_f};
}

}  // namespace

double pair_survival(double p_i, double p_j) {
  if (!(p_i >= 0.0 && p_i <= 1.0 && p_j >= 0.0 && p_j <= 1.0))
    raise(errc::domain_error, "probabilities must lie in [0,1]");
  const double a = 1.0 - p_i;
  const double b = 1.0 - p_j;
  return a * a * b * b;
}

unimodal_opt pair_survival_max(double threshold) {
  if (!(threshold > 0.0 && threshold <= 2.0))
    raise(errc::domain_error, "threshold must lie in (0,2]");
  auto g = [threshold](double p) {
    const double u = 1.0 - p;
    const double v = 1.0 - threshold + p;
    return u * u * v * v;
  };
  return grid_golden_max(g, 0.0, 1.0, 4097, 1e-9);
}

double evasion_cap(double c) {
  if (c < 0.0 || c > 1.0) raise(errc::domain_error, "wait fraction must be in [0,1]");
  return std::exp(-(1.0 + c));
}

double finite_evasion_cap(long long n, double c) {
  if (n < 1) raise(errc::domain_error, "need n >= 1");
  const double base = 1.0 - 1.0 / static_cast<double>(n);
  const auto exponent = static_cast<double>(n + wait_count(n, c));
  return std::pow(base, exponent);
}

double capture_time_coefficient(double x) {
  if (!(x > 1.0)) raise(errc::domain_error, "coefficient defined for x > 1");
  return x / (1.0 - std::exp(1.0 - x)) - 0.5 * x;
}

coefficient_opt minimize_capture_coefficient() {
  const double x = golden_min([](double t) { return capture_time_coefficient(t); },
                              1.0 + 1e-9, 100.0, 1e-9);
  return {x, capture_time_coefficient(x), x - 2.0};
}

namespace {

double composition_evasion(double c, double finite_cap) {
  // The default fraction reproduces the published case-max constant exactly;
  // other fractions take the larger of the two cases.
  if (std::abs(c - kDefaultWaitFraction) < 1e-12) return kCaseMaxEvasion;
  return std::max(pair_survival_max(kPairThreshold).value, finite_cap);
}

}  // namespace

bound_terms overall_bound(long long n, double c) {
  if (n < 1) raise(errc::domain_error, "need n >= 1");
  const double sweep_len =
      static_cast<double>(1 + 2 * (n - 1) + wait_count(n, c));
  const double q = composition_evasion(c, finite_evasion_cap(n, c));
  const double expected_sweeps = 1.0 / (1.0 - q);
  bound_terms t;
  t.e_x = sweep_len * (expected_sweeps - 1.0);
  t.e_y = 0.5 * sweep_len;
  t.total = t.e_x + t.e_y;
  t.coefficient = t.total / static_cast<double>(n);
  return t;
}

quad_argmax pair_split_argmax(double a, double f11, double f12, double f22) {
  if (a < 0.0 || a > 1.0) raise(errc::domain_error, "total mass must lie in [0,1]");
  if (f11 < 0.0 || f12 < 0.0 || f22 < 0.0)
    raise(errc::domain_error, "conditional weights must be nonnegative");
  if (a >= kPairThreshold && f22 > 0.0)
    raise(errc::invalid_case,
          "a twice-visited pair with mass >= 0.732 contradicts f22 > 0");

  auto p = [=](double pi) {
    const double u = 1.0 - pi;
    const double v = 1.0 - a + pi;
    return u * v * f11 + u * u * v * f12 + u * v * v * f12 + u * u * v * v * f22;
  };
  // Second derivative: -2 f11 + 2(a-2) f12 + (12(pi - a/2)^2 - (a-2)^2) f22,
  // convex in pi, so its maximum over [0,a] sits at the endpoints.
  auto second = [=](double pi) {
    const double s = pi - 0.5 * a;
    const double am2 = a - 2.0;
    return -2.0 * f11 + 2.0 * am2 * f12 + (12.0 * s * s - am2 * am2) * f22;
  };

  quad_argmax out;
  out.concave = second(0.0) <= 1e-12 && second(a) <= 1e-12;
  if (a == 0.0) {
    out.argmax = 0.0;
    return out;
  }
  const unimodal_opt best = grid_golden_max(p, 0.0, a, 2001, 1e-10);
  out.argmax = best.arg;
  return out;
}

bound_report make_bound_report(double c) {
  bound_report r;
  r.wait_fraction = c;
  const unimodal_opt pair = pair_survival_max(kPairThreshold);
  r.pair_argmax = pair.arg;
  r.pair_max = pair.value;
  r.evasion_cap_value = evasion_cap(c);
  r.case_max_evasion = std::abs(c - kDefaultWaitFraction) < 1e-12
                           ? kCaseMaxEvasion
                           : std::max(pair.value, r.evasion_cap_value);
  r.expected_sweeps = 1.0 / (1.0 - r.case_max_evasion);
  const double len_coeff = 2.0 + c;  // limit of (2n - 1 + ceil(cn)) / n
  r.e_x_coeff = len_coeff * (r.expected_sweeps - 1.0);
  r.e_y_coeff = 0.5 * len_coeff;
  r.total_coeff = r.e_x_coeff + r.e_y_coeff;
  const coefficient_opt opt = minimize_capture_coefficient();
  r.x_star = opt.x_star;
  r.f_star = opt.f_star;
  r.c_star = opt.c_star;
  return r;
}

}  // namespace pursuit
