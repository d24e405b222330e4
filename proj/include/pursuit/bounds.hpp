#pragma once

#include "pursuit/errors.hpp"

namespace pursuit {

// Numeric reproduction of the analysis behind the sweep strategy: the
// worst-case survival of a heavy twice-visited vertex pair, the per-sweep
// evasion cap, the expected sweep count, the capture-time coefficient as a
// function of the sweep-length coefficient, and its minimizer (which is what
// the default wait fraction 0.72912 comes from).

struct bound_report {
  double wait_fraction = 0.0;     // c the report was computed for
  double pair_argmax = 0.0;       // maximizer of (1-p)^2 (1-a0+p)^2, a0=0.732
  double pair_max = 0.0;
  double evasion_cap_value = 0.0;     // e^{-(1+c)}
  double case_max_evasion = 0.0;      // evasion value used in the composition
  double expected_sweeps = 0.0;       // 1 / (1 - case_max_evasion)
  double e_x_coeff = 0.0;             // failed-sweep turns per vertex
  double e_y_coeff = 0.0;             // successful-sweep turns per vertex
  double total_coeff = 0.0;           // e_x_coeff + e_y_coeff
  double x_star = 0.0;                // minimizer of capture_time_coefficient
  double f_star = 0.0;                // its minimum
  double c_star = 0.0;                // induced wait fraction, x_star - 2
};

// (1-p_i)^2 (1-p_j)^2: survival of two twice-visited vertices.
// Throws domain_error outside [0,1]^2.
double pair_survival(double p_i, double p_j);

struct unimodal_opt {
  double arg = 0.0;
  double value = 0.0;
};

// max over p in [0,1] of (1-p)^2 (1-threshold+p)^2, the worst survival of a
// twice-visited pair with total mass >= threshold. Grid scan plus
// golden-section refinement to 1e-9 in the argument.
unimodal_opt pair_survival_max(double threshold = 0.732);

// Limit per-sweep evasion cap e^{-(1+c)}.
double evasion_cap(double c);

// Finite-n per-sweep evasion cap (1 - 1/n)^{n + ceil(c n)} for the uniform
// distribution; increases to evasion_cap(c) as n grows.
double finite_evasion_cap(long long n, double c);

// Worst-case expected capture-time coefficient x/(1-e^{1-x}) - x/2 for a
// sweep-length coefficient x. Throws domain_error for x <= 1.
double capture_time_coefficient(double x);

struct coefficient_opt {
  double x_star = 0.0;
  double f_star = 0.0;
  double c_star = 0.0;  // x_star - 2: wait fraction realizing the optimum
};

// Golden-section minimization of capture_time_coefficient on [1+1e-9, 100]
// to 1e-9 in the argument.
coefficient_opt minimize_capture_coefficient();

struct bound_terms {
  double e_x = 0.0;    // expected turns across failed sweeps
  double e_y = 0.0;    // expected turns in the successful sweep
  double total = 0.0;
  double coefficient = 0.0;  // total / n
};

// Composition at finite n: sweep length 1 + 2(n-1) + ceil(cn), case-max
// per-sweep evasion, expected sweeps, and the E(X) + E(Y) split.
bound_terms overall_bound(long long n, double c);

struct quad_argmax {
  double argmax = 0.0;
  bool concave = false;
};

// Evasion of a two-vertex mass split: with p_i + p_j = a fixed, evaluates
//   p(p_i) = u v f11 + u^2 v f12 + u v^2 f12 + u^2 v^2 f22,
//   u = 1 - p_i, v = 1 - a + p_i,
// over p_i in [0, a] (dense grid + golden refinement) and reports whether
// the second derivative stays <= 0. The f weights are free nonnegative
// conditional-probability aggregates; f22 must vanish when a >= 0.732
// (invalid_case otherwise), making the split always concave with the peak
// at the even split a/2.
quad_argmax pair_split_argmax(double a, double f11, double f12, double f22);

// Full report for wait fraction c. For the default c the composition uses
// the case-max evasion constant 0.17745; otherwise the larger of the pair
// bound and the evasion cap.
bound_report make_bound_report(double c = 0.72912);

}  // namespace pursuit
