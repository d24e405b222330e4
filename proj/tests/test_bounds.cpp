#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pursuit/bounds.hpp"
#include "pursuit/rng.hpp"

using namespace pursuit;

TEST_CASE("pair survival values") {
  CHECK(pair_survival(0.0, 0.0) == 1.0);
  CHECK(pair_survival(1.0, 0.3) == 0.0);
  CHECK(pair_survival(0.366, 0.366) == doctest::Approx(0.16156863).epsilon(1e-6));
  CHECK_THROWS_AS(pair_survival(-0.1, 0.5), game_error);
  CHECK_THROWS_AS(pair_survival(0.5, 1.2), game_error);
}

TEST_CASE("pair survival maximum at the default threshold") {
  const unimodal_opt best = pair_survival_max(0.732);
  CHECK(best.arg == doctest::Approx(0.366).epsilon(1e-6));
  CHECK(best.value == doctest::Approx(0.16157).epsilon(1e-4));
  CHECK(best.value < 0.162);
}

TEST_CASE("pair survival maximum: degenerate threshold sits at the boundary") {
  const unimodal_opt best = pair_survival_max(2.0);
  CHECK(best.arg == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(best.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pair survival argmax is half the threshold when feasible") {
  rng64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const double a0 = 0.05 + 0.9 * rng.next_double();  // stays within (0,1]
    const unimodal_opt best = pair_survival_max(a0);
    CHECK(best.arg == doctest::Approx(a0 / 2).epsilon(1e-6));
  }
}

TEST_CASE("evasion cap closed forms") {
  CHECK(evasion_cap(0.72912) == std::exp(-1.72912));
  CHECK(evasion_cap(0.72912) < 0.17745);
  CHECK(evasion_cap(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(evasion_cap(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(evasion_cap(-0.2), game_error);
}

TEST_CASE("finite evasion cap") {
  CHECK(finite_evasion_cap(1, 0.72912) == 0.0);
  CHECK(finite_evasion_cap(4, 0.72912) ==
        doctest::Approx(std::pow(0.75, 7)).epsilon(1e-15));
  CHECK(std::abs(finite_evasion_cap(1'000'000, 0.72912) - evasion_cap(0.72912)) <=
        1e-5);
  for (long long n = 1; n <= 2000; n = n < 50 ? n + 1 : n * 2)
    CHECK(finite_evasion_cap(n, 0.72912) <= evasion_cap(0.72912));
}

TEST_CASE("capture-time coefficient values") {
  CHECK(capture_time_coefficient(2.72912) == doctest::Approx(1.95328).epsilon(1e-4));
  // 2/(1-e^-1) - 1, checked against a long-double evaluation
  const long double expect = 2.0L / (1.0L - std::exp(-1.0L)) - 1.0L;
  CHECK(capture_time_coefficient(2.0) ==
        doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
  CHECK(capture_time_coefficient(1.0 + 1e-9) > 1e6);
  CHECK_THROWS_AS(capture_time_coefficient(1.0), game_error);
  CHECK_THROWS_AS(capture_time_coefficient(0.5), game_error);
}

TEST_CASE("coefficient minimizer reproduces the strategy constants") {
  const coefficient_opt opt = minimize_capture_coefficient();
  CHECK(opt.x_star == doctest::Approx(2.72912).epsilon(1e-4));
  CHECK(opt.f_star == doctest::Approx(1.95328).epsilon(1e-4));
  CHECK(opt.c_star == doctest::Approx(0.72912).epsilon(1e-4));
  CHECK(capture_time_coefficient(2.5) > opt.f_star);
  CHECK(capture_time_coefficient(3.0) > opt.f_star);

  rng64 rng(8);
  for (int i = 0; i < 10'000; ++i) {
    const double x = 1.0 + 1e-6 + 99.0 * rng.next_double();
    CHECK(opt.f_star <= capture_time_coefficient(x) + 1e-12);
  }
}

TEST_CASE("overall bound composition") {
  for (long long n : {1LL, 8LL, 64LL, 1024LL, 4096LL}) {
    const bound_terms t = overall_bound(n, 0.72912);
    CHECK(t.total == doctest::Approx(t.e_x + t.e_y).epsilon(1e-15));
    CHECK(t.coefficient < 1.95335);
    CHECK(std::abs(t.coefficient - (0.58879 + 1.36456)) <=
          2e-5 + 2.0 / static_cast<double>(n));
    CHECK(t.total >= 1.0);
  }
  // plain DFS: the coefficient approaches the x = 2 cost
  const bound_terms plain = overall_bound(1'000'000, 0.0);
  CHECK(std::abs(plain.coefficient - capture_time_coefficient(2.0)) <= 2e-5 + 2e-6);
}

TEST_CASE("pair split argmax: worked examples") {
  const quad_argmax a = pair_split_argmax(0.5, 1.0, 0.0, 0.0);
  CHECK(a.argmax == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(a.concave);

  const quad_argmax b = pair_split_argmax(0.7, 0.3, 0.2, 0.1);
  CHECK(b.argmax == doctest::Approx(0.35).epsilon(1e-6));
  CHECK(b.concave);  // 2a^2 + 4a - 4 = -0.22 at a = 0.7

  const quad_argmax c = pair_split_argmax(0.8, 0.5, 0.5, 0.0);
  CHECK(c.argmax == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(c.concave);

  CHECK_THROWS_AS(pair_split_argmax(0.8, 0.5, 0.5, 0.1), game_error);
  CHECK_THROWS_AS(pair_split_argmax(-0.1, 1.0, 0.0, 0.0), game_error);
  CHECK_THROWS_AS(pair_split_argmax(0.5, -1.0, 0.0, 0.0), game_error);
}

TEST_CASE("pair split argmax: random valid weights peak at the even split") {
  rng64 rng(444);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.next_double();
    const double f11 = rng.next_double();
    const double f12 = rng.next_double();
    const double f22 = a >= 0.732 ? 0.0 : rng.next_double();
    const quad_argmax r = pair_split_argmax(a, f11, f12, f22);
    CHECK(std::abs(r.argmax - a / 2) <= 1e-6);
    CHECK(r.concave);
  }
}

TEST_CASE("bound report at the default wait fraction") {
  const bound_report r = make_bound_report();
  CHECK(r.pair_argmax == doctest::Approx(0.366).epsilon(1e-4));
  CHECK(r.pair_max == doctest::Approx(0.16157).epsilon(1e-4));
  CHECK(r.evasion_cap_value < 0.17745);
  CHECK(r.case_max_evasion == 0.17745);
  CHECK(r.expected_sweeps == doctest::Approx(1.21574).epsilon(1e-5));
  CHECK(r.total_coeff == doctest::Approx(r.e_x_coeff + r.e_y_coeff).epsilon(1e-15));
  CHECK(r.total_coeff < 1.95335);
  CHECK(r.x_star == doctest::Approx(2.72912).epsilon(1e-4));
  CHECK(r.f_star == doctest::Approx(1.95328).epsilon(1e-4));
}

TEST_CASE("bound report away from the default fraction") {
  const bound_report r = make_bound_report(0.0);
  CHECK(r.case_max_evasion == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(r.total_coeff == doctest::Approx(capture_time_coefficient(2.0)).epsilon(1e-12));
}
