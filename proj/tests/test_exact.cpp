#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pursuit/exact.hpp"

using namespace pursuit;
namespace ptest = pursuit::testing;

namespace {
const std::vector<vertex_t> kStarWalk{0, 1, 1, 0, 2, 0, 3, 3, 0};
}

TEST_CASE("sweep evasion: forced capture and tiny walks") {
  const double certain[] = {1.0};
  CHECK(sweep_evasion_prob(std::vector<vertex_t>{0}, certain) == 0.0);

  const double half[] = {0.5, 0.5};
  CHECK(sweep_evasion_prob(std::vector<vertex_t>{0, 1, 0}, half) ==
        doctest::Approx(0.125).epsilon(1e-15));

  const double quarter[] = {0.25, 0.25, 0.25, 0.25};
  // (3/4)^9, one factor per turn of the augmented star walk
  CHECK(sweep_evasion_prob(kStarWalk, quarter) ==
        doctest::Approx(19683.0 / 262144.0).epsilon(1e-15));
}

TEST_CASE("sweep evasion matches a sequential long-double product") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 10);
    const graph g = ptest::random_connected_graph(n, seed * 3 + 1);
    const sweep_context ctx = make_sweep_context(g, {});
    rng64 rng(seed);
    const sweep_walk w = build_sweep(ctx, rng);
    const auto d = ptest::random_distribution(n, seed ^ 0x9000, 0.2);
    const double expect = ptest::walk_evasion_sequential(w.visits, d.probs());
    CHECK(sweep_evasion_prob(w, d) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("sweep evasion switches to log space for large n") {
  const graph g = graph::generate(graph_family::path, 100);
  const sweep_context ctx = make_sweep_context(g, {});
  rng64 rng(4);
  const sweep_walk w = build_sweep(ctx, rng);
  const auto d = ptest::random_distribution(100, 77);
  const double expect = ptest::walk_evasion_sequential(w.visits, d.probs());
  CHECK(sweep_evasion_prob(w, d) == doctest::Approx(expect).epsilon(1e-10));
  const auto u = gambler_distribution::uniform(100);
  CHECK(sweep_evasion_prob(w, u) ==
        doctest::Approx(ptest::walk_evasion_sequential(w.visits, u.probs()))
            .epsilon(1e-10));
}

TEST_CASE("analyze_sweep: closed forms") {
  const double certain[] = {1.0};
  const sweep_stats one = analyze_sweep(std::vector<vertex_t>{0}, certain);
  CHECK(one.evasion_prob == 0.0);
  CHECK(one.capture_mass == 1.0);
  CHECK(one.mean_capture_turn.value() == 1.0);

  const double at_one[] = {0.0, 1.0};
  const sweep_stats second = analyze_sweep(std::vector<vertex_t>{0, 1}, at_one);
  CHECK(second.evasion_prob == 0.0);
  CHECK(second.mean_capture_turn.value() == 2.0);

  const double half[] = {0.5, 0.5};
  const sweep_stats s = analyze_sweep(std::vector<vertex_t>{0, 1, 0}, half);
  CHECK(s.evasion_prob == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(s.mean_capture_turn.value() == doctest::Approx(11.0 / 7.0).epsilon(1e-15));

  const double never[] = {0.0, 0.0};
  const sweep_stats free_run = analyze_sweep(std::vector<vertex_t>{0, 1, 0}, never);
  CHECK(free_run.evasion_prob == 1.0);
  CHECK(!free_run.mean_capture_turn.has_value());
}

TEST_CASE("analyze_sweep: mass accounting and monotonicity") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 14);
    const graph g = ptest::random_connected_graph(n, seed * 11 + 3);
    const sweep_context ctx = make_sweep_context(g, {});
    rng64 rng(seed);
    sweep_walk w = build_sweep(ctx, rng);
    const auto d = ptest::random_distribution(n, seed + 1);

    const sweep_stats s = analyze_sweep(w.visits, d.probs());
    CHECK(std::abs(s.evasion_prob + s.capture_mass - 1.0) <= 1e-12);
    if (s.capture_mass > 0.0) {
      CHECK(s.mean_capture_turn.value() >= 1.0);
      CHECK(s.mean_capture_turn.value() <= static_cast<double>(s.length));
    }

    // one extra visit to a positive-probability vertex strictly lowers q
    const vertex_t v = w.visits[rng.next_below(w.visits.size())];
    if (d.prob(v) > 0.0 && s.evasion_prob > 0.0) {
      std::vector<vertex_t> longer = w.visits;
      longer.push_back(v);
      CHECK(sweep_evasion_prob(longer, d.probs()) < s.evasion_prob);
    }
  }
}

TEST_CASE("enumeration size") {
  CHECK(enumeration_size(4, 3, 1'000'000).value() == 8);
  CHECK(enumeration_size(2, 2, 1'000'000).value() == 2);
  CHECK(!enumeration_size(30, 22, 1'000'000).has_value());
  CHECK(enumeration_size(16, 12, 1'000'000).value() == 2 * 1820);
}

TEST_CASE("policy aggregate: singleton graph with a forced gambler") {
  const graph g = graph::generate(graph_family::path, 1);
  const auto d = gambler_distribution::uniform(1);
  const policy_stats s =
      policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated());
  CHECK(s.mean_evasion == 0.0);
  CHECK(s.mean_turn_given_capture == 1.0);
}

TEST_CASE("policy aggregate: the two-vertex path has one augmented walk") {
  const graph g = graph::generate(graph_family::path, 2);
  const auto d = gambler_distribution::uniform(2);
  const policy_stats s =
      policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated());
  CHECK(s.variants == 2);
  CHECK(s.mean_evasion == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(s.mean_len_given_evade == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("policy aggregate: star with four vertices, exact enumeration") {
  const graph g = graph::generate(graph_family::star, 4);
  const auto d = gambler_distribution::uniform(4);
  const policy_stats s =
      policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated());
  CHECK(s.variants == 8);
  // (3*(3/4)^9 + (3/4)^10)/4 over the four wait sets
  CHECK(s.mean_evasion == doctest::Approx(295245.0 / 4194304.0).epsilon(1e-14));

  // cross-check against the variant-walk oracle
  const auto walks = ptest::enumerate_variant_walks(g, {});
  double mean = 0.0;
  for (const auto& walk : walks)
    mean += ptest::walk_evasion_sequential(walk, d.probs());
  mean /= static_cast<double>(walks.size());
  CHECK(s.mean_evasion == doctest::Approx(mean).epsilon(1e-13));
}

TEST_CASE("policy aggregate: budget errors route to sampled mode") {
  const graph g = graph::generate(graph_family::star, 30);
  const auto d = gambler_distribution::uniform(30);
  CHECK_THROWS_AS(policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated()),
                  game_error);
  try {
    policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated());
  } catch (const game_error& e) {
    CHECK(e.code() == errc::budget_exceeded);
  }
  const policy_stats s =
      policy_sweep_aggregate(g, {}, d, aggregate_mode::sampled(2000, 9));
  CHECK(s.kind == aggregate_kind::sampled);
  CHECK(s.mean_evasion > 0.0);
  CHECK(s.mean_evasion < 0.17745);
}

TEST_CASE("policy aggregate: sampled agrees with enumerated within 4 sigma") {
  const graph g = graph::generate(graph_family::star, 4);
  for (std::uint64_t seed : {1ull, 2ull}) {
    const auto d = seed == 1 ? gambler_distribution::uniform(4)
                             : ptest::random_distribution(4, 321);
    const policy_stats exact =
        policy_sweep_aggregate(g, {}, d, aggregate_mode::enumerated());
    const policy_stats sampled =
        policy_sweep_aggregate(g, {}, d, aggregate_mode::sampled(100'000, seed));
    CHECK(std::abs(exact.mean_evasion - sampled.mean_evasion) <=
          4.0 * sampled.stderr_evasion + 1e-12);
  }
}

TEST_CASE("per-sweep evasion cap for the uniform gambler") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 79);
    const graph g = ptest::random_connected_graph(n, seed * 17);
    const sweep_context ctx = make_sweep_context(g, {});
    const auto d = gambler_distribution::uniform(n);
    rng64 rng(seed);
    const sweep_walk w = build_sweep(ctx, rng);
    const double q = sweep_evasion_prob(w, d);
    const double cap =
        std::pow(1.0 - 1.0 / n, static_cast<double>(n + ctx.wait_size));
    CHECK(q <= cap + 1e-15);
    CHECK(cap <= std::exp(-1.72912));
    CHECK(std::exp(-1.72912) < 0.17745);
  }
}

TEST_CASE("expected capture time: degenerate graphs") {
  const graph one = graph::generate(graph_family::path, 1);
  const auto d1 = gambler_distribution::uniform(1);
  CHECK(expected_capture_time(one, {}, d1, aggregate_mode::enumerated()).value == 1.0);

  const graph p2 = graph::generate(graph_family::path, 2);
  const auto d2 = gambler_distribution::uniform(2);
  const exact_capture_time t =
      expected_capture_time(p2, {}, d2, aggregate_mode::enumerated());
  CHECK(t.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.value ==
        doctest::Approx(t.expected_failed_turns + t.expected_success_turns)
            .epsilon(1e-15));
}

TEST_CASE("expected capture time matches the turn-level chain oracle") {
  const graph graphs[] = {
      graph::generate(graph_family::star, 4),
      graph::generate(graph_family::path, 4),
      graph::generate(graph_family::cycle, 4),
      graph::generate(graph_family::random_tree, 7, 5),
  };
  for (const graph& g : graphs) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto d = seed == 0 ? gambler_distribution::uniform(g.n())
                               : ptest::random_distribution(g.n(), seed * 71, 0.15);
      const exact_capture_time t =
          expected_capture_time(g, {}, d, aggregate_mode::enumerated());
      const auto oracle = ptest::chain_expected_capture_time(g, {}, d);
      CHECK(t.value ==
            doctest::Approx(oracle.expected_turns).epsilon(1e-9));
    }
  }
}

TEST_CASE("uniform gambler is caught in exactly n expected turns") {
  // With the uniform distribution every turn is an independent 1/n capture
  // chance whatever the cop does, so the expectation is n on any graph.
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 1 + static_cast<int>(seed % 9);
    const graph g = ptest::random_connected_graph(n, seed * 41 + 3);
    const auto d = gambler_distribution::uniform(n);
    const double value =
        expected_capture_time(g, {}, d, aggregate_mode::enumerated()).value;
    CHECK(value == doctest::Approx(static_cast<double>(n)).epsilon(1e-11));
  }
}

TEST_CASE("expected capture time refuses non-iid sweep configs") {
  const graph g = graph::generate(graph_family::path, 4);
  const auto d = gambler_distribution::uniform(4);
  strategy_config frozen_u;
  frozen_u.resample_wait_set = false;
  CHECK_THROWS_AS(expected_capture_time(g, frozen_u, d, aggregate_mode::enumerated()),
                  game_error);
  strategy_config frozen_coin;
  frozen_coin.resample_direction = false;
  try {
    expected_capture_time(g, frozen_coin, d, aggregate_mode::enumerated());
    FAIL("expected non_iid_sweeps");
  } catch (const game_error& e) {
    CHECK(e.code() == errc::non_iid_sweeps);
  }
}

TEST_CASE("expected capture time reports degenerate evasion") {
  const graph g = graph::generate(graph_family::path, 3);
  const sweep_context ctx = make_sweep_context(g, {});
  const std::vector<double> no_show(3, 0.0);  // off-simplex probe: gambler never appears
  CHECK_THROWS_AS(expected_capture_time(ctx, no_show, aggregate_mode::enumerated()),
                  game_error);
}
