#include <doctest.h>

#include <cmath>
#include <random>

#include "kemst/errors.hpp"
#include "kemst/generators.hpp"
#include "kemst/lipschitz.hpp"

using namespace kemst;

TEST_SUITE("lipschitz") {

TEST_CASE("quadrature") {
  CHECK(integrate([](double t) { return 1.0 / std::sqrt(1.0 + t * t); }, 0.0, 1.0) ==
        doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-10));
  CHECK(integrate([](double) { return 1.0; }, 1.0, 0.0) == 0.0);
  CHECK(split_progress(1.0, 1.0, 0.0, 1.0) == doctest::Approx(std::log(1.0 + std::sqrt(2.0))));
}

TEST_CASE("completion time") {
  const auto t = completion_time(1.0, 2.0, 0.0);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(std::sinh(0.5)).epsilon(1e-14));
  const auto num = completion_time_numeric([](double s) { return std::sqrt(1.0 + s * s); }, 2.0, 0.0, 1.0);
  REQUIRE(num.has_value());
  CHECK(std::abs(*num - *t) <= 1e-10);

  const int n = 64;
  const double K = kSplitConstant / std::log(static_cast<double>(n));
  for (double x = 1.0 / n; x <= 1.0; x += 1.0 / n) {
    CHECK(slide_cannot_finish(x, K));
    CHECK_FALSE(completion_time(x, K, 0.0).has_value());
  }
  CHECK_FALSE(slide_cannot_finish(1.0, 2.0));
  CHECK_THROWS_AS(completion_time(0.0, 1.0, 0.0), ParameterError);
}

TEST_CASE("slide cost") {
  const auto sc = gen_split(8);
  // Carrier (2, 5) has vertical span 3/8 and horizontal span t.
  const double x = 3.0 / 8.0;
  const double want = 0.5 * (std::sqrt(x * x + 1.0) + x * x * std::asinh(1.0 / x));
  CHECK(slide_cost(sc, 2, 5, 0.0, 1.0, 0.0, 1.0) == doctest::Approx(want).epsilon(1e-10));
  CHECK(slide_cost(sc, 2, 5, 0.0, 1.0, 0.5, 0.5) == 0.0);
}

TEST_CASE("tight budget: nothing completes") {
  const int n = 64;
  const auto res = run_lipschitz_regime(gen_split(n), kSplitConstant / std::log(static_cast<double>(n)), 101);
  CHECK(res.completed == 0);
  CHECK(res.records.front().ratio == doctest::Approx(1.0));
  CHECK(res.final_ratio >= n / 8.0);
  CHECK(res.final_ratio == doctest::Approx(20.255688893284692).epsilon(1e-9));
  for (const auto& s : res.slides) {
    CHECK_FALSE(s.t_end.has_value());
    CHECK(s.budget_integral < 1.0);
  }
}

TEST_CASE("generous budget: slides complete") {
  const auto res = run_lipschitz_regime(gen_split(8), 80.0, 101);
  CHECK(res.completed >= 1);
  CHECK(res.final_ratio == doctest::Approx(1.604344518384296).epsilon(1e-9));
  CHECK(res.max_closed_form_gap <= 1e-8);
  for (const auto& s : res.slides) {
    if (!s.t_end) continue;
    CHECK(s.budget_integral >= 1.0 - 1e-6);
    CHECK(s.budget_integral <= 1.0 + 1e-6);
  }
}

TEST_CASE("regime preconditions") {
  CHECK_THROWS_AS(run_lipschitz_regime(gen_chebyshev(3, 5), 1.0, 11), UnsupportedError);
  CHECK_THROWS_AS(run_lipschitz_regime(gen_split(8), 0.0, 11), ParameterError);
}

TEST_CASE("any tree bound") {
  const PointConfig line{{{0.0}, {0.25}, {0.5}, {0.75}, {1.0}}};
  const auto emst_audit = any_tree_bound_audit(line, emst(line));
  CHECK(emst_audit.ratio == doctest::Approx(1.0));
  const auto star = any_tree_bound_audit(line, SpanningTree(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  CHECK(star.total == doctest::Approx(2.5));
  CHECK(star.total <= 4.0 * star.opt_length);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    PointConfig cfg;
    for (int i = 0; i < 12; ++i) cfg.positions.push_back({u(rng), u(rng)});
    CHECK_NOTHROW(any_tree_bound_audit(cfg, random_spanning_tree(12, rng)));
  }
}

}  // TEST_SUITE
