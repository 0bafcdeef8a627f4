#include <doctest.h>

#include <cmath>
#include <random>

#include "kemst/errors.hpp"
#include "kemst/generators.hpp"
#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

using namespace kemst;

namespace {

KineticScenario make(std::vector<Trajectory> points) {
  KineticScenario sc;
  sc.points = std::move(points);
  sc.label = "t";
  return sc;
}

// Sign changes of the first differences on a fine grid.
int sweep_count(const Trajectory& traj, int grid = 20000) {
  int sweeps = 0;
  int dir = 0;
  double prev = traj.evaluate(0.0)[0];
  for (int i = 1; i <= grid; ++i) {
    const double x = traj.evaluate(traj.horizon() * i / grid)[0];
    const int d = x > prev ? 1 : (x < prev ? -1 : 0);
    if (d != 0 && d != dir) {
      ++sweeps;
      dir = d;
    }
    prev = x;
  }
  return sweeps;
}

// Independent event oracle: scan a uniform grid for the first sample with
// displacement >= k, then bisect on the displacement itself.
std::optional<double> dense_event(const KineticScenario& sc, double t_ref, double k, int grid) {
  const PointConfig ref = sc.at(t_ref);
  auto disp = [&](double t) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sc.size(); ++i) worst = std::max(worst, distance(sc.points[i].evaluate(t), ref.positions[i]));
    return worst;
  };
  const double T = sc.horizon();
  double prev = t_ref;
  for (int i = 1; i <= grid; ++i) {
    const double t = t_ref + (T - t_ref) * i / grid;
    if (disp(t) >= k) {
      double lo = prev, hi = t;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (disp(mid) >= k ? hi : lo) = mid;
      }
      return hi;
    }
    prev = t;
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("trajectories") {

TEST_CASE("evaluate follows the motion") {
  CHECK(Trajectory::stationary({0.5}, 1.0).evaluate(0.7)[0] == doctest::Approx(0.5));
  CHECK(Trajectory::linear({0.0}, {1.0}, 1.0).evaluate(0.25)[0] == doctest::Approx(0.25));
  const auto cheb = gen_chebyshev(3, 2);
  CHECK(cheb.points[0].evaluate(0.0)[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cheb.points[0].evaluate(1.0)[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(cheb.points[0].evaluate(1.5), DomainError);
  CHECK_THROWS_AS(cheb.points[0].evaluate(-0.1), DomainError);
}

TEST_CASE("input distance") {
  const auto sc = make({Trajectory::linear({0.0}, {1.0}, 1.0), Trajectory::stationary({0.5}, 1.0)});
  CHECK(input_distance(sc, 0.0, 0.3) == doctest::Approx(0.3));
  CHECK(input_distance(sc, 0.4, 0.4) == 0.0);
  const auto still = gen_stationary(6, 2, 1.0, 3);
  CHECK(input_distance(still, 0.1, 0.9) == 0.0);

  const auto rnd = gen_random_polynomial(8, 4, 2, 1.0, 11);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    CHECK(input_distance(rnd, a, b) == doctest::Approx(input_distance(rnd, b, a)).epsilon(1e-15));
    CHECK(input_distance(rnd, a, c) <= input_distance(rnd, a, b) + input_distance(rnd, b, c) + 1e-12);
  }
}

TEST_CASE("max speed") {
  CHECK(max_speed(Trajectory::stationary({0.3}, 1.0)) == 0.0);
  CHECK(max_speed(Trajectory::linear({0.0}, {1.0}, 1.0)) == doctest::Approx(1.0));
  // T_4 has derivative 16 at the ends of [-1, 1]; the affine maps cancel.
  CHECK(max_speed(gen_chebyshev(4, 2).points[0]) == doctest::Approx(16.0).epsilon(1e-9));
  CHECK(max_speed(gen_chebyshev(3, 2, 2.0).points[0]) == doctest::Approx(4.5).epsilon(1e-9));
  CHECK_THROWS_AS(max_speed(gen_circle(6).points[0]), UnsupportedError);
}

TEST_CASE("Markov brothers bound on random full-range polynomials") {
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 1 + trial % 6;
    const double T = 0.5 + 0.05 * (trial % 10);
    const auto sc = gen_random_polynomial(1 + 1, s, 1, T, 1000 + trial, true);
    for (const auto& traj : sc.points) {
      double sampled = 0.0;
      const double h = T / 4000;
      for (int i = 0; i < 4000; ++i) {
        const double d = (traj.evaluate(h * (i + 1))[0] - traj.evaluate(h * i)[0]) / h;
        sampled = std::max(sampled, std::abs(d));
      }
      CHECK(sampled <= s * s / T + 1e-6);
      CHECK(max_speed(traj) <= s * s / T + 1e-6);
    }
  }
  for (int s = 1; s <= 6; ++s) CHECK(max_speed(gen_chebyshev(s, 2).points[0]) >= 0.999 * s * s);
}

TEST_CASE("next displacement event") {
  const auto still = gen_stationary(5, 2, 1.0, 2);
  CHECK_FALSE(next_displacement_event(still, 0.0, 0.1).has_value());

  const auto lin = make({Trajectory::linear({0.0}, {1.0}, 1.0), Trajectory::stationary({0.5}, 1.0)});
  CHECK(*next_displacement_event(lin, 0.0, 0.25) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(*next_displacement_event(lin, 0.75, 0.25) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(next_displacement_event(lin, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(next_displacement_event(lin, 2.0, 0.1), DomainError);

  // h = 0.1 means T_3(x) = -0.8 near x = -1, i.e. x = -cos(acos(0.8) / 3).
  const auto cheb = gen_chebyshev(3, 11);
  const double closed = (1.0 - std::cos(std::acos(0.8) / 3.0)) / 2.0;
  CHECK(*next_displacement_event(cheb, 0.0, 0.1) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(*next_displacement_event(cheb, 0.0, 0.1) == doctest::Approx(0.011458566438862).epsilon(1e-12));
}

TEST_CASE("next displacement event agrees with a dense oracle") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto sc = gen_random_polynomial(3, 1 + trial % 5, 1 + trial % 2, 1.0, 500 + trial);
    const double k = 0.05 + 0.002 * trial;
    const double t_ref = 0.01 * (trial % 50);
    const auto got = next_displacement_event(sc, t_ref, k);
    const auto want = dense_event(sc, t_ref, k, 20000);
    REQUIRE(got.has_value() == want.has_value());
    if (got) CHECK(std::abs(*got - *want) <= 1e-8);
  }
}

TEST_CASE("chebyshev generator") {
  const auto one = gen_chebyshev(1, 2);
  CHECK(one.points[0].evaluate(0.0)[0] == doctest::Approx(0.0));
  CHECK(one.points[0].evaluate(1.0)[0] == doctest::Approx(1.0));
  CHECK(one.points[1].evaluate(0.3)[0] == doctest::Approx(0.5));
  for (int s = 1; s <= 6; ++s) CHECK(sweep_count(gen_chebyshev(s, 3).points[0]) == s);
  const double mid = gen_chebyshev(2, 3).points[0].evaluate(0.5)[0];
  CHECK((std::abs(mid) < 1e-12 || std::abs(mid - 1.0) < 1e-12));
  CHECK_THROWS_AS(gen_chebyshev(0, 3), ParameterError);
  CHECK_THROWS_AS(gen_chebyshev(3, 1), ParameterError);
}

TEST_CASE("appendix rational generator") {
  const auto sc = gen_appendix_rational(8, 4);
  // Mover 1 with s = 8 has bumps centred at t = 20 and t = 30.
  CHECK(sc.points[1].evaluate(20.0)[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(sc.points[0].evaluate(0.0)[0] == doctest::Approx(1.0).epsilon(1e-3));
  // At least 10 away from all of mover 0's centres (0, 10, 20).
  CHECK(sc.points[0].evaluate(sc.horizon())[0] <= 3.0 / 1e4);
  CHECK(sc.points[3].evaluate(5.0)[0] == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(gen_appendix_rational(6, 4), ParameterError);
  CHECK_THROWS_AS(gen_appendix_rational(8, 5), ParameterError);
}

TEST_CASE("circle generator") {
  const auto sc = gen_circle(16);
  const PointConfig mid = sc.at(sc.markers.at("t_mid"));
  double gap_min = 1e9, gap_max = 0.0, far = 0.0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) far = std::max(far, mid.distance(i, j));
    double nearest = 1e9;
    for (int j = 0; j < 16; ++j)
      if (j != i) nearest = std::min(nearest, mid.distance(i, j));
    gap_min = std::min(gap_min, nearest);
    gap_max = std::max(gap_max, nearest);
  }
  CHECK(gap_max - gap_min < 1e-12);
  CHECK(far == doctest::Approx(1.0).epsilon(1e-12));
  // 15 chords of an evenly spread circle of radius 1/2.
  CHECK(emst_length_prim(mid) == doctest::Approx(15.0 * std::sin(M_PI / 16.0)).epsilon(1e-12));
  CHECK(emst_length_prim(mid) == doctest::Approx(2.926354830241924).epsilon(1e-12));
  CHECK(sc.at(0.0).distance(0, 15) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_THROWS_AS(gen_circle(3), ParameterError);
}

TEST_CASE("diamond generator") {
  const auto sc = gen_diamond(6);
  CHECK(sc.size() == 22);
  CHECK(sc.morph_mode == MorphMode::rotation);
  const PointConfig mid = sc.at(sc.markers.at("t_mid"));
  CHECK(emst_length_prim(mid) == doctest::Approx(9.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gen_diamond(2), ParameterError);
}

TEST_CASE("split generator") {
  const int n = 10;
  const auto sc = gen_split(n);
  const PointConfig start = sc.at(0.0);
  for (int i = 0; i + 1 < n; ++i) CHECK(start.distance(i, i + 1) == doctest::Approx(1.0 / n));
  const PointConfig end = sc.at(1.0);
  CHECK(std::abs(end.positions[0][0] - end.positions[1][0]) == doctest::Approx(1.0));
  const double x = 3.0 / n;
  for (double t : {0.0, 0.25, 0.8})
    CHECK(sc.at(t).distance(2, 5) == doctest::Approx(std::sqrt(x * x + t * t)).epsilon(1e-12));
  CHECK_THROWS_AS(gen_split(3), ParameterError);
}

}  // TEST_SUITE
