#include <cmath>
#include <algorithm>
#include <random>

#include "doctest.h"

#include "moving_well/geometry.hpp"

using namespace moving_well;

TEST_CASE("make_geometry derives delta and the scale rate") {
  const auto g = make_geometry(1.0, -0.1, 0.2);
  CHECK(g.delta() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(g.scale_rate() == doctest::Approx(0.3).epsilon(1e-15));

  const auto rigid = make_geometry(1.0, 0.0, 0.0);
  CHECK(rigid.is_static());
  for (double t : {0.0, 1.0, 17.5}) CHECK(rigid.scale_factor(t) == 1.0);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(make_geometry(0.0, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_geometry(-1.0, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_geometry(1.0, 0.0, 0.0, Constants{0.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(make_geometry(1.0, 0.0, 0.0, Constants{1.0, -2.0}), InvalidParameter);
  CHECK_THROWS_AS(make_geometry(1.0, std::nan(""), 0.0), InvalidParameter);
}

TEST_CASE("scale factor, walls and comoving map") {
  const auto g = make_geometry(1.0, -0.1, 0.2);
  CHECK(g.scale_factor(1.0) == doctest::Approx(1.3).epsilon(1e-15));
  const auto [xl, xr] = g.wall_positions(1.0);
  CHECK(xl == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(xr == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(g.wall_positions(0.0) == std::pair{0.0, 1.0});
  CHECK(g.to_comoving(0.55, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.to_comoving(xl, 1.0) == doctest::Approx(0.0));
  CHECK(g.to_comoving(xr, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.from_comoving(0.0, 1.0) == doctest::Approx(xl).epsilon(1e-15));
  CHECK(g.from_comoving(1.0, 1.0) == doctest::Approx(xr).epsilon(1e-15));

  const auto rigid = make_geometry(1.0, 0.0, 0.0);
  CHECK(rigid.wall_positions(5.0) == std::pair{0.0, 1.0});
}

TEST_CASE("contracting wells reject queries at or past the horizon") {
  const auto g = make_geometry(1.0, 0.0, -0.5);
  REQUIRE(g.validity_horizon().has_value());
  CHECK(*g.validity_horizon() == doctest::Approx(2.0));
  CHECK(g.scale_factor(1.999) > 0.0);
  for (double t : {2.0, 2.5, 100.0}) {
    CHECK_THROWS_AS(g.scale_factor(t), HorizonExceeded);
    CHECK_THROWS_AS(g.wall_positions(t), HorizonExceeded);
    CHECK_THROWS_AS(g.to_comoving(0.1, t), HorizonExceeded);
    CHECK_THROWS_AS(g.from_comoving(0.1, t), HorizonExceeded);
  }
  try {
    g.scale_factor(2.0);
  } catch (const HorizonExceeded& e) {
    CHECK(e.horizon() == doctest::Approx(2.0));
  }
  CHECK_FALSE(make_geometry(1.0, -0.1, 0.2).validity_horizon().has_value());
  CHECK_FALSE(make_geometry(1.0, 0.3, 0.3).validity_horizon().has_value());
}

TEST_CASE("randomized geometry invariants") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> vel(-1.0, 1.0), unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = 0.2 + 3.0 * unit(rng);
    const auto g = make_geometry(a, vel(rng), vel(rng));
    const double t_end = g.validity_horizon().value_or(10.0);
    const double t = 0.999 * t_end * unit(rng);
    const double t2 = 0.999 * t_end * unit(rng) - t;

    const auto [xl, xr] = g.wall_positions(t);
    CHECK(std::abs((xr - xl) - a * g.scale_factor(t)) <= 1e-14 * std::max({1.0, a, std::abs(xl), std::abs(xr)}));

    const double x = xl + (xr - xl) * unit(rng) + 0.5 * vel(rng);
    const double back = g.from_comoving(g.to_comoving(x, t), t);
    CHECK(std::abs(back - x) <= 1e-13 * std::max(std::abs(x), a));

    if (g.is_valid_time(t + t2) && g.is_valid_time(t2))
      CHECK(std::abs((g.scale_factor(t + t2) - g.scale_factor(t)) - (g.scale_factor(t2) - g.scale_factor(0.0))) <= 1e-14 * (1.0 + std::abs(t) + std::abs(t2)));
  }
}
