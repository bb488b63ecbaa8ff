#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

#include "moving_well/errors.hpp"
#include "moving_well/modes.hpp"
#include "moving_well/verify.hpp"

using namespace moving_well;
using namespace moving_well::verify;

namespace {

const Geometry kExpanding = make_geometry(1.0, -0.1, 0.2);
const Geometry kStatic = make_geometry(1.0, 0.0, 0.0);

std::vector<double> random_times(std::size_t count, double t_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, t_max);
  std::vector<double> out(count);
  for (double& t : out) t = unit(rng);
  return out;
}

}  // namespace

TEST_CASE("residual of exact modes") {
  const auto probes = random_probes(kStatic, 100, 0.0, 1.0, 1e-3, 1e-3, 1);
  CHECK(residual_lab(kStatic, comoving_mode(kStatic, 1), probes, 1e-3, 1e-3).relative_max <= 1e-5);

  const auto coarse = random_probes(kExpanding, 200, 0.0, 1.0, 2e-3, 2e-3, 2);
  const auto r2 = residual_lab(kExpanding, comoving_mode(kExpanding, 1), coarse, 2e-3, 2e-3);
  const auto r1 = residual_lab(kExpanding, comoving_mode(kExpanding, 1), coarse, 1e-3, 1e-3);
  CHECK(r1.relative_max <= 1e-4);
  CHECK(r2.relative_max / r1.relative_max == doctest::Approx(4.0).epsilon(0.1));
  CHECK(r1.l2_residual <= r1.max_residual);
  CHECK(r1.reference_scale > 0.0);
  CHECK(r1.reference_scale <= mode_energy(kExpanding, 1) * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("negative control fails the residual audit") {
  const auto probes = random_probes(kExpanding, 200, 0.0, 1.0, 1e-3, 1e-3, 3);
  CHECK(residual_lab(kExpanding, literal_sine_mode(kExpanding, 1), probes, 1e-3, 1e-3).relative_max >= 1e-1);
}

TEST_CASE("probe validation") {
  const std::vector<Probe> near_wall{{1e-3, 0.5}};
  CHECK_THROWS_AS(residual_lab(kStatic, comoving_mode(kStatic, 1), near_wall, 1e-3, 1e-3), InvalidProbe);
  const std::vector<Probe> near_start{{0.5, 1e-3}};
  CHECK_THROWS_AS(residual_lab(kStatic, comoving_mode(kStatic, 1), near_start, 1e-3, 1e-3), InvalidProbe);
  const Geometry shrinking = make_geometry(1.0, 0.25, -0.25);  // horizon at t = 2
  const std::vector<Probe> near_horizon{{0.5, 1.9995}};
  CHECK_THROWS_AS(residual_lab(shrinking, comoving_mode(shrinking, 1), near_horizon, 1e-3, 1e-3), InvalidProbe);
  CHECK_THROWS_AS(residual_lab(kStatic, comoving_mode(kStatic, 1), {}, 1e-3, 1e-3), InvalidProbe);
  CHECK_THROWS_AS(residual_lab(kStatic, comoving_mode(kStatic, 1), near_wall, 0.0, 1e-3), InvalidParameter);
  CHECK_THROWS_AS(random_probes(kStatic, 5, 0.0, 3e-3, 1e-3, 1e-3, 0), InvalidParameter);
  CHECK_THROWS_AS(random_probes(shrinking, 5, 0.0, 2.5, 1e-3, 1e-3, 0), HorizonExceeded);

  for (const Probe& p : random_probes(kExpanding, 500, 0.0, 1.0, 4e-3, 4e-3, 9)) {
    CHECK(p.t >= 8e-3);
    CHECK(p.t <= 1.0 - 8e-3);
    CHECK(p.x - 8e-3 > kExpanding.left_wall(p.t) + 4e-3 * 0.1 - 1e-15);
    CHECK(p.x + 8e-3 < kExpanding.right_wall(p.t) - 4e-3 * 0.2 + 1e-15);
  }
}

TEST_CASE("boundary check") {
  const auto times = random_times(50, 5.0, 4);
  for (int n = 1; n <= 3; ++n) {
    CHECK(boundary_check(kExpanding, raw_comoving_mode(kExpanding, n), times) <= 1e-13);
    CHECK(boundary_check(kExpanding, comoving_mode(kExpanding, n), times) == 0.0);
  }
  const Field superposition = [f1 = raw_comoving_mode(kExpanding, 1), f4 = raw_comoving_mode(kExpanding, 4)](
                                  double x, double t) { return 0.6 * f1(x, t) + std::complex<double>(0.0, 0.8) * f4(x, t); };
  CHECK(boundary_check(kExpanding, superposition, times) <= 1e-12);
  CHECK(boundary_check(kExpanding, literal_sine_mode(kExpanding, 1), times) >= 1e-2);

  const Field wall_only = [](double, double) { return std::complex<double>(1.0); };
  CHECK(boundary_check(kStatic, wall_only, times) == doctest::Approx(1.0));
  const std::vector<double> late{5.0};
  const Geometry shrinking = make_geometry(1.0, 0.25, -0.25);
  CHECK_THROWS_AS(boundary_check(shrinking, raw_comoving_mode(shrinking, 1), late), HorizonExceeded);
}

TEST_CASE("orthonormality and norm") {
  for (double t : {0.0, 0.7, 3.0}) CHECK(orthonormality_check(kStatic, 8, t) <= 1e-10);
  for (double t : {0.0, 1.0, 3.0}) CHECK(orthonormality_check(kExpanding, 8, t) <= 1e-10);
  CHECK(orthonormality_check(kExpanding, 1, 1.0) <= 1e-10);
  for (double t : random_times(20, 5.0, 5))
    for (int n = 1; n <= 5; ++n) CHECK(norm_deviation(kExpanding, n, t) <= 1e-10);
  CHECK_THROWS_AS(orthonormality_check(kStatic, 0, 0.0), InvalidParameter);
}

TEST_CASE("convergence order") {
  const std::vector<double> h{4e-3, 2e-3, 1e-3};
  CHECK(convergence_order(h, std::vector<double>{3.0 * 16e-6, 3.0 * 4e-6, 3.0 * 1e-6}).fitted_order ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(convergence_order(h, std::vector<double>{0.4, 0.2, 0.1}).fitted_order == doctest::Approx(1.0).epsilon(1e-6));
  const std::vector<double> h5{1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e5;
  for (double x : h5) e5.push_back(7.0 * std::pow(x, 2.5));
  CHECK(std::abs(convergence_order(h5, e5).fitted_order - 2.5) < 1e-3);

  CHECK_THROWS_AS(convergence_order(std::vector<double>{2e-3, 1e-3}, std::vector<double>{4.0, 1.0}),
                  InvalidParameter);
  CHECK_THROWS_AS(convergence_order(h, std::vector<double>{1.0, 0.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(convergence_order(std::vector<double>{1e-3, 2e-3, 4e-3}, std::vector<double>{1.0, 2.0, 3.0}),
                  InvalidParameter);

  const auto probes = random_probes(kExpanding, 200, 0.0, 1.0, 4e-3, 4e-3, 6);
  std::vector<ResidualReport> sweep;
  for (double s : h) sweep.push_back(residual_lab(kExpanding, comoving_mode(kExpanding, 1), probes, s, s));
  const auto est = convergence_order(sweep);
  CHECK(est.fitted_order >= 1.8);
  CHECK(est.fitted_order <= 2.2);
}

TEST_CASE("sign convention audit") {
  const SignAudit tie = sign_convention_audit(kStatic, 1);
  CHECK(tie.passing_convention == Convention::degenerate_tie);
  CHECK(tie.candidates.size() == 2);

  const SignAudit moving = sign_convention_audit(kExpanding, 1);
  CHECK(moving.passing_convention == Convention::comoving);
  CHECK(moving.candidates[0].passes);
  CHECK_FALSE(moving.candidates[1].passes);
  CHECK(moving.candidates[1].residual.relative_max >= 1e-1);

  const SignAudit translation = sign_convention_audit(make_geometry(1.0, 0.3, 0.3), 1);
  CHECK(translation.passing_convention == Convention::comoving);

  // a fixed left wall makes both assemblies identical
  CHECK(sign_convention_audit(make_geometry(1.0, 0.0, 0.4), 1).passing_convention == Convention::degenerate_tie);

  AuditOptions impossible;
  impossible.residual_threshold = 0.0;
  CHECK_THROWS_AS(sign_convention_audit(kExpanding, 1, impossible), AuditFailed);
  CHECK_THROWS_AS(sign_convention_audit(kExpanding, 0), InvalidParameter);
  CHECK(to_string(Convention::literal_sine) == "literal_sine");
}

TEST_CASE("randomized geometries") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> velocity(-1.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    double ul = velocity(rng), ur = velocity(rng);
    if (std::abs(ul) < 0.05) ul = 0.05;
    const Geometry g = make_geometry(1.0, ul, ur);
    const auto horizon = g.validity_horizon();
    const double t_max = horizon ? std::min(1.0, 0.5 * *horizon) : 1.0;
    const auto probes = random_probes(g, 100, 0.0, t_max, 4e-3, 4e-3, 100 + trial);
    std::vector<ResidualReport> sweep;
    for (double s : {4e-3, 2e-3, 1e-3}) sweep.push_back(residual_lab(g, comoving_mode(g, 1), probes, s, s));
    CHECK(sweep.back().relative_max <= 1e-3);
    const double order = convergence_order(sweep).fitted_order;
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
    const auto times = random_times(20, t_max, 200 + trial);
    CHECK(boundary_check(g, raw_comoving_mode(g, 1), times) <= 1e-12);
    const bool rejected = residual_lab(g, literal_sine_mode(g, 1), probes, 1e-3, 1e-3).relative_max > 1e-4 ||
                          boundary_check(g, literal_sine_mode(g, 1), times) > 1e-12;
    CHECK(rejected);
    const auto phase = phase_equation_check(g, 100, t_max, 300 + trial);
    CHECK(phase.max_gradient_condition <= 1e-12);
    CHECK(phase.max_curvature_condition <= 1e-12);
  }
}

TEST_CASE("phase equation spot checks") {
  for (const Geometry& g : {kExpanding, kStatic, make_geometry(2.0, 0.4, -0.3, Constants{0.5, 3.0})}) {
    const auto r = phase_equation_check(g, 100, 1.0, 11);
    CHECK(r.max_gradient_condition <= 1e-12);
    CHECK(r.max_curvature_condition <= 1e-12);
  }
}
