#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "moving_well/quadrature.hpp"

using namespace moving_well;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2N-1 exactly") {
  const auto& rule = GaussLegendreRule<32>::instance();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
  for (int k = 0; k <= 63; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 32; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(acc - exact) <= 1e-14);
  }
}

TEST_CASE("adaptive quadrature reaches the tolerance on oscillatory integrands") {
  for (int n : {1, 7, 64, 128}) {
    auto r = integrate([n](double x) { return 2.0 * std::pow(std::sin(n * std::numbers::pi * x), 2); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 1.0) <= 1e-12);
  }
  auto c = integrate([](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, 2.0);
  const std::complex<double> exact = (std::polar(1.0, 6.0) - 1.0) / std::complex<double>(0.0, 3.0);
  CHECK(std::abs(c.value - exact) <= 1e-13);
}

TEST_CASE("reversed and empty intervals") {
  CHECK(integrate([](double x) { return x; }, 1.0, 1.0).value == 0.0);
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("budget exhaustion carries the best estimate") {
  QuadratureOptions opts;
  opts.tolerance = 1e-15;
  opts.max_panels = 4;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    FAIL("expected QuadratureBudgetExceeded");
  } catch (const QuadratureBudgetExceeded& e) {
    CHECK(std::abs(e.best_estimate().real() - 2.0) < 0.5);
    CHECK(e.error_estimate() > 0.0);
  }
  opts.tolerance = 0.0;
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, opts), InvalidParameter);
}
