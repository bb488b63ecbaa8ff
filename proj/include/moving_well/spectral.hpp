#pragma once

#include <complex>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "moving_well/geometry.hpp"

namespace moving_well::spectral {

/// Function of position on [0, a] (or the instantaneous well) to amplitude.
using StateFunction = std::function<std::complex<double>(double)>;

/// Coefficients c_n (n = 1..N) over the moving mode basis. Every mode is an
/// exact solution, so the coefficients never change with time.
struct SpectralState {
  Geometry geometry;
  Eigen::VectorXcd coefficients;

  int truncation() const { return static_cast<int>(coefficients.size()); }
};

struct ProjectionReport {
  Eigen::VectorXcd coefficients;
  double captured_norm = 0.0;
  double truncation_error = 0.0;
  double quadrature_estimate = 0.0;
};

/// Projects `initial` onto modes 1..n_max at t = 0 by adaptive Gauss-Legendre
/// quadrature on [0, a]. Optional `breakpoints` split the interval where the
/// function is known to lose smoothness (kinks of an interpolated table).
ProjectionReport project(const Geometry& g, const StateFunction& initial, int n_max, double quad_tol,
                         std::span<const double> breakpoints = {});

/// Projection at an arbitrary time over the instantaneous well.
ProjectionReport project_at(const Geometry& g, const StateFunction& field, double t, int n_max, double quad_tol,
                            std::span<const double> breakpoints = {});

SpectralState make_state(const Geometry& g, const ProjectionReport& report);

std::complex<double> eval_state(const SpectralState& state, double x, double t);
Eigen::VectorXcd eval_state(const SpectralState& state, const Eigen::Ref<const Eigen::VectorXd>& xs, double t);

/// Sum of |c_n|^2.
double norm(const SpectralState& state);

struct Observables {
  double norm_x = 0.0;
  double mean_x = 0.0;
  Eigen::VectorXd grid;
  Eigen::VectorXd density;
};

/// Quadrature of |psi|^2 and x |psi|^2 over the instantaneous well, plus the
/// density sampled at `grid_size` uniform points spanning the walls.
Observables observables(const SpectralState& state, double t, int grid_size, double quad_tol = 1e-12);

/// `count` uniformly spaced points from wall to wall at time t, walls included.
Eigen::VectorXd well_grid(const Geometry& g, double t, int count);

}  // namespace moving_well::spectral
