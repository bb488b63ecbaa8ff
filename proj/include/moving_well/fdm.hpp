#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "moving_well/geometry.hpp"

namespace moving_well::fdm {

using LabFunction = std::function<std::complex<double>(double)>;

/// Samples of the fixed-domain field psibar at xbar_j = j h, j = 1..nx.
/// The Dirichlet end values at j = 0 and j = nx + 1 are implicit zeros.
struct GridState {
  Geometry geometry;
  int nx = 0;
  double h = 0.0;
  Eigen::VectorXcd samples;
  double t = 0.0;

  double xbar(int j) const { return h * j; }
  /// h * sum |psibar_j|^2
  double discrete_norm() const { return h * samples.squaredNorm(); }
};

enum class CoefficientRule { midpoint };

struct SolverSettings {
  double dt = 1e-4;
  CoefficientRule coefficient_rule = CoefficientRule::midpoint;
};

struct LabSamples {
  Eigen::VectorXd xs;
  Eigen::VectorXcd values;
};

/// Gauge-transforms a lab-frame state at t0 onto the fixed grid.
GridState init_from_lab(const Geometry& g, const LabFunction& lab_state, int nx, double t0);

/// One Crank-Nicolson step of i hbar d_t psibar = -(hbar^2 / 2m L^2) d_xbar^2 psibar,
/// with the 1/L^2 coefficient frozen at the step midpoint.
GridState step(const GridState& state, const SolverSettings& settings);

/// In-place step of size dt.
void step_in_place(GridState& state, double dt);

/// Advances to t1 in steps of settings.dt; the last step shrinks to land on t1.
void advance(GridState& state, double t1, const SolverSettings& settings);

GridState solve(const Geometry& g, const LabFunction& lab_state, double t0, double t1, int nx,
                const SolverSettings& settings);

/// Lab-frame values on the image of the fixed grid; no interpolation.
LabSamples map_to_lab(const GridState& state);

/// |<A, B>| / (|A| |B|) with trapezoid weights on the shared lab grid.
double fidelity(const LabSamples& a, const LabSamples& b);

/// Trapezoid weights for samples at interior nodes `xs` of a Dirichlet
/// interval; the end segments reach to the reflected first/last spacing.
Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& xs);

}  // namespace moving_well::fdm
