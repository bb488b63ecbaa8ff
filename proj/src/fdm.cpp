#include "moving_well/fdm.hpp"

#include <algorithm>
#include <cmath>

#include "moving_well/errors.hpp"
#include "moving_well/modes.hpp"
#include "moving_well/tridiagonal.hpp"

namespace moving_well::fdm {

GridState init_from_lab(const Geometry& g, const LabFunction& lab_state, int nx, double t0) {
  if (nx < 8) throw InvalidParameter("nx must be at least 8");
  const Phase parts = gauge_phase(g, t0);
  GridState state{g, nx, g.width0() / (nx + 1), Eigen::VectorXcd(nx), t0};
  for (int j = 1; j <= nx; ++j) {
    const double x = g.from_comoving(state.xbar(j), t0);
    state.samples[j - 1] = lab_state(x) / gauge_factor(g, parts, x, t0);
  }
  return state;
}

void step_in_place(GridState& state, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  const Geometry& g = state.geometry;
  g.require_valid(state.t + dt);
  const double L = g.scale_factor(state.t + 0.5 * dt);
  const double alpha = g.hbar() * dt / (2.0 * g.mass() * state.h * state.h * L * L);
  const std::complex<double> off(0.0, -0.5 * alpha);
  const std::complex<double> on(1.0, alpha);

  // (I - i alpha/2 D2) new = (I + i alpha/2 D2) old, D2 = [1 -2 1]
  const Eigen::VectorXcd& old = state.samples;
  const Eigen::Index n = old.size();
  Eigen::VectorXcd rhs(n);
  const std::complex<double> half_ia(0.0, 0.5 * alpha);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> left = j > 0 ? old[j - 1] : std::complex<double>{};
    const std::complex<double> right = j + 1 < n ? old[j + 1] : std::complex<double>{};
    rhs[j] = old[j] + half_ia * (left - 2.0 * old[j] + right);
  }
  const Eigen::VectorXcd band = Eigen::VectorXcd::Constant(n, off);
  const Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(n, on);
  thomas_solve<std::complex<double>>(band, diag, band, rhs);
  state.samples = std::move(rhs);
  state.t += dt;
}

GridState step(const GridState& state, const SolverSettings& settings) {
  GridState next = state;
  step_in_place(next, settings.dt);
  return next;
}

void advance(GridState& state, double t1, const SolverSettings& settings) {
  if (!(settings.dt > 0.0)) throw InvalidParameter("time step must be positive");
  if (t1 < state.t) throw InvalidParameter("cannot advance backwards in time");
  state.geometry.require_valid(t1);
  const double t0 = state.t;
  const double span = t1 - t0;
  if (span == 0.0) return;
  const auto steps = static_cast<long>(std::ceil(span / settings.dt * (1.0 - 1e-12)));
  for (long i = 0; i + 1 < steps; ++i) {
    step_in_place(state, settings.dt);
    state.t = t0 + static_cast<double>(i + 1) * settings.dt;
  }
  step_in_place(state, t1 - state.t);
  state.t = t1;
}

GridState solve(const Geometry& g, const LabFunction& lab_state, double t0, double t1, int nx,
                const SolverSettings& settings) {
  if (!(settings.dt > 0.0)) throw InvalidParameter("time step must be positive");
  g.require_valid(t0);
  g.require_valid(t1);
  GridState state = init_from_lab(g, lab_state, nx, t0);
  advance(state, t1, settings);
  return state;
}

LabSamples map_to_lab(const GridState& state) {
  const Geometry& g = state.geometry;
  const Phase parts = gauge_phase(g, state.t);
  LabSamples out{Eigen::VectorXd(state.nx), Eigen::VectorXcd(state.nx)};
  for (int j = 1; j <= state.nx; ++j) {
    const double x = g.from_comoving(state.xbar(j), state.t);
    out.xs[j - 1] = x;
    out.values[j - 1] = gauge_factor(g, parts, x, state.t) * state.samples[j - 1];
  }
  return out;
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& xs) {
  const Eigen::Index n = xs.size();
  Eigen::VectorXd w(n);
  if (n == 0) return w;
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double prev = j > 0 ? xs[j - 1] : 2.0 * xs[0] - xs[1];
    const double next = j + 1 < n ? xs[j + 1] : 2.0 * xs[n - 1] - xs[n - 2];
    w[j] = 0.5 * (next - prev);
  }
  return w;
}

double fidelity(const LabSamples& a, const LabSamples& b) {
  if (a.xs.size() != b.xs.size() || a.values.size() != a.xs.size() || b.values.size() != b.xs.size())
    throw InvalidParameter("fidelity requires samples on identical grids");
  if (a.xs.size() == 0) throw InvalidParameter("fidelity requires non-empty grids");
  if ((a.xs - b.xs).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.xs.cwiseAbs().maxCoeff()))
    throw InvalidParameter("fidelity requires samples on identical grids");
  const Eigen::VectorXd w = trapezoid_weights(a.xs);
  const std::complex<double> overlap = (a.values.conjugate().array() * b.values.array() * w.array()).sum();
  const double na = std::sqrt((a.values.array().abs2() * w.array()).sum());
  const double nb = std::sqrt((b.values.array().abs2() * w.array()).sum());
  if (na == 0.0 || nb == 0.0) throw InvalidParameter("fidelity of a zero state is undefined");
  return std::min(1.0, std::abs(overlap) / (na * nb));
}

}  // namespace moving_well::fdm
