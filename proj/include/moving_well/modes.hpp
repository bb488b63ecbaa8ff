#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "moving_well/errors.hpp"
#include "moving_well/geometry.hpp"
#include "moving_well/parallel.hpp"

namespace moving_well {

/// One exact solution of the free Schrödinger equation that vanishes on both
/// moving walls. `energy` is the separation constant n²π²ħ²/(2ma²), defined
/// with the initial width; it is not the instantaneous energy expectation.
template <typename Scalar>
struct MovingMode {
  WellGeometry<Scalar> geometry;
  int n;
  Scalar k;
  Scalar energy;
};

template <typename Scalar>
Scalar mode_energy(const WellGeometry<Scalar>& g, int n) {
  if (n < 1) throw InvalidParameter("quantum number n must be >= 1");
  const Scalar k = Scalar(n) * std::numbers::pi_v<Scalar> / g.width0();
  return g.hbar() * g.hbar() * k * k / (Scalar(2) * g.mass());
}

template <typename Scalar>
MovingMode<Scalar> make_mode(const WellGeometry<Scalar>& g, int n) {
  const Scalar energy = mode_energy(g, n);
  return {g, n, Scalar(n) * std::numbers::pi_v<Scalar> / g.width0(), energy};
}

/// tau(t) = integral of 1/L(s)^2 over [0, t]. For uniformly moving walls the
/// integral is (a/delta)(1 - 1/L), which simplifies to t/L(t) with no
/// division by delta; the rigid branch returns t itself.
template <typename Scalar>
Scalar time_phase_integral(const WellGeometry<Scalar>& g, Scalar t) {
  g.require_valid(t);
  if (g.is_rigid()) return t;
  return t / g.scale_factor(t);
}

/// Decomposition of the gauge factor multiplying the standing wave.
///
/// With y = x - u_left t the lab-frame mode is
///   sqrt(2/a) exp(log_amplitude) sin(n pi xbar / a)
///     * exp(i [quadratic y^2 + linear x + secular + energy_phase]).
/// `linear` multiplies the lab coordinate x (not y); together with `secular`
/// it is the Galilean boost phase of a frame moving with the left wall.
template <typename Scalar>
struct PhaseParts {
  Scalar quadratic{};
  Scalar linear{};
  Scalar secular{};
  Scalar log_amplitude{};
  Scalar energy_phase{};

  /// Real phase angle at lab point x.
  Scalar angle(const WellGeometry<Scalar>& g, Scalar x, Scalar t) const {
    const Scalar y = x - g.u_left() * t;
    return quadratic * y * y + linear * x + secular + energy_phase;
  }
};

template <typename Scalar>
PhaseParts<Scalar> gauge_phase(const WellGeometry<Scalar>& g, Scalar t) {
  const Scalar L = g.scale_factor(t);
  const Scalar hbar = g.hbar(), m = g.mass(), u = g.u_left();
  PhaseParts<Scalar> p;
  p.quadratic = m * g.delta() / (Scalar(2) * hbar * g.width0() * L);
  p.linear = m * u / hbar;
  p.secular = -m * u * u * t / (Scalar(2) * hbar);
  p.log_amplitude = g.is_rigid() ? Scalar(0) : Scalar(-0.5) * std::log(L);
  return p;
}

template <typename Scalar>
PhaseParts<Scalar> mode_phase(const MovingMode<Scalar>& mode, Scalar t) {
  PhaseParts<Scalar> p = gauge_phase(mode.geometry, t);
  p.energy_phase = -mode.energy * time_phase_integral(mode.geometry, t) / mode.geometry.hbar();
  return p;
}

/// exp(log_amplitude + i * gauge angle): maps the fixed-domain field to the
/// lab field, psi(x, t) = gauge_factor * psibar(xbar, t).
template <typename Scalar>
std::complex<Scalar> gauge_factor(const WellGeometry<Scalar>& g, const PhaseParts<Scalar>& parts, Scalar x,
                                  Scalar t) {
  return std::polar(std::exp(parts.log_amplitude), parts.angle(g, x, t));
}

namespace detail {

template <typename Scalar>
std::complex<Scalar> phasor(Scalar amplitude, Scalar angle) {
  return {amplitude * std::cos(angle), amplitude * std::sin(angle)};
}

template <typename Scalar>
std::complex<Scalar> eval_mode_with(const MovingMode<Scalar>& mode, const PhaseParts<Scalar>& parts, Scalar x,
                                    Scalar t) {
  const auto& g = mode.geometry;
  if (x <= g.left_wall(t) || x >= g.right_wall(t)) return {};
  const Scalar xbar = g.to_comoving(x, t);
  const Scalar a = g.width0();
  const Scalar amplitude = std::sqrt(Scalar(2) / a) * std::exp(parts.log_amplitude) *
                           std::sin(Scalar(mode.n) * std::numbers::pi_v<Scalar> * xbar / a);
  const Scalar y = x - g.u_left() * t;
  const Scalar varying = parts.quadratic * y * y + parts.linear * x;
  return phasor(amplitude, varying) * phasor(Scalar(1), parts.secular + parts.energy_phase);
}

}  // namespace detail

/// Lab-frame amplitude of the moving mode. Identically zero on and outside
/// the walls.
template <typename Scalar>
std::complex<Scalar> eval_mode(const MovingMode<Scalar>& mode, Scalar x, Scalar t) {
  return detail::eval_mode_with(mode, mode_phase(mode, t), x, t);
}

/// Batched eval_mode; each entry is bit-identical to the scalar call.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> eval_mode_grid(
    const MovingMode<Scalar>& mode, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& xs, Scalar t) {
  const PhaseParts<Scalar> parts = mode_phase(mode, t);
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> out(xs.size());
  parallel_for(static_cast<std::size_t>(xs.size()), [&](std::size_t i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out[idx] = detail::eval_mode_with(mode, parts, xs[idx], t);
  });
  return out;
}

/// The standing wave sqrt(2/a) sin(n pi xbar / a) exp(-i E tau / hbar) that
/// the mode becomes on the fixed domain.
template <typename Scalar>
std::complex<Scalar> eval_standing_wave(const MovingMode<Scalar>& mode, Scalar xbar, Scalar t) {
  const auto& g = mode.geometry;
  const Scalar a = g.width0();
  if (xbar <= Scalar(0) || xbar >= a) return {};
  const Scalar amplitude = std::sqrt(Scalar(2) / a) * std::sin(Scalar(mode.n) * std::numbers::pi_v<Scalar> * xbar / a);
  return detail::phasor(amplitude, -mode.energy * time_phase_integral(g, t) / g.hbar());
}

using Mode = MovingMode<double>;
using Phase = PhaseParts<double>;

}  // namespace moving_well
