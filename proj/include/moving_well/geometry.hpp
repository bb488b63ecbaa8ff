#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "moving_well/errors.hpp"

namespace moving_well {

template <typename Scalar>
struct PhysicalConstants {
  Scalar hbar{1};
  Scalar mass{1};

  bool valid() const { return hbar > Scalar(0) && mass > Scalar(0) && std::isfinite(hbar) && std::isfinite(mass); }
};

/// An infinite square well whose walls move at constant signed velocities.
///
/// The left wall sits at `u_left * t`, the right wall at `a + u_right * t`.
/// Inside the walls the potential vanishes; outside it is infinite. The
/// width `a + delta * t` with `delta = u_right - u_left` must stay positive,
/// which is checked on every time-dependent query rather than at
/// construction: a contracting well is perfectly valid before it collapses.
template <typename Scalar>
class WellGeometry {
 public:
  using Constants = PhysicalConstants<Scalar>;

  WellGeometry(Scalar a, Scalar u_left, Scalar u_right, Constants constants = {})
      : a_(a), u_left_(u_left), u_right_(u_right), constants_(constants) {
    if (!(a > Scalar(0)) || !std::isfinite(a)) throw InvalidParameter("well width a must be positive and finite");
    if (!constants.valid()) throw InvalidParameter("hbar and mass must be positive and finite");
    if (!std::isfinite(u_left) || !std::isfinite(u_right)) throw InvalidParameter("wall velocities must be finite");
  }

  Scalar width0() const { return a_; }
  Scalar u_left() const { return u_left_; }
  Scalar u_right() const { return u_right_; }
  const Constants& constants() const { return constants_; }
  Scalar hbar() const { return constants_.hbar; }
  Scalar mass() const { return constants_.mass; }

  Scalar delta() const { return u_right_ - u_left_; }
  /// dL/dt, constant for uniformly moving walls.
  Scalar scale_rate() const { return delta() / a_; }
  bool is_rigid() const { return delta() == Scalar(0); }
  bool is_static() const { return u_left_ == Scalar(0) && u_right_ == Scalar(0); }

  /// Future instant at which the width vanishes; empty when the well never
  /// collapses going forward (delta >= 0).
  std::optional<Scalar> validity_horizon() const {
    if (delta() < Scalar(0)) return a_ / -delta();
    return std::nullopt;
  }

  /// Throws HorizonExceeded unless the width at `t` is strictly positive.
  void require_valid(Scalar t) const {
    if (!std::isfinite(t)) throw InvalidParameter("time must be finite");
    if (a_ + delta() * t > Scalar(0)) return;
    throw HorizonExceeded(static_cast<double>(t), static_cast<double>(-a_ / delta()));
  }

  bool is_valid_time(Scalar t) const { return std::isfinite(t) && a_ + delta() * t > Scalar(0); }

  Scalar width(Scalar t) const {
    require_valid(t);
    return a_ + delta() * t;
  }

  /// L(t) = width(t) / a.
  Scalar scale_factor(Scalar t) const {
    require_valid(t);
    return Scalar(1) + delta() * t / a_;
  }

  Scalar left_wall(Scalar t) const {
    require_valid(t);
    return u_left_ * t;
  }

  Scalar right_wall(Scalar t) const {
    require_valid(t);
    return a_ + u_right_ * t;
  }

  std::pair<Scalar, Scalar> wall_positions(Scalar t) const { return {left_wall(t), right_wall(t)}; }

  /// Lab coordinate -> fixed-domain coordinate on [0, a].
  Scalar to_comoving(Scalar x, Scalar t) const { return (x - u_left_ * t) / scale_factor(t); }

  /// Fixed-domain coordinate -> lab coordinate.
  Scalar from_comoving(Scalar xbar, Scalar t) const { return xbar * scale_factor(t) + u_left_ * t; }

  bool contains(Scalar x, Scalar t) const { return x >= left_wall(t) && x <= right_wall(t); }

 private:
  Scalar a_;
  Scalar u_left_;
  Scalar u_right_;
  Constants constants_;
};

template <typename Scalar>
WellGeometry<Scalar> make_geometry(Scalar a, Scalar u_left, Scalar u_right, PhysicalConstants<Scalar> constants = {}) {
  return WellGeometry<Scalar>(a, u_left, u_right, constants);
}

using Constants = PhysicalConstants<double>;
using Geometry = WellGeometry<double>;

}  // namespace moving_well
