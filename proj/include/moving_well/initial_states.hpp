#pragma once

#include <complex>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moving_well/spectral.hpp"

namespace moving_well::spectral {

/// sqrt(2/a) sin(n pi x / a) on [0, a]: the static box eigenstate.
StateFunction box_state(const Geometry& g, int n);

/// The moving mode n at t = 0 (includes its initial chirp and boost phase).
StateFunction mode_state(const Geometry& g, int n);

/// (2 pi w^2)^(-1/4) exp(-(x - c)^2 / (4 w^2) + i p x / hbar).
StateFunction gaussian_packet(double center, double width, double momentum, double hbar);

/// Piecewise-linear complex samples; zero outside the sampled range.
struct TabulatedState {
  Eigen::VectorXd xs;
  Eigen::VectorXcd values;

  std::complex<double> operator()(double x) const;
  std::vector<double> breakpoints() const;
};

/// Reads `x, re[, im]` rows after a mandatory header row. x must strictly
/// increase.
TabulatedState parse_csv_state(std::istream& in);
TabulatedState load_csv_state(const std::string& path);

}  // namespace moving_well::spectral
