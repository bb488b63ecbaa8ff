#pragma once

#include <Eigen/Dense>

#include "moving_well/errors.hpp"

namespace moving_well {

/// Thomas algorithm for a tridiagonal system.
///
/// `lower[i]` couples row i to column i-1 (lower[0] unused), `upper[i]`
/// couples row i to i+1 (upper[n-1] unused). The right-hand side is
/// overwritten with the solution. No pivoting: the matrix must be
/// diagonally dominant or otherwise safe for elimination.
template <typename Scalar>
void thomas_solve(const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& lower,
                  const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& diag,
                  const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& upper,
                  Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> rhs) {
  const Eigen::Index n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw InvalidParameter("tridiagonal bands and right-hand side must have equal length");
  if (n == 0) return;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(n);
  Scalar denom = diag[0];
  c[0] = upper[0] / denom;
  rhs[0] /= denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    c[i] = upper[i] / denom;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace moving_well
