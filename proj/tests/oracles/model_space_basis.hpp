#pragma once

// K_theta for a finite Blaschke product, spanned by z^j (j < z_power) and
// z^j / (1 - conj(a) z)^(j+1) (j < multiplicity of a).

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "series_division.hpp"

namespace oracle {

inline Eigen::MatrixXcd model_space_columns(const std::vector<std::pair<std::complex<double>, int>>& zeros,
                                            int z_power, int n) {
  std::vector<Coeffs> cols;
  for (int j = 0; j < z_power; ++j) {
    Coeffs c(n, 0.0);
    c[j] = 1.0;
    cols.push_back(c);
  }
  for (const auto& [a, mult] : zeros) {
    for (int j = 0; j < mult; ++j) {
      Coeffs num(j + 1, 0.0);
      num[j] = 1.0;
      cols.push_back(series_divide(num, poly_pow({1.0, -std::conj(a)}, j + 1), n));
    }
  }
  Eigen::MatrixXcd out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (int i = 0; i < n; ++i) out(i, static_cast<Eigen::Index>(k)) = cols[k][i];
  }
  return out;
}

/// Orthonormal basis of the column span (columns assumed independent).
inline Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
}

/// sin of the largest principal angle between equal-dimension orthonormal frames.
inline double max_angle_sine(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXcd r = b - a * (a.adjoint() * b);
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(r).singularValues()(0);
}

}  // namespace oracle
