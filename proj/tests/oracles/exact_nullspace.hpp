#pragma once

// Nullspace over Q(i) by exact Gauss-Jordan elimination.

#include <complex>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
  return {a.re - b.re, a.im - b.im};
}
inline GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

using ExactMatrix = std::vector<std::vector<GaussianRational>>;

/// Basis of {x : A x = 0}, one vector per free column of the reduced echelon form.
inline std::vector<std::vector<std::complex<double>>> exact_nullspace(ExactMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const GaussianRational piv = a[r][c];
    for (auto& x : a[r]) x = x / piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const GaussianRational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = a[i][k] - f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::complex<double>>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::complex<double>> x(cols, 0.0);
    x[f] = 1.0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const GaussianRational v = a[i][f];
      x[pivots[i]] = -v.to_complex();
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace oracle
