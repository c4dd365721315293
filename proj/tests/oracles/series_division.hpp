#pragma once

// Taylor coefficients of rational functions by recursive long division.

#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

using Coeffs = std::vector<std::complex<double>>;

/// First n coefficients of num / den; den[0] must be nonzero.
inline Coeffs series_divide(const Coeffs& num, const Coeffs& den, int n) {
  if (den.empty() || den[0] == 0.0) throw std::invalid_argument("series_divide: den(0) = 0");
  Coeffs c(n, 0.0);
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc = k < static_cast<int>(num.size()) ? num[k] : 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) acc -= den[j] * c[k - j];
    c[k] = acc / den[0];
  }
  return c;
}

inline Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Coeffs poly_pow(const Coeffs& a, int k) {
  Coeffs out{1.0};
  for (int i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

/// Numerator and denominator of c z^m prod ((a - z) / (1 - conj(a) z)).
struct RationalFunction {
  Coeffs num;
  Coeffs den;
};

inline RationalFunction blaschke_rational(const std::vector<std::complex<double>>& zeros, int z_power,
                                  std::complex<double> c = 1.0) {
  Coeffs num(z_power + 1, 0.0);
  num[z_power] = c;
  Coeffs den{1.0};
  for (const auto& a : zeros) {
    num = poly_mul(num, {a, -1.0});
    den = poly_mul(den, {1.0, -std::conj(a)});
  }
  return {num, den};
}

}  // namespace oracle
