#pragma once

// Coefficient-level arithmetic for truncated Hardy / Lebesgue spaces on the
// unit circle. An AnalyticSeries of truncation N holds the coefficients of
// z^0..z^{N-1}; a LaurentSeries of truncation N holds z^{-N}..z^{N}.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace toepker {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Finitely supported coefficient list, c[n] multiplies z^n.
using Polynomial = std::vector<cplx>;

inline constexpr double kBoundaryEps = 1e-6;
inline constexpr double kTailWarnRatio = 1e-8;
inline constexpr double kScalarTol = 1e-10;

class AnalyticSeries {
 public:
  explicit AnalyticSeries(int truncation);
  explicit AnalyticSeries(CVector coeffs);

  static AnalyticSeries monomial(int power, int truncation, cplx scale = 1.0);
  /// Pads with zeros or drops coefficients at index >= truncation.
  static AnalyticSeries from_polynomial(std::span<const cplx> coeffs, int truncation);

  int truncation() const { return static_cast<int>(coeffs_.size()); }
  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }

  cplx operator[](int n) const { return coeffs_(n); }
  cplx& operator[](int n) { return coeffs_(n); }

  double norm() const { return coeffs_.norm(); }
  double squared_norm() const { return coeffs_.squaredNorm(); }

  /// Highest index with |c_n| > rel_tol * max|c|, or -1 for the zero series.
  int degree(double rel_tol = 0.0) const;

  /// Same coefficients at another truncation (zero-padded or cut).
  AnalyticSeries resized(int truncation) const;

  AnalyticSeries& operator+=(const AnalyticSeries& other);
  AnalyticSeries& operator-=(const AnalyticSeries& other);
  AnalyticSeries& operator*=(cplx s);

  friend AnalyticSeries operator+(AnalyticSeries a, const AnalyticSeries& b) { return a += b; }
  friend AnalyticSeries operator-(AnalyticSeries a, const AnalyticSeries& b) { return a -= b; }
  friend AnalyticSeries operator*(cplx s, AnalyticSeries a) { return a *= s; }
  friend AnalyticSeries operator*(AnalyticSeries a, cplx s) { return a *= s; }

 private:
  CVector coeffs_;
};

class LaurentSeries {
 public:
  explicit LaurentSeries(int truncation);

  /// Places f's coefficients at indices 0..N-1 (index N stays zero).
  static LaurentSeries from_analytic(const AnalyticSeries& f);
  /// coeffs[i] is the coefficient of z^{lowest + i}; must fit in -N..N.
  static LaurentSeries from_coefficients(int lowest, std::span<const cplx> coeffs, int truncation);

  int truncation() const { return truncation_; }
  cplx at(int n) const { return coeffs_(n + truncation_); }
  cplx& at(int n) { return coeffs_(n + truncation_); }
  /// Storage for indices -N..N, offset by N.
  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }

  double norm() const { return coeffs_.norm(); }

  /// Same coefficients at another truncation (zero-padded or cut).
  LaurentSeries resized(int truncation) const;

  LaurentSeries& operator+=(const LaurentSeries& other);
  LaurentSeries& operator-=(const LaurentSeries& other);
  LaurentSeries& operator*=(cplx s);

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(cplx s, LaurentSeries a) { return a *= s; }

 private:
  int truncation_;
  CVector coeffs_;
};

/// Accumulates the relative mass dropped by truncated products.
struct TailMonitor {
  double worst_ratio = 0.0;
  void record(double ratio) {
    if (ratio > worst_ratio) worst_ratio = ratio;
  }
  bool headroom_violated() const { return worst_ratio > kTailWarnRatio; }
};

struct BlaschkeZero {
  cplx point;
  int multiplicity = 1;
};

/// Finite Blaschke product c * z^m * prod ((a - z) / (1 - conj(a) z))^k.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  BlaschkeProduct(std::vector<BlaschkeZero> zeros, int z_power = 0, cplx unimodular = 1.0);

  static BlaschkeProduct monomial(int power) { return BlaschkeProduct({}, power); }

  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
  int z_power() const { return z_power_; }
  cplx unimodular_const() const { return unimodular_; }

  int degree() const;
  bool is_monomial() const { return zeros_.empty(); }

  /// Closed-form value, valid anywhere the denominators do not vanish.
  cplx evaluate(cplx z) const;
  cplx at_origin() const { return evaluate(0.0); }

 private:
  std::vector<BlaschkeZero> zeros_;
  int z_power_ = 0;
  cplx unimodular_ = 1.0;
};

struct InnerOuter {
  BlaschkeProduct inner;
  AnalyticSeries outer;
};

LaurentSeries conj_on_circle(const AnalyticSeries& f);
AnalyticSeries riesz_project(const LaurentSeries& f);

LaurentSeries multiply(const LaurentSeries& f, const LaurentSeries& g, TailMonitor* tail = nullptr);
/// Cauchy product cut to the common truncation.
AnalyticSeries multiply(const AnalyticSeries& f, const AnalyticSeries& g, TailMonitor* tail = nullptr);

AnalyticSeries shift(const AnalyticSeries& f);
AnalyticSeries backshift(const AnalyticSeries& f);
AnalyticSeries backshift(const AnalyticSeries& f, int times);

cplx inner_product(const AnalyticSeries& f, const AnalyticSeries& g);
cplx inner_product(const LaurentSeries& f, const LaurentSeries& g);

cplx eval_at(const AnalyticSeries& f, cplx point);

AnalyticSeries blaschke_factor_expand(cplx zero, int truncation);
AnalyticSeries blaschke_expand(const BlaschkeProduct& b, int truncation);

/// Roots of a polynomial via eigenvalues of its companion matrix.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);
cplx polynomial_eval(std::span<const cplx> coeffs, cplx z);
Polynomial polynomial_multiply(std::span<const cplx> a, std::span<const cplx> b);
/// Coefficients with trailing (near-)zeros removed; see AnalyticSeries::degree.
Polynomial to_polynomial(const AnalyticSeries& p, double rel_tol = 1e-13);

InnerOuter inner_outer_factor(const AnalyticSeries& p);

/// First N Taylor coefficients of 1/p; p must have no roots in the closed disk.
AnalyticSeries taylor_invert(std::span<const cplx> p, int truncation);
AnalyticSeries taylor_invert(const AnalyticSeries& p, int truncation);
/// Throws NotInvertibleError unless all roots satisfy |r| > 1 + kBoundaryEps.
void require_invertible(std::span<const cplx> p);

/// Coefficients conj(a)^n; the normalized variant has unit norm at this truncation.
AnalyticSeries reproducing_kernel(cplx alpha, int truncation, bool normalized = false);

}  // namespace toepker
