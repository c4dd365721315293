#include "toepker/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

void require_same_truncation(int a, int b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": truncation mismatch (" << a << " vs " << b << ")";
    throw InputError(os.str());
  }
}

void require_in_disk(cplx point, const char* where) {
  if (!(std::abs(point) < 1.0)) {
    std::ostringstream os;
    os << where << ": point " << point << " is not inside the open unit disk";
    throw InputError(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// AnalyticSeries

AnalyticSeries::AnalyticSeries(int truncation) {
  if (truncation < 1) throw InputError("AnalyticSeries: truncation must be positive");
  coeffs_ = CVector::Zero(truncation);
}

AnalyticSeries::AnalyticSeries(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) throw InputError("AnalyticSeries: truncation must be positive");
}

AnalyticSeries AnalyticSeries::monomial(int power, int truncation, cplx scale) {
  AnalyticSeries f(truncation);
  if (power < 0) throw InputError("monomial: negative power");
  if (power < truncation) f[power] = scale;
  return f;
}

AnalyticSeries AnalyticSeries::from_polynomial(std::span<const cplx> coeffs, int truncation) {
  AnalyticSeries f(truncation);
  const int n = std::min<int>(truncation, static_cast<int>(coeffs.size()));
  for (int i = 0; i < n; ++i) f[i] = coeffs[i];
  return f;
}

int AnalyticSeries::degree(double rel_tol) const {
  const double scale = coeffs_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return -1;
  for (int n = truncation() - 1; n >= 0; --n) {
    if (std::abs(coeffs_(n)) > rel_tol * scale) return n;
  }
  return -1;
}

AnalyticSeries AnalyticSeries::resized(int truncation) const {
  AnalyticSeries out(truncation);
  const int n = std::min(truncation, this->truncation());
  out.coeffs_.head(n) = coeffs_.head(n);
  return out;
}

AnalyticSeries& AnalyticSeries::operator+=(const AnalyticSeries& other) {
  require_same_truncation(truncation(), other.truncation(), "AnalyticSeries +");
  coeffs_ += other.coeffs_;
  return *this;
}

AnalyticSeries& AnalyticSeries::operator-=(const AnalyticSeries& other) {
  require_same_truncation(truncation(), other.truncation(), "AnalyticSeries -");
  coeffs_ -= other.coeffs_;
  return *this;
}

AnalyticSeries& AnalyticSeries::operator*=(cplx s) {
  coeffs_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// LaurentSeries

LaurentSeries::LaurentSeries(int truncation) : truncation_(truncation) {
  if (truncation < 1) throw InputError("LaurentSeries: truncation must be positive");
  coeffs_ = CVector::Zero(2 * truncation + 1);
}

LaurentSeries LaurentSeries::from_analytic(const AnalyticSeries& f) {
  LaurentSeries out(f.truncation());
  out.coeffs_.segment(out.truncation_, f.truncation()) = f.coeffs();
  return out;
}

LaurentSeries LaurentSeries::from_coefficients(int lowest, std::span<const cplx> coeffs,
                                               int truncation) {
  LaurentSeries out(truncation);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int n = lowest + static_cast<int>(i);
    if (coeffs[i] == cplx(0.0)) continue;
    if (n < -truncation || n > truncation) {
      throw InputError("LaurentSeries: coefficient index outside -N..N");
    }
    out.at(n) = coeffs[i];
  }
  return out;
}

LaurentSeries LaurentSeries::resized(int truncation) const {
  LaurentSeries out(truncation);
  const int n = std::min(truncation, truncation_);
  for (int k = -n; k <= n; ++k) out.at(k) = at(k);
  return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
  require_same_truncation(truncation_, other.truncation_, "LaurentSeries +");
  coeffs_ += other.coeffs_;
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& other) {
  require_same_truncation(truncation_, other.truncation_, "LaurentSeries -");
  coeffs_ -= other.coeffs_;
  return *this;
}

LaurentSeries& LaurentSeries::operator*=(cplx s) {
  coeffs_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Blaschke products

BlaschkeProduct::BlaschkeProduct(std::vector<BlaschkeZero> zeros, int z_power, cplx unimodular)
    : z_power_(z_power), unimodular_(unimodular) {
  if (z_power < 0) throw InputError("BlaschkeProduct: negative z_power");
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-12) {
    throw InputError("BlaschkeProduct: unimodular constant must have modulus 1");
  }
  for (const auto& z : zeros) {
    if (z.multiplicity < 1) throw InputError("BlaschkeProduct: multiplicity must be positive");
    require_in_disk(z.point, "BlaschkeProduct");
    if (z.point == cplx(0.0)) {
      z_power_ += z.multiplicity;
    } else {
      zeros_.push_back(z);
    }
  }
}

int BlaschkeProduct::degree() const {
  int d = z_power_;
  for (const auto& z : zeros_) d += z.multiplicity;
  return d;
}

cplx BlaschkeProduct::evaluate(cplx z) const {
  cplx value = unimodular_ * std::pow(z, z_power_);
  for (const auto& zero : zeros_) {
    const cplx factor = (zero.point - z) / (1.0 - std::conj(zero.point) * z);
    value *= std::pow(factor, zero.multiplicity);
  }
  return value;
}

// ---------------------------------------------------------------------------
// Core operations

LaurentSeries conj_on_circle(const AnalyticSeries& f) {
  LaurentSeries out(f.truncation());
  for (int n = 0; n < f.truncation(); ++n) out.at(-n) = std::conj(f[n]);
  return out;
}

AnalyticSeries riesz_project(const LaurentSeries& f) {
  const int N = f.truncation();
  return AnalyticSeries(CVector(f.coeffs().segment(N, N)));
}

LaurentSeries multiply(const LaurentSeries& f, const LaurentSeries& g, TailMonitor* tail) {
  require_same_truncation(f.truncation(), g.truncation(), "multiply");
  const int N = f.truncation();
  const int width = 2 * N + 1;

  // Support bounds keep the convolution proportional to the actual bandwidth.
  auto support = [width](const CVector& c) {
    int lo = 0;
    int hi = width - 1;
    while (lo < width && c(lo) == cplx(0.0)) ++lo;
    while (hi >= 0 && c(hi) == cplx(0.0)) --hi;
    return std::pair{lo, hi};
  };
  const auto [flo, fhi] = support(f.coeffs());
  const auto [glo, ghi] = support(g.coeffs());

  LaurentSeries out(N);
  if (flo > fhi || glo > ghi) return out;

  double dropped = 0.0;
  double total = 0.0;
  // Full product index (storage) i + j - N for storage indices i, j.
  CVector full = CVector::Zero(fhi + ghi - flo - glo + 1);
  for (int i = flo; i <= fhi; ++i) {
    const cplx a = f.coeffs()(i);
    if (a == cplx(0.0)) continue;
    for (int j = glo; j <= ghi; ++j) full(i + j - flo - glo) += a * g.coeffs()(j);
  }
  for (int k = 0; k < full.size(); ++k) {
    const int storage = k + flo + glo - N;
    const double mass = std::norm(full(k));
    total += mass;
    if (storage < 0 || storage >= width) {
      dropped += mass;
    } else {
      out.coeffs()(storage) = full(k);
    }
  }
  if (tail != nullptr && total > 0.0) tail->record(std::sqrt(dropped / total));
  return out;
}

AnalyticSeries multiply(const AnalyticSeries& f, const AnalyticSeries& g, TailMonitor* tail) {
  require_same_truncation(f.truncation(), g.truncation(), "multiply");
  const int N = f.truncation();
  const int df = f.degree();
  const int dg = g.degree();
  AnalyticSeries out(N);
  if (df < 0 || dg < 0) return out;
  double dropped = 0.0;
  double total = 0.0;
  for (int k = 0; k <= df + dg; ++k) {
    cplx acc = 0.0;
    for (int i = std::max(0, k - dg); i <= std::min(k, df); ++i) acc += f[i] * g[k - i];
    total += std::norm(acc);
    if (k < N) {
      out[k] = acc;
    } else {
      dropped += std::norm(acc);
    }
  }
  if (tail != nullptr && total > 0.0) tail->record(std::sqrt(dropped / total));
  return out;
}

AnalyticSeries shift(const AnalyticSeries& f) {
  AnalyticSeries out(f.truncation());
  out.coeffs().tail(f.truncation() - 1) = f.coeffs().head(f.truncation() - 1);
  return out;
}

AnalyticSeries backshift(const AnalyticSeries& f) {
  AnalyticSeries out(f.truncation());
  out.coeffs().head(f.truncation() - 1) = f.coeffs().tail(f.truncation() - 1);
  return out;
}

AnalyticSeries backshift(const AnalyticSeries& f, int times) {
  AnalyticSeries out(f.truncation());
  const int keep = f.truncation() - times;
  if (keep > 0) out.coeffs().head(keep) = f.coeffs().tail(keep);
  return out;
}

cplx inner_product(const AnalyticSeries& f, const AnalyticSeries& g) {
  require_same_truncation(f.truncation(), g.truncation(), "inner_product");
  // Eigen's dot conjugates its left operand.
  return g.coeffs().dot(f.coeffs());
}

cplx inner_product(const LaurentSeries& f, const LaurentSeries& g) {
  require_same_truncation(f.truncation(), g.truncation(), "inner_product");
  return g.coeffs().dot(f.coeffs());
}

cplx eval_at(const AnalyticSeries& f, cplx point) {
  require_in_disk(point, "eval_at");
  cplx acc = 0.0;
  for (int n = f.truncation() - 1; n >= 0; --n) acc = acc * point + f[n];
  return acc;
}

AnalyticSeries blaschke_factor_expand(cplx zero, int truncation) {
  require_in_disk(zero, "blaschke_factor_expand");
  AnalyticSeries out(truncation);
  out[0] = zero;
  const cplx ca = std::conj(zero);
  const double scale = std::norm(zero) - 1.0;
  cplx power = 1.0;
  for (int n = 1; n < truncation; ++n) {
    out[n] = scale * power;
    power *= ca;
  }
  return out;
}

AnalyticSeries blaschke_expand(const BlaschkeProduct& b, int truncation) {
  AnalyticSeries out = AnalyticSeries::monomial(b.z_power(), truncation, b.unimodular_const());
  for (const auto& zero : b.zeros()) {
    const AnalyticSeries factor = blaschke_factor_expand(zero.point, truncation);
    for (int k = 0; k < zero.multiplicity; ++k) out = multiply(out, factor);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

cplx polynomial_eval(std::span<const cplx> coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial polynomial_multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial to_polynomial(const AnalyticSeries& p, double rel_tol) {
  const int d = p.degree(rel_tol);
  Polynomial out;
  for (int n = 0; n <= d; ++n) out.push_back(p[n]);
  return out;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg >= 0 && coeffs[deg] == cplx(0.0)) --deg;
  if (deg < 0) throw InputError("polynomial_roots: zero polynomial");
  std::vector<cplx> roots;
  int low = 0;
  while (coeffs[low] == cplx(0.0)) {
    roots.emplace_back(0.0);
    ++low;
  }
  const int d = deg - low;
  if (d == 0) return roots;
  // Companion matrix of the monic polynomial with coefficients coeffs[low..deg].
  CMatrix companion = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[low + i] / coeffs[deg];
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, /*computeEigenvectors=*/false);
  for (int i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return roots;
}

InnerOuter inner_outer_factor(const AnalyticSeries& p) {
  const Polynomial poly = to_polynomial(p);
  if (poly.empty()) throw InputError("inner_outer_factor: zero polynomial");
  const std::vector<cplx> roots = polynomial_roots(poly);

  std::vector<BlaschkeZero> zeros;
  int z_power = 0;
  Polynomial outer{poly.back()};
  for (const cplx r : roots) {
    const double modulus = std::abs(r);
    if (r == cplx(0.0)) {
      ++z_power;
    } else if (std::abs(modulus - 1.0) <= kBoundaryEps) {
      std::ostringstream os;
      os << "root " << r << " has modulus within " << kBoundaryEps << " of 1";
      throw BoundaryAmbiguousError(os.str());
    } else if (modulus < 1.0) {
      zeros.push_back({r, 1});
      // z - r = -b_r(z) (1 - conj(r) z)
      const Polynomial lin{-1.0, std::conj(r)};
      outer = polynomial_multiply(outer, lin);
    } else {
      const Polynomial lin{-r, 1.0};
      outer = polynomial_multiply(outer, lin);
    }
  }
  return {BlaschkeProduct(std::move(zeros), z_power),
          AnalyticSeries::from_polynomial(outer, p.truncation())};
}

void require_invertible(std::span<const cplx> p) {
  int deg = static_cast<int>(p.size()) - 1;
  while (deg >= 0 && p[deg] == cplx(0.0)) --deg;
  if (deg < 0) throw NotInvertibleError("zero polynomial");
  if (p[0] == cplx(0.0)) throw NotInvertibleError("p(0) = 0");
  for (const cplx r : polynomial_roots(p.first(deg + 1))) {
    if (std::abs(r) <= 1.0 + kBoundaryEps) {
      std::ostringstream os;
      os << "root " << r << " lies in or near the closed unit disk";
      throw NotInvertibleError(os.str());
    }
  }
}

AnalyticSeries taylor_invert(std::span<const cplx> p, int truncation) {
  require_invertible(p);
  AnalyticSeries out(truncation);
  const int d = static_cast<int>(p.size()) - 1;
  out[0] = 1.0 / p[0];
  for (int n = 1; n < truncation; ++n) {
    cplx acc = 0.0;
    for (int k = 1; k <= std::min(n, d); ++k) acc += p[k] * out[n - k];
    out[n] = -acc / p[0];
  }
  return out;
}

AnalyticSeries taylor_invert(const AnalyticSeries& p, int truncation) {
  return taylor_invert(to_polynomial(p), truncation);
}

AnalyticSeries reproducing_kernel(cplx alpha, int truncation, bool normalized) {
  require_in_disk(alpha, "reproducing_kernel");
  AnalyticSeries out(truncation);
  const cplx ca = std::conj(alpha);
  cplx power = 1.0;
  for (int n = 0; n < truncation; ++n) {
    out[n] = power;
    power *= ca;
  }
  if (normalized) out *= 1.0 / out.norm();
  return out;
}

}  // namespace toepker
