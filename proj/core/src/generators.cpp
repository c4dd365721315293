#include "toepker/generators.hpp"

#include <cmath>
#include <numbers>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

cplx gaussian(Rng& rng) {
  std::normal_distribution<double> normal;
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

AnalyticSeries random_series(Rng& rng, int degree, int N) {
  return AnalyticSeries::from_polynomial(random_polynomial(rng, degree), N);
}

AnalyticSeries normalized(AnalyticSeries f) {
  const double n = f.norm();
  if (n == 0.0) throw DegenerateError("cannot normalize a zero vector");
  return f * cplx(1.0 / n);
}

// Adds a multiple of P_{basis^perp} 1 so that f(0) = target.
void set_value_at_zero(AnalyticSeries& f, const std::vector<AnalyticSeries>& basis, cplx target) {
  const AnalyticSeries s = orthogonalize_against(AnalyticSeries::monomial(0, f.truncation()), basis);
  if (std::abs(s[0]) < 1e-8) throw DegenerateError("constant lies in the excluded span");
  f += ((target - f[0]) / s[0]) * s;
}

std::vector<AnalyticSeries> random_orthogonal_family(Rng& rng, int count, int degree, int N,
                                                     std::vector<AnalyticSeries> against = {}) {
  std::vector<AnalyticSeries> out;
  for (int i = 0; i < count; ++i) {
    AnalyticSeries f = orthogonalize_against(random_series(rng, degree, N), against);
    const double scale = uniform(rng, 0.5, 2.0);
    f = normalized(f) * cplx(scale);
    against.push_back(normalized(f));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

Polynomial random_polynomial(Rng& rng, int degree) {
  Polynomial p(degree + 1);
  for (auto& c : p) c = gaussian(rng);
  return p;
}

BlaschkeProduct random_blaschke(Rng& rng, int z_power, int zeros, double max_modulus) {
  std::vector<BlaschkeZero> pts;
  for (int i = 0; i < zeros; ++i) {
    const double r = uniform(rng, 0.1, max_modulus);
    const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    pts.push_back({std::polar(r, t), 1});
  }
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return BlaschkeProduct(std::move(pts), z_power, std::polar(1.0, phase));
}

Polynomial random_invertible_polynomial(Rng& rng, int degree, double min_root) {
  Polynomial p{gaussian(rng)};
  for (int i = 0; i < degree; ++i) {
    const cplx root = std::polar(uniform(rng, min_root, 2.0 * min_root),
                                 uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const Polynomial factor{1.0, -1.0 / root};
    p = polynomial_multiply(p, factor);
  }
  return p;
}

AnalyticSeries orthogonalize_against(AnalyticSeries f, const std::vector<AnalyticSeries>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) f -= inner_product(f, b) * b;
  }
  return f;
}

std::vector<AnalyticSeries> orthonormalize(std::vector<AnalyticSeries> vectors) {
  std::vector<AnalyticSeries> out;
  for (auto& v : vectors) {
    const double before = v.norm();
    AnalyticSeries w = orthogonalize_against(std::move(v), out);
    if (w.norm() <= 1e-10 * std::max(1.0, before)) {
      throw DegenerateError("orthonormalize: linearly dependent input");
    }
    out.push_back(normalized(std::move(w)));
  }
  return out;
}

Instance random_zero_instance(Rng& rng, int N, int rank) {
  Instance inst;
  inst.label = "zero symbol, rank " + std::to_string(rank);
  inst.symbol = ZeroSymbol{};
  std::vector<AnalyticSeries> us;
  for (int i = 0; i < rank; ++i) us.push_back(random_series(rng, pick(rng, 1, 8), N));
  us = orthonormalize(std::move(us));
  const auto vs = random_orthogonal_family(rng, rank, 8, N);
  for (int i = 0; i < rank; ++i) inst.perturbation.terms.push_back({us[i], vs[i]});
  return inst;
}

Instance random_inner_instance(Rng& rng, int N, int rank, bool blaschke) {
  Instance inst;
  const BlaschkeProduct theta = blaschke ? random_blaschke(rng, pick(rng, 0, 1), pick(rng, 1, 2), 0.5)
                                         : BlaschkeProduct::monomial(pick(rng, 1, 3));
  inst.label = std::string("inner symbol (") + (blaschke ? "Blaschke" : "monomial") + "), rank " +
               std::to_string(rank);
  inst.symbol = InnerSymbol{theta};
  constexpr int kDeg = 5;
  std::vector<AnalyticSeries> us;
  for (int i = 0; i < rank; ++i) us.push_back(random_series(rng, kDeg, N));
  us = orthonormalize(std::move(us));

  // q_i = -u_i + r_i with r_i orthogonal to every u and to each other; the q_i span the kernel.
  std::vector<AnalyticSeries> excluded = us;
  const AnalyticSeries theta_series = blaschke_expand(theta, N);
  for (int i = 0; i < rank; ++i) {
    AnalyticSeries r = orthogonalize_against(random_series(rng, kDeg, N), excluded);
    if (i == 0) set_value_at_zero(r, excluded, us[0][0]);
    excluded.push_back(normalized(r));
    const AnalyticSeries q = r - us[i];
    inst.perturbation.terms.push_back({us[i], multiply(theta_series, q)});
  }
  return inst;
}

Instance random_invertible_product_instance(Rng& rng, int N, int rank) {
  Instance inst;
  const auto sym = make_invertible_product(random_invertible_polynomial(rng, pick(rng, 1, 2)),
                                           random_invertible_polynomial(rng, pick(rng, 0, 1)));
  inst.label = "invertible product symbol, rank " + std::to_string(rank);
  inst.symbol = sym;
  constexpr int kDeg = 5;
  std::vector<AnalyticSeries> us;
  for (int i = 0; i < rank; ++i) us.push_back(random_series(rng, kDeg, N));
  us = orthonormalize(std::move(us));

  // x = -u_1 + r vanishes at 0 and satisfies T_g x = v_1, so x is in the kernel.
  AnalyticSeries r = orthogonalize_against(random_series(rng, kDeg, N), us);
  set_value_at_zero(r, us, us[0][0]);
  const AnalyticSeries x = r - us[0];
  const LaurentSeries g = symbol_fourier(SymbolSpec{sym}, N);
  const AnalyticSeries v1 = riesz_project(multiply(g, LaurentSeries::from_analytic(x)));
  auto rest = random_orthogonal_family(rng, rank - 1, 8, N, {normalized(v1)});
  inst.perturbation.terms.push_back({us[0], v1});
  for (int i = 1; i < rank; ++i) inst.perturbation.terms.push_back({us[i], rest[i - 1]});
  return inst;
}

Instance random_conj_inner_instance(Rng& rng, int N, int rank, bool blaschke) {
  Instance inst;
  const BlaschkeProduct theta = blaschke ? random_blaschke(rng, pick(rng, 0, 1), 2, 0.5)
                                         : BlaschkeProduct::monomial(pick(rng, 2, 4));
  inst.symbol = ConjInnerSymbol{theta};
  const bool divisible_first = pick(rng, 0, 2) != 0;
  inst.label = std::string("conjugate inner symbol (") + (blaschke ? "Blaschke" : "monomial") +
               (divisible_first ? ", theta | u_1" : ", generic u") + "), rank " +
               std::to_string(rank);

  if (!divisible_first) {
    std::vector<AnalyticSeries> us;
    for (int i = 0; i < rank; ++i) us.push_back(random_series(rng, 8, N));
    us = orthonormalize(std::move(us));
    const auto vs = random_orthogonal_family(rng, rank, 8, N);
    for (int i = 0; i < rank; ++i) inst.perturbation.terms.push_back({us[i], vs[i]});
    return inst;
  }

  const AnalyticSeries theta_series = blaschke_expand(theta, N);
  const LaurentSeries ctheta = conj_on_circle(theta_series);
  const AnalyticSeries q1 = normalized(random_series(rng, 4, N));
  std::vector<AnalyticSeries> us{multiply(theta_series, q1)};
  us[0] = normalized(us[0]);
  for (int i = 1; i < rank; ++i) us.push_back(random_series(rng, 8, N));
  us = orthonormalize(std::move(us));

  // v_1 = -q_1 + r with r orthogonal to q_1 and to T_conj(theta) u_i (i >= 2),
  // so theta v_1 lies in the kernel.
  std::vector<AnalyticSeries> blocked{q1};
  for (int i = 1; i < rank; ++i) {
    blocked.push_back(riesz_project(multiply(ctheta, LaurentSeries::from_analytic(us[i]))));
  }
  blocked = orthonormalize(std::move(blocked));
  const AnalyticSeries r = orthogonalize_against(random_series(rng, 4, N), blocked);
  const AnalyticSeries v1 = r - q1;
  auto rest = random_orthogonal_family(rng, rank - 1, 8, N, {normalized(v1)});
  inst.perturbation.terms.push_back({us[0], v1});
  for (int i = 1; i < rank; ++i) inst.perturbation.terms.push_back({us[i], rest[i - 1]});
  return inst;
}

}  // namespace toepker
