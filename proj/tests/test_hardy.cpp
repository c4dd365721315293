#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "series_division.hpp"
#include "toepker/errors.hpp"
#include "toepker/hardy.hpp"

using namespace toepker;

namespace {

double max_diff(const AnalyticSeries& f, const oracle::Coeffs& c) {
  double worst = 0.0;
  for (int i = 0; i < f.truncation(); ++i) {
    const cplx ref = i < static_cast<int>(c.size()) ? c[i] : 0.0;
    worst = std::max(worst, std::abs(f[i] - ref));
  }
  return worst;
}

}  // namespace

TEST_SUITE("hardy") {

TEST_CASE("monomials, shifts and backshifts") {
  const auto f = AnalyticSeries::from_polynomial(Polynomial{1.0, 2.0, 3.0}, 6);
  CHECK(f.degree() == 2);
  const auto s = shift(f);
  CHECK(s[0] == 0.0);
  CHECK(s[3] == 3.0);
  const auto b = backshift(f);
  CHECK(b[0] == 2.0);
  CHECK(b[1] == 3.0);
  CHECK(b[2] == 0.0);
  CHECK(backshift(f, 2)[0] == 3.0);
  CHECK(backshift(shift(f)).coeffs() == f.coeffs());
  CHECK(AnalyticSeries::monomial(4, 6, 2.0)[4] == 2.0);
  CHECK(AnalyticSeries::monomial(4, 6).degree() == 4);
  CHECK(AnalyticSeries(5).degree() == -1);
}

TEST_CASE("conjugation on the circle and Riesz projection") {
  const auto f = AnalyticSeries::from_polynomial(Polynomial{{1, 1}, {0, 2}, 3.0}, 4);
  const auto g = conj_on_circle(f);
  CHECK(g.at(0) == cplx(1, -1));
  CHECK(g.at(-1) == cplx(0, -2));
  CHECK(g.at(-2) == 3.0);
  CHECK(g.at(1) == 0.0);
  const auto p = riesz_project(g);
  CHECK(p[0] == cplx(1, -1));
  CHECK(p[1] == 0.0);
  const auto back = riesz_project(LaurentSeries::from_analytic(f));
  CHECK(back.coeffs() == f.coeffs());
}

TEST_CASE("truncated Cauchy product") {
  const auto f = AnalyticSeries::from_polynomial(Polynomial{1.0, 1.0}, 4);
  const auto sq = multiply(f, f);
  CHECK(sq[0] == 1.0);
  CHECK(sq[1] == 2.0);
  CHECK(sq[2] == 1.0);
  TailMonitor tail;
  const auto g = AnalyticSeries::from_polynomial(Polynomial{0.0, 0.0, 0.0, 1.0}, 4);
  const auto cut = multiply(g, g, &tail);
  CHECK(cut.norm() == 0.0);
  CHECK(tail.headroom_violated());
}

TEST_CASE("Laurent product of z and conj z is one") {
  const auto z = AnalyticSeries::monomial(1, 4);
  const auto prod = multiply(LaurentSeries::from_analytic(z), conj_on_circle(z));
  CHECK(prod.at(0) == 1.0);
  CHECK(prod.norm() == doctest::Approx(1.0));
}

TEST_CASE("inner product and evaluation") {
  const auto f = AnalyticSeries::from_polynomial(Polynomial{1.0, {0, 1}}, 4);
  CHECK(inner_product(f, f) == cplx(2.0));
  CHECK(inner_product(f, AnalyticSeries::monomial(1, 4)) == cplx(0, 1));
  CHECK(std::abs(eval_at(f, 0.5) - cplx(1.0, 0.5)) < 1e-15);
}

TEST_CASE("reproducing kernel evaluates") {
  const cplx alpha{0.3, -0.4};
  const int n = 96;
  const auto k = reproducing_kernel(alpha, n);
  const auto f = AnalyticSeries::from_polynomial(Polynomial{2.0, -1.0, {0, 3}}, n);
  CHECK(std::abs(inner_product(f, k) - eval_at(f, alpha)) < 1e-13);
  CHECK(reproducing_kernel(alpha, n, true).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.squared_norm() == doctest::Approx(1.0 / (1.0 - std::norm(alpha))).epsilon(1e-13));
}

TEST_CASE("Blaschke factor expansion against long division") {
  const cplx a{0.5, 0.3};
  const auto f = blaschke_factor_expand(a, 64);
  const auto ref = oracle::series_divide({a, -1.0}, {1.0, -std::conj(a)}, 64);
  CHECK(max_diff(f, ref) < 1e-14);
}

TEST_CASE("Blaschke product expansion against long division") {
  const std::vector<cplx> zeros{{0.5, 0.3}, {-0.7, 0.0}, {0.1, -0.6}};
  const BlaschkeProduct b({{zeros[0], 1}, {zeros[1], 1}, {zeros[2], 1}}, 2, cplx(0, 1));
  const auto f = blaschke_expand(b, 128);
  const auto r = oracle::blaschke_rational(zeros, 2, cplx(0, 1));
  CHECK(max_diff(f, oracle::series_divide(r.num, r.den, 128)) < 1e-13);
  CHECK(b.degree() == 5);
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("repeated zeros expand as powers") {
  const cplx a{-0.2, 0.4};
  const BlaschkeProduct b({{a, 2}});
  const auto r = oracle::blaschke_rational({a, a}, 0);
  CHECK(max_diff(blaschke_expand(b, 64), oracle::series_divide(r.num, r.den, 64)) < 1e-14);
}

TEST_CASE("Blaschke products are unimodular on the circle") {
  const BlaschkeProduct b({{{0.6, 0.2}, 1}, {{-0.3, 0.5}, 2}}, 1);
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / 16.0);
    CHECK(std::abs(b.evaluate(z)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(std::abs(b.at_origin()) < 1e-15);
}

TEST_CASE("Taylor inversion against long division") {
  const Polynomial p{1.0, cplx(0.4, 0.2), cplx(0.0, -0.1)};
  const auto inv = taylor_invert(p, 80);
  CHECK(max_diff(inv, oracle::series_divide({1.0}, p, 80)) < 1e-14);
  CHECK_THROWS_AS(taylor_invert(Polynomial{1.0, -2.0}, 16), NotInvertibleError);
  CHECK_THROWS_AS(require_invertible(Polynomial{0.0, 1.0}), NotInvertibleError);
  CHECK_NOTHROW(require_invertible(Polynomial{3.0, 1.0}));
}

TEST_CASE("polynomial roots") {
  const Polynomial p = polynomial_multiply(Polynomial{-0.5, 1.0}, Polynomial{cplx(0, -2), 1.0});
  auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
  CHECK(std::abs(roots[0] - 0.5) < 1e-13);
  CHECK(std::abs(roots[1] - cplx(0, 2)) < 1e-13);
  CHECK(std::abs(polynomial_eval(p, cplx(0, 2))) < 1e-13);
}

TEST_CASE("inner-outer factorization of a polynomial") {
  const Polynomial p = polynomial_multiply(
      polynomial_multiply(Polynomial{0.0, 1.0}, Polynomial{-0.4, 1.0}), Polynomial{3.0, 1.0});
  const int n = 64;
  const auto io = inner_outer_factor(AnalyticSeries::from_polynomial(p, n));
  CHECK(io.inner.degree() == 2);
  CHECK(io.inner.z_power() == 1);
  const auto back = multiply(blaschke_expand(io.inner, n), io.outer);
  CHECK((back.coeffs() - AnalyticSeries::from_polynomial(p, n).coeffs()).norm() < 1e-12);
  for (const cplx r : polynomial_roots(to_polynomial(io.outer))) CHECK(std::abs(r) > 1.0);
}

TEST_CASE("roots on the circle are rejected") {
  const auto p = AnalyticSeries::from_polynomial(Polynomial{-1.0, 1.0}, 8);
  CHECK_THROWS_AS(inner_outer_factor(p), BoundaryAmbiguousError);
}

TEST_CASE("random products stay in the section") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial a(4), b(4);
    for (auto& c : a) c = {gauss(rng), gauss(rng)};
    for (auto& c : b) c = {gauss(rng), gauss(rng)};
    const auto prod = multiply(AnalyticSeries::from_polynomial(a, 16), AnalyticSeries::from_polynomial(b, 16));
    const auto ref = polynomial_multiply(a, b);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(prod[static_cast<int>(i)] - ref[i]) < 1e-13);
  }
}

}
