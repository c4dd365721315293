#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "toepker/errors.hpp"
#include "toepker/generators.hpp"
#include "toepker/operators.hpp"

using namespace toepker;

namespace {

LaurentSeries trig(int lowest, std::vector<cplx> c, int n) {
  return LaurentSeries::from_coefficients(lowest, c, n);
}

/// Column k of T_g as P(g z^k), convolved by hand.
CMatrix toeplitz_by_convolution(const LaurentSeries& g, int n) {
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int m = -g.truncation(); m <= g.truncation(); ++m) {
      const int j = m + k;
      if (j >= 0 && j < n) out(j, k) += g.at(m);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("Toeplitz matrix entries follow the symbol diagonals") {
  const int n = 10;
  const auto g = trig(-2, {cplx(1, 1), 2.0, 3.0, cplx(0, -1), 0.5}, n);
  const auto t = toeplitz_matrix(g, n);
  CHECK((t.entries - toeplitz_by_convolution(g, n)).norm() == 0.0);
  CHECK(t.entries(0, 2) == cplx(1, 1));
  CHECK(t.entries(2, 0) == 0.5);
  CHECK(t.domain_headroom == 2);
  CHECK(t.domain_size() == n - 2);
}

TEST_CASE("T of conj z is the backward shift") {
  const int n = 8;
  const auto t = toeplitz_matrix(trig(-1, {1.0}, n), n);
  const auto f = AnalyticSeries::from_polynomial(Polynomial{1.0, 2.0, 3.0}, n);
  CHECK(apply(t, f).coeffs() == backshift(f).coeffs());
  CHECK(t.domain_headroom == 0);
}

TEST_CASE("adjoint symmetry is exact") {
  const int n = 12;
  const auto g = trig(-3, {cplx(0.2, 1), -1.0, cplx(3, -2), 4.0, cplx(0, 5), 0.25, -0.75}, n);
  LaurentSeries gbar(n);
  for (int m = -n; m <= n; ++m) gbar.at(m) = std::conj(g.at(-m));
  CHECK(toeplitz_matrix(gbar, n).entries == toeplitz_matrix(g, n).entries.adjoint());
}

TEST_CASE("symbol Fourier coefficients of each class") {
  const int n = 32;
  const BlaschkeProduct theta({{cplx(0.5, 0.0), 1}}, 1);
  const auto inner = symbol_fourier(InnerSymbol{theta}, n);
  const auto conj_inner = symbol_fourier(ConjInnerSymbol{theta}, n);
  const auto expanded = blaschke_expand(theta, n);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(inner.at(k) - expanded[k]) < 1e-15);
    CHECK(std::abs(conj_inner.at(-k) - std::conj(expanded[k])) < 1e-15);
  }
  CHECK(symbol_fourier(ZeroSymbol{}, n).norm() == 0.0);
  const auto prod = symbol_fourier(make_invertible_product({1.0, -1.0 / 3.0}, {2.0, 1.0}), n);
  CHECK(std::abs(prod.at(0) - 5.0 / 3.0) < 1e-15);
  CHECK(std::abs(prod.at(-1) - 1.0) < 1e-15);
  CHECK(std::abs(prod.at(1) - (-2.0 / 3.0)) < 1e-15);
}

TEST_CASE("invertible product rejects factors with roots in the disk") {
  CHECK_THROWS_AS(make_invertible_product({1.0, -2.0}, {1.0}), NotInvertibleError);
  CHECK_THROWS_AS(make_invertible_product({1.0}, {0.0, 1.0}), NotInvertibleError);
}

TEST_CASE("rank-one perturbation adds v times <f, u>") {
  const int n = 6;
  PerturbationSpec p;
  p.terms.push_back({AnalyticSeries::monomial(0, n), AnalyticSeries::monomial(2, n, 3.0)});
  const auto r = perturbed_matrix(toeplitz_matrix(ZeroSymbol{}, n), p);
  const auto f = AnalyticSeries::from_polynomial(Polynomial{2.0, 5.0}, n);
  const auto out = apply(r, f);
  CHECK(out[2] == 6.0);
  CHECK(out.norm() == doctest::Approx(6.0));
}

TEST_CASE("perturbation invariants are enforced") {
  const int n = 8;
  PerturbationSpec p;
  p.terms.push_back({AnalyticSeries::monomial(0, n), AnalyticSeries::monomial(1, n)});
  CHECK_NOTHROW(p.validate(n));
  p.terms.push_back({AnalyticSeries::monomial(0, n), AnalyticSeries::monomial(2, n)});
  CHECK_THROWS_AS(p.validate(n), PerturbationError);
  p.terms[1] = {AnalyticSeries::monomial(1, n), AnalyticSeries::monomial(1, n)};
  CHECK_THROWS_AS(p.validate(n), PerturbationError);
  p.terms[1] = {AnalyticSeries::monomial(1, n), AnalyticSeries(n)};
  CHECK_THROWS_AS(p.validate(n), PerturbationError);
  p.terms[1] = {AnalyticSeries::monomial(1, n, 2.0), AnalyticSeries::monomial(3, n)};
  CHECK_THROWS_AS(p.validate(n), PerturbationError);
}

TEST_CASE("product rule holds for admissible pairs") {
  const int n = 64;
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_polynomial(rng, 3);
    const auto b = random_polynomial(rng, 2);
    std::vector<cplx> ca(a.rbegin(), a.rend());
    const auto psi = trig(-3, ca, n);
    const auto phi = trig(-1, {b[0], b[1], b[2]}, n);
    CHECK(toeplitz_product_admissible(psi, phi));
    CHECK(toeplitz_product_residual(psi, phi, n, trial) <= 1e-12);
  }
  const auto zbar = trig(-1, {1.0}, n);
  const auto g = symbol_fourier(make_invertible_product({1.0, 0.25}, {1.0, cplx(0, 0.5)}), n);
  CHECK(toeplitz_product_residual(zbar, g, n) <= 1e-12);
}

TEST_CASE("product rule fails outside the hypotheses and is guarded") {
  const int n = 16;
  const auto z = trig(1, {1.0}, n);
  const auto zbar = trig(-1, {1.0}, n);
  CHECK_FALSE(toeplitz_product_admissible(z, zbar));
  CHECK_THROWS_AS(toeplitz_product_residual(z, zbar, n), HypothesisViolatedError);
  const CMatrix tz = toeplitz_matrix(z, n).entries;
  const CMatrix tzbar = toeplitz_matrix(zbar, n).entries;
  CHECK(std::abs((tz * tzbar)(0, 0)) == 0.0);
}

TEST_CASE("bandwidth of finite symbols") {
  const auto g = trig(-2, {1.0, 0.0, 1.0, 0.0, 0.0, 1.0}, 16);
  const auto bw = bandwidth(g);
  CHECK(bw.negative == 2);
  CHECK(bw.positive == 3);
}

}
