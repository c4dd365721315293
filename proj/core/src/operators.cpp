#include "toepker/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

InvertibleProductSymbol make_invertible_product(Polynomial f1, Polynomial f2) {
  require_invertible(f1);
  require_invertible(f2);
  return {std::move(f1), std::move(f2)};
}

std::string symbol_kind(const SymbolSpec& s) {
  return std::visit(overloaded{
                        [](const ZeroSymbol&) { return std::string("zero"); },
                        [](const TrigPolySymbol&) { return std::string("trig_poly"); },
                        [](const InnerSymbol&) { return std::string("inner"); },
                        [](const ConjInnerSymbol&) { return std::string("conj_inner"); },
                        [](const InvertibleProductSymbol&) {
                          return std::string("invertible_product");
                        },
                    },
                    s);
}

void PerturbationSpec::validate(int truncation, double tol) const {
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (terms[i].u.truncation() != truncation || terms[i].v.truncation() != truncation) {
      throw InputError("perturbation term truncation does not match the operator");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (terms[i].v.norm() <= tol) {
      std::ostringstream os;
      os << "v_" << i + 1 << " is zero";
      throw PerturbationError(os.str());
    }
    for (int j = i; j < n; ++j) {
      const cplx gu = inner_product(terms[i].u, terms[j].u);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(gu - expected) > tol) {
        std::ostringstream os;
        os << "<u_" << i + 1 << ", u_" << j + 1 << "> = " << gu << ", expected " << expected;
        throw PerturbationError(os.str());
      }
      if (i != j) {
        const cplx gv = inner_product(terms[i].v, terms[j].v);
        const double scale = terms[i].v.norm() * terms[j].v.norm();
        if (std::abs(gv) > tol * std::max(1.0, scale)) {
          std::ostringstream os;
          os << "v_" << i + 1 << " and v_" << j + 1 << " are not orthogonal (" << gv << ")";
          throw PerturbationError(os.str());
        }
      }
    }
  }
}

LaurentSeries symbol_fourier(const SymbolSpec& s, int truncation) {
  return std::visit(
      overloaded{
          [&](const ZeroSymbol&) { return LaurentSeries(truncation); },
          [&](const TrigPolySymbol& t) {
            return LaurentSeries::from_coefficients(t.lowest, t.coeffs, truncation);
          },
          [&](const InnerSymbol& t) {
            return LaurentSeries::from_analytic(blaschke_expand(t.theta, truncation));
          },
          [&](const ConjInnerSymbol& t) {
            return conj_on_circle(blaschke_expand(t.theta, truncation));
          },
          [&](const InvertibleProductSymbol& t) {
            const auto f1 = AnalyticSeries::from_polynomial(t.f1, truncation);
            const auto f2 = AnalyticSeries::from_polynomial(t.f2, truncation);
            return multiply(LaurentSeries::from_analytic(f1), conj_on_circle(f2));
          },
      },
      s);
}

Bandwidth bandwidth(const LaurentSeries& g, double tail_tol) {
  const int N = g.truncation();
  double total = 0.0;
  for (int n = -N; n <= N; ++n) total += std::abs(g.at(n));
  Bandwidth out;
  if (total == 0.0) return out;
  const double budget = tail_tol * total;
  double tail = 0.0;
  out.positive = N;
  for (int n = N; n >= 1; --n) {
    tail += std::abs(g.at(n));
    if (tail > budget) break;
    out.positive = n - 1;
  }
  tail = 0.0;
  out.negative = N;
  for (int n = N; n >= 1; --n) {
    tail += std::abs(g.at(-n));
    if (tail > budget) break;
    out.negative = n - 1;
  }
  return out;
}

OperatorMatrix toeplitz_matrix(const LaurentSeries& g, int truncation) {
  if (g.truncation() < truncation - 1) {
    throw InputError("toeplitz_matrix: symbol truncation too small for the section");
  }
  OperatorMatrix t;
  t.entries.resize(truncation, truncation);
  for (int k = 0; k < truncation; ++k) {
    for (int j = 0; j < truncation; ++j) t.entries(j, k) = g.at(j - k);
  }
  t.domain_headroom = std::min(bandwidth(g).positive, truncation - 1);
  t.label = "T_g";
  return t;
}

OperatorMatrix toeplitz_matrix(const SymbolSpec& s, int truncation) {
  OperatorMatrix t = toeplitz_matrix(symbol_fourier(s, truncation), truncation);
  t.label = "T[" + symbol_kind(s) + "]";
  return t;
}

OperatorMatrix perturbed_matrix(const OperatorMatrix& t, const PerturbationSpec& p) {
  OperatorMatrix out = t;
  for (const auto& term : p.terms) {
    if (term.u.truncation() != t.truncation() || term.v.truncation() != t.truncation()) {
      throw InputError("perturbed_matrix: truncation mismatch");
    }
    out.entries.noalias() += term.v.coeffs() * term.u.coeffs().adjoint();
  }
  out.label = t.label + " + rank " + std::to_string(p.rank());
  return out;
}

AnalyticSeries apply(const OperatorMatrix& t, const AnalyticSeries& f) {
  if (f.truncation() != t.truncation()) throw InputError("apply: truncation mismatch");
  return AnalyticSeries(CVector(t.entries * f.coeffs()));
}

bool toeplitz_product_admissible(const LaurentSeries& psi, const LaurentSeries& phi) {
  return bandwidth(psi).positive == 0 || bandwidth(phi).negative == 0;
}

double toeplitz_product_residual(const LaurentSeries& psi, const LaurentSeries& phi,
                                 int truncation, std::uint64_t seed) {
  if (!toeplitz_product_admissible(psi, phi)) {
    throw HypothesisViolatedError(
        "T_psi T_phi is Toeplitz only when psi is co-analytic or phi is analytic");
  }
  const int N = truncation;
  const int big = 2 * N;
  const LaurentSeries psi2 = psi.resized(big);
  const LaurentSeries phi2 = phi.resized(big);
  const LaurentSeries prod = multiply(psi2, phi2);
  const CMatrix tpsi = toeplitz_matrix(psi2, big).entries;
  const CMatrix tphi = toeplitz_matrix(phi2, big).entries;
  const CMatrix tprod = toeplitz_matrix(prod, big).entries;
  const int phi_band = bandwidth(phi).positive;

  std::vector<CVector> probes;
  for (int j = 0; j < N / 2; ++j) {
    CVector e = CVector::Zero(big);
    e(j) = 1.0;
    probes.push_back(std::move(e));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < 8; ++r) {
    CVector f = CVector::Zero(big);
    for (int j = 0; j < N / 2; ++j) f(j) = cplx(normal(rng), normal(rng));
    probes.push_back(std::move(f));
  }

  double worst = 0.0;
  for (const CVector& f : probes) {
    int deg = -1;
    for (int j = 0; j < big; ++j) {
      if (f(j) != cplx(0.0)) deg = j;
    }
    if (deg < 0 || deg + phi_band >= N) continue;
    const CVector diff = (tpsi * (tphi * f) - tprod * f).head(N);
    worst = std::max(worst, diff.norm() / f.norm());
  }
  return worst;
}

double toeplitz_product_residual(const SymbolSpec& psi, const SymbolSpec& phi, int truncation,
                                 std::uint64_t seed) {
  const int big = 2 * truncation;
  return toeplitz_product_residual(symbol_fourier(psi, big), symbol_fourier(phi, big),
                                   truncation, seed);
}

}  // namespace toepker
