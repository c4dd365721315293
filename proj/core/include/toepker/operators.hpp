#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "toepker/hardy.hpp"

namespace toepker {

struct ZeroSymbol {};

/// Finitely supported Laurent polynomial; coeffs[i] multiplies z^(lowest + i).
struct TrigPolySymbol {
  int lowest = 0;
  std::vector<cplx> coeffs;
};

struct InnerSymbol {
  BlaschkeProduct theta;
};

/// g = conj(theta) on the circle.
struct ConjInnerSymbol {
  BlaschkeProduct theta;
};

/// g = f1 * conj(f2) with both polynomials invertible in H-infinity.
struct InvertibleProductSymbol {
  Polynomial f1;
  Polynomial f2;
};

using SymbolSpec =
    std::variant<ZeroSymbol, TrigPolySymbol, InnerSymbol, ConjInnerSymbol, InvertibleProductSymbol>;

/// Validates invertibility of both factors.
InvertibleProductSymbol make_invertible_product(Polynomial f1, Polynomial f2);

std::string symbol_kind(const SymbolSpec& s);

struct PerturbationTerm {
  AnalyticSeries u;
  AnalyticSeries v;
};

struct PerturbationSpec {
  std::vector<PerturbationTerm> terms;

  int rank() const { return static_cast<int>(terms.size()); }
  /// Throws PerturbationError unless u is orthonormal, v orthogonal and nonzero.
  void validate(int truncation, double tol = kScalarTol) const;
};

struct OperatorMatrix {
  CMatrix entries;
  /// Trailing columns whose images leave the section; kernels ignore them.
  int domain_headroom = 0;
  std::string label;

  int truncation() const { return static_cast<int>(entries.rows()); }
  int domain_size() const { return truncation() - domain_headroom; }
};

struct Bandwidth {
  int negative = 0;
  int positive = 0;
};

LaurentSeries symbol_fourier(const SymbolSpec& s, int truncation);

/// Smallest band outside which the l1 coefficient mass is below tail_tol of the total.
Bandwidth bandwidth(const LaurentSeries& g, double tail_tol = 1e-12);

OperatorMatrix toeplitz_matrix(const LaurentSeries& g, int truncation);
OperatorMatrix toeplitz_matrix(const SymbolSpec& s, int truncation);

OperatorMatrix perturbed_matrix(const OperatorMatrix& t, const PerturbationSpec& p);

AnalyticSeries apply(const OperatorMatrix& t, const AnalyticSeries& f);

/// Whether T_psi T_phi = T_{psi phi} is guaranteed (psi co-analytic or phi analytic).
bool toeplitz_product_admissible(const LaurentSeries& psi, const LaurentSeries& phi);

/// Max relative residual of (T_psi T_phi - T_{psi phi}) f over headroom probes.
double toeplitz_product_residual(const SymbolSpec& psi, const SymbolSpec& phi, int truncation,
                                 std::uint64_t seed = 0);
double toeplitz_product_residual(const LaurentSeries& psi, const LaurentSeries& phi,
                                 int truncation, std::uint64_t seed = 0);

}  // namespace toepker
