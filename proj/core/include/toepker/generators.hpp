#pragma once

// Seeded instance builders whose kernels are nontrivial by construction.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "toepker/operators.hpp"

namespace toepker {

struct Instance {
  std::string label;
  SymbolSpec symbol;
  PerturbationSpec perturbation;
};

using Rng = std::mt19937_64;

/// Complex Gaussian coefficients up to the given degree.
Polynomial random_polynomial(Rng& rng, int degree);
/// Blaschke product with z_power and `zeros` simple zeros of modulus <= max_modulus.
BlaschkeProduct random_blaschke(Rng& rng, int z_power, int zeros, double max_modulus);
/// Polynomial of the given degree whose roots have modulus in [min_root, 2 * min_root].
Polynomial random_invertible_polynomial(Rng& rng, int degree, double min_root = 2.0);

/// Orthonormalizes in order (modified Gram-Schmidt); throws on rank loss.
std::vector<AnalyticSeries> orthonormalize(std::vector<AnalyticSeries> vectors);
/// Removes the components along orthonormal `basis`.
AnalyticSeries orthogonalize_against(AnalyticSeries f, const std::vector<AnalyticSeries>& basis);

Instance random_zero_instance(Rng& rng, int truncation, int rank);
Instance random_inner_instance(Rng& rng, int truncation, int rank, bool blaschke);
Instance random_invertible_product_instance(Rng& rng, int truncation, int rank);
Instance random_conj_inner_instance(Rng& rng, int truncation, int rank, bool blaschke);

}  // namespace toepker
