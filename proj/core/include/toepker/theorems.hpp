#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toepker/operators.hpp"
#include "toepker/subspaces.hpp"

namespace toepker {

inline constexpr double kDefectInFTol = 1e-7;
inline constexpr double kWitnessTol = 1e-8;
inline constexpr double kLambdaRelTol = 1e-8;

/// The four symbol classes for which a defect space is known.
using DefectCase = std::variant<ZeroSymbol, InnerSymbol, InvertibleProductSymbol, ConjInnerSymbol>;

/// Throws InputError for symbols outside the four classes.
DefectCase defect_case_of(const SymbolSpec& s);
SymbolSpec symbol_of(const DefectCase& c);
std::string case_name(const DefectCase& c);

/// Orthonormal basis of K_theta = ker T_conj(theta) at truncation N.
Subspace model_space(const BlaschkeProduct& theta, int truncation, double rank_tol = kRankTol);

/// Indices k (0-based) with |P_{K_theta} u_k| > rel_tol * |u_k|.
std::vector<int> lambda_set(const BlaschkeProduct& theta, const std::vector<AnalyticSeries>& u_list,
                            double rel_tol, int truncation);

/// Spanning vectors of the defect space as constructed in the case's proof.
std::vector<AnalyticSeries> theorem_defect_generators(const DefectCase& c,
                                                      const PerturbationSpec& p, int truncation);
Subspace theorem_defect_space(const DefectCase& c, const PerturbationSpec& p, int truncation,
                              double rank_tol = kRankTol);
/// n, or n + |Lambda| for the conjugate-inner class.
int theorem_bound(const DefectCase& c, const PerturbationSpec& p, int truncation);

/// w with S*h + w in ker R_n; h must lie in the kernel and vanish at 0.
AnalyticSeries defect_witness(const DefectCase& c, const AnalyticSeries& h,
                              const PerturbationSpec& p, int truncation);

struct WitnessEntry {
  AnalyticSeries w;
  double membership_residual = 0.0;
  double w_in_F_residual = 0.0;
};

struct WitnessReport {
  std::vector<WitnessEntry> entries;
  double max_membership_residual = 0.0;
  double max_w_in_F_residual = 0.0;
};

struct DefectTolerances {
  double rank = kRankTol;
  double defect_in_F = kDefectInFTol;
  double witness = kWitnessTol;
  double lambda_rel = kLambdaRelTol;
};

struct DefectTheoremReport {
  std::string case_name;
  int kernel_dim = 0;
  std::vector<double> kernel_singular_values;
  DefectReport defect;
  int theorem_F_dim = 0;
  std::vector<int> lambda;
  WitnessReport witness;
  bool bound_ok = false;
  bool residual_in_F_ok = false;
  bool witness_ok = false;
  bool witness_locality_ok = false;
  double tail_ratio = 0.0;
  bool pass = false;
};

DefectTheoremReport verify_defect_theorem(const DefectCase& c, const PerturbationSpec& p,
                                          int truncation, const DefectTolerances& tols = {});

}  // namespace toepker
