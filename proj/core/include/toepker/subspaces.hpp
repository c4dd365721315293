#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "toepker/hardy.hpp"
#include "toepker/operators.hpp"

namespace toepker {

inline constexpr double kRankTol = 1e-9;
inline constexpr double kMembershipTol = 1e-8;

/// Orthonormal frame (N x d) inside a fixed ambient truncation.
struct Subspace {
  CMatrix frame;
  double rank_tol = kRankTol;
  /// Singular values of the operator or family that produced the frame, if any.
  std::vector<double> singular_values;
  bool degenerate = false;

  static Subspace zero(int truncation, double rank_tol = kRankTol);

  int truncation() const { return static_cast<int>(frame.rows()); }
  int dim() const { return static_cast<int>(frame.cols()); }
  AnalyticSeries column(int j) const { return AnalyticSeries(CVector(frame.col(j))); }
};

struct DefectReport {
  int defect_dim = 0;
  Subspace residual_frame;
  std::optional<int> bound_from_theorem;
  std::optional<bool> contained_in_theorem_F;
  double max_residual_outside_F = 0.0;
};

/// Rotates each column so its largest-modulus entry is real and positive.
void fix_phases(CMatrix& frame);

/// Nullspace over the operator's domain columns (or the first max_domain of them).
Subspace kernel_subspace(const OperatorMatrix& t, double rank_tol = kRankTol,
                         std::optional<int> max_domain = std::nullopt);

Subspace vanish_at_zero(const Subspace& m);

DefectReport minimal_defect(const Subspace& m, double rank_tol = kRankTol);

Subspace span(const std::vector<AnalyticSeries>& vectors, int truncation,
              double rank_tol = kRankTol);
Subspace span_columns(const CMatrix& columns, double rank_tol = kRankTol);

/// residual = |f - P_M f| / |f| (0 for f = 0).
std::pair<bool, double> contains(const Subspace& m, const AnalyticSeries& f,
                                 double tol = kMembershipTol);

/// Angles in ascending order, min(dim A, dim B) of them.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);
/// Largest principal angle, or pi/2 when dimensions differ.
double subspace_distance(const Subspace& a, const Subspace& b);

Subspace orthogonal_complement(const Subspace& m);
AnalyticSeries project(const Subspace& m, const AnalyticSeries& f);
/// Throws ConditioningError when the minimal angle is below min_angle.
Subspace direct_sum(const Subspace& a, const Subspace& b, double min_angle = 1e-8);

}  // namespace toepker
