#include "toepker/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& s) {
  return std::vector<double>(s.data(), s.data() + s.size());
}

void require_same_ambient(const Subspace& a, const Subspace& b, const char* where) {
  if (a.truncation() != b.truncation()) {
    throw InputError(std::string(where) + ": ambient truncation mismatch");
  }
}

}  // namespace

Subspace Subspace::zero(int truncation, double rank_tol) {
  Subspace s;
  s.frame = CMatrix::Zero(truncation, 0);
  s.rank_tol = rank_tol;
  return s;
}

void fix_phases(CMatrix& frame) {
  for (Eigen::Index j = 0; j < frame.cols(); ++j) {
    Eigen::Index best = 0;
    double best_mod = -1.0;
    for (Eigen::Index i = 0; i < frame.rows(); ++i) {
      // Earlier index wins near-ties so the choice is stable under round-off.
      const double mod = std::abs(frame(i, j));
      if (mod > best_mod * (1.0 + 1e-9)) {
        best_mod = mod;
        best = i;
      }
    }
    if (best_mod > 0.0) frame.col(j) *= std::conj(frame(best, j)) / best_mod;
  }
}

Subspace kernel_subspace(const OperatorMatrix& t, double rank_tol, std::optional<int> max_domain) {
  if (!(rank_tol > 0.0)) throw InputError("kernel_subspace: rank_tol must be positive");
  const int N = t.truncation();
  int cols = std::max(0, t.domain_size());
  if (max_domain) cols = std::clamp(*max_domain, 0, cols);

  Subspace out = Subspace::zero(N, rank_tol);
  if (cols == 0) return out;

  Eigen::BDCSVD<CMatrix> svd(t.entries.leftCols(cols), Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  out.singular_values = to_vector(s);
  const double smax = s.size() > 0 ? s(0) : 0.0;

  CMatrix null;
  if (smax == 0.0) {
    out.degenerate = true;
    null = CMatrix::Identity(cols, cols);
  } else {
    int rank = 0;
    while (rank < s.size() && s(rank) > rank_tol * smax) ++rank;
    null = svd.matrixV().rightCols(cols - rank);
  }
  out.frame = CMatrix::Zero(N, null.cols());
  out.frame.topRows(cols) = null;
  fix_phases(out.frame);
  return out;
}

Subspace vanish_at_zero(const Subspace& m) {
  const int d = m.dim();
  if (d == 0) return m;
  const CVector r = m.frame.row(0).adjoint();
  Subspace out = m;
  out.singular_values.clear();
  if (r.norm() <= m.rank_tol) return out;
  Eigen::HouseholderQR<CMatrix> qr(CMatrix(r / r.norm()));
  const CMatrix q = qr.householderQ();
  out.frame = m.frame * q.rightCols(d - 1);
  fix_phases(out.frame);
  return out;
}

DefectReport minimal_defect(const Subspace& m, double rank_tol) {
  const int N = m.truncation();
  DefectReport report;
  report.residual_frame = Subspace::zero(N, rank_tol);
  const Subspace m0 = vanish_at_zero(m);
  if (m0.dim() == 0) return report;

  CMatrix w = CMatrix::Zero(N, m0.dim());
  w.topRows(N - 1) = m0.frame.bottomRows(N - 1);
  const CMatrix residual = w - m.frame * (m.frame.adjoint() * w);

  Eigen::BDCSVD<CMatrix> svd(residual, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  // S* is isometric on M ∩ zH^2, so the family has unit scale: absolute threshold.
  int rank = 0;
  while (rank < s.size() && s(rank) > rank_tol) ++rank;
  report.defect_dim = rank;
  report.residual_frame.frame = svd.matrixU().leftCols(rank);
  report.residual_frame.singular_values = to_vector(s);
  fix_phases(report.residual_frame.frame);
  return report;
}

Subspace span_columns(const CMatrix& columns, double rank_tol) {
  Subspace out = Subspace::zero(static_cast<int>(columns.rows()), rank_tol);
  if (columns.cols() == 0) return out;
  Eigen::BDCSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  out.singular_values = to_vector(s);
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (smax == 0.0) return out;
  int rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * smax) ++rank;
  out.frame = svd.matrixU().leftCols(rank);
  fix_phases(out.frame);
  return out;
}

Subspace span(const std::vector<AnalyticSeries>& vectors, int truncation, double rank_tol) {
  CMatrix columns(truncation, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].truncation() != truncation) throw InputError("span: truncation mismatch");
    columns.col(static_cast<Eigen::Index>(j)) = vectors[j].coeffs();
  }
  return span_columns(columns, rank_tol);
}

AnalyticSeries project(const Subspace& m, const AnalyticSeries& f) {
  if (f.truncation() != m.truncation()) throw InputError("project: truncation mismatch");
  return AnalyticSeries(CVector(m.frame * (m.frame.adjoint() * f.coeffs())));
}

std::pair<bool, double> contains(const Subspace& m, const AnalyticSeries& f, double tol) {
  const double fn = f.norm();
  if (fn == 0.0) return {true, 0.0};
  const double residual = (f - project(m, f)).norm() / fn;
  return {residual <= tol, residual};
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "principal_angles");
  if (a.dim() == 0 || b.dim() == 0) return {};
  const Subspace& big = a.dim() >= b.dim() ? a : b;
  const Subspace& small = a.dim() >= b.dim() ? b : a;
  const CMatrix c = big.frame.adjoint() * small.frame;
  const CMatrix rest = small.frame - big.frame * c;
  const Eigen::VectorXd cosines = Eigen::BDCSVD<CMatrix>(c).singularValues();
  const Eigen::VectorXd sines = Eigen::BDCSVD<CMatrix>(rest).singularValues();
  const int k = small.dim();
  std::vector<double> angles(k);
  for (int i = 0; i < k; ++i) {
    const double cs = std::min(1.0, cosines(i));
    const double sn = std::min(1.0, sines(k - 1 - i));
    // arccos loses half the digits near zero; use the sine there.
    angles[i] = cs * cs > 0.5 ? std::asin(sn) : std::acos(cs);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return std::numbers::pi / 2;
  if (a.dim() == 0) return 0.0;
  return principal_angles(a, b).back();
}

Subspace orthogonal_complement(const Subspace& m) {
  const int N = m.truncation();
  Subspace out = Subspace::zero(N, m.rank_tol);
  if (m.dim() == 0) {
    out.frame = CMatrix::Identity(N, N);
    return out;
  }
  Eigen::HouseholderQR<CMatrix> qr(m.frame);
  const CMatrix q = qr.householderQ();
  out.frame = q.rightCols(N - m.dim());
  fix_phases(out.frame);
  return out;
}

Subspace direct_sum(const Subspace& a, const Subspace& b, double min_angle) {
  require_same_ambient(a, b, "direct_sum");
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  const double smallest = principal_angles(a, b).front();
  if (smallest < min_angle) {
    throw ConditioningError("minimal principal angle " + std::to_string(smallest));
  }
  CMatrix columns(a.truncation(), a.dim() + b.dim());
  columns << a.frame, b.frame;
  return span_columns(columns, a.rank_tol);
}

}  // namespace toepker
