#pragma once

// Representation of kernels of rank-one perturbations through a
// backward-shift-invariant parameter space K:
//   f = k_0 f_0 + z * sum_j k_j e_j,  (k_0, ..., k_m) in K.
// K is given by a linear constraint system on coefficient vectors of
// length L (the inner truncation).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toepker/operators.hpp"
#include "toepker/subspaces.hpp"
#include "toepker/theorems.hpp"

namespace toepker {

inline constexpr double kConstraintTol = 1e-8;
inline constexpr int kDefaultInnerTruncation = 48;
inline constexpr int kMaxKSamples = 32;

/// k (length L) -> scale * (S*)^backshift (z^shift * multiplier * k), cut to N.
struct KTerm {
  int slot = 0;
  cplx scale = 1.0;
  std::optional<AnalyticSeries> multiplier;
  int shift = 0;
  int backshift = 0;
};

enum class ClauseKind {
  InnerProducts,  // sum_j <k_j, z^n v_j> = 0 for n < L
  InModelSpace,   // sum of terms lies in the stored subspace
  Constant,       // sum of terms is a constant
  Zero,           // sum of terms vanishes
};

struct KClause {
  ClauseKind kind = ClauseKind::Zero;
  std::string name;
  std::vector<KTerm> terms;
  /// InnerProducts only: one optional vector per slot.
  std::vector<std::optional<AnalyticSeries>> ip_vectors;
  /// InModelSpace only.
  Subspace space;
};

struct CgpFrame {
  std::string case_tag;
  std::string branch;
  std::vector<std::string> notes;
  /// M = {0}; nothing to represent.
  bool trivial = false;
  AnalyticSeries f0{1};
  bool f0_vanishes = false;
  std::vector<AnalyticSeries> e_list;
  std::map<std::string, AnalyticSeries> constraint_vectors;
  std::map<std::string, cplx> scalars;
  std::vector<KClause> clauses;
  /// The representation is norm preserving as displayed.
  bool isometric = false;
  /// Closed-form description of the kernel, when the case provides one.
  std::optional<Subspace> displayed_kernel;

  int arity() const { return static_cast<int>(e_list.size()) + (f0_vanishes ? 0 : 1); }
  std::vector<std::string> slot_names() const;
};

enum class CgpSystem {
  Corollary,          // the general constraint system for the symbol class
  UnitConstantU,      // zero symbol, u = 1: K = H^2
  InnerU,             // zero symbol, u inner: K = K_eta x H^2
  ReproducingKernelU, // zero symbol, u normalized kernel: K = H^2 x {0}
  BinomialU,          // zero symbol, u = (1 + z^k)/sqrt 2
  MonomialTheta,      // conj(z^m) symbol with u_1 = z^(m-1)/4
};

std::string system_name(CgpSystem s);

struct CgpOptions {
  CgpSystem system = CgpSystem::Corollary;
  int binomial_power = 1;
  int inner_truncation = kDefaultInnerTruncation;
  double rank_tol = kRankTol;
  double membership_tol = kMembershipTol;
  double constraint_tol = kConstraintTol;
  bool brute_force_oracle = true;
};

AnalyticSeries projection_of_one(const Subspace& m);

struct ThetaSplit {
  AnalyticSeries u1;       // P_{K_theta} u
  AnalyticSeries u_theta;  // u - u1
};
ThetaSplit split_by_model_space(const BlaschkeProduct& theta, const AnalyticSeries& u, int truncation);
cplx w_theta(const BlaschkeProduct& theta, const AnalyticSeries& v, const AnalyticSeries& u,
             int truncation);
/// Throws DegenerateError when the denominator is below 1e-14.
cplx rho_theta(const BlaschkeProduct& theta, const AnalyticSeries& v, const AnalyticSeries& u,
               int truncation);

/// Rank-one frame for the case; M is the computed kernel (used for notes only).
CgpFrame build_cgp_frame(const DefectCase& c, const PerturbationSpec& p, int truncation,
                         const CgpOptions& opts = {});

/// N x (arity * L) matrix of k -> f.
CMatrix assembly_matrix(const CgpFrame& frame, int truncation, int inner_truncation);
/// Stacked rows of every clause, acting on (k_slot0, k_slot1, ...) each of length L.
CMatrix constraint_rows(const CgpFrame& frame, int truncation, int inner_truncation);
/// Orthonormal basis of the constraint nullspace.
CMatrix k_basis(const CgpFrame& frame, int truncation, int inner_truncation,
                double rank_tol = kRankTol);

/// Largest admissible inner truncation given the frame's effective degrees.
int usable_inner_truncation(const CgpFrame& frame, int truncation, int requested);

struct Decomposition {
  std::vector<CVector> k_list;
  double fit_residual = 0.0;
};

/// Minimum-norm least squares for f = Phi(k), with k restricted to span(k_basis) if given.
Decomposition cgp_decompose(const AnalyticSeries& f, const CgpFrame& frame, int inner_truncation,
                            const std::optional<CMatrix>& k_basis = std::nullopt);

struct ClauseViolation {
  std::string clause;
  double violation = 0.0;
};

struct MembershipResult {
  bool member = false;
  double max_violation = 0.0;
  std::vector<ClauseViolation> clauses;
};

MembershipResult k_membership(const CgpFrame& frame, const std::vector<CVector>& k_list,
                              int truncation, double tol = kConstraintTol);

struct RepresentationReport {
  std::string case_tag;
  std::string branch;
  std::string system;
  std::vector<std::string> notes;
  int kernel_dim = 0;
  int inner_truncation = 0;
  int k_dim = 0;
  int sample_count = 0;
  int reverse_basis_dim = 0;
  double f0_residual = 0.0;
  std::optional<double> kernel_formula_angle;
  double reverse_max_residual = 0.0;
  double forward_max_residual = 0.0;
  double backshift_max_violation = 0.0;
  double constraint_max_violation = 0.0;
  std::optional<double> norm_identity_max_error;
  std::optional<double> dimension_audit_angle;
  std::optional<int> oracle_k_dim;
  std::optional<double> oracle_agreement;
  std::optional<double> oracle_reverse_residual;
  std::optional<double> corollary_agreement;
  std::string failing_clause;
  bool pass = false;
};

RepresentationReport verify_corollary(const DefectCase& c, const PerturbationSpec& p,
                                      int truncation, const CgpOptions& opts = {});

struct RemarkCheck {
  int draws = 0;
  double max_error = 0.0;
  bool pass = false;
};

/// Closed form of P_M 1 for M = (K_theta + span{theta v}) minus span{g + mu theta v},
/// against direct projection, over seeded draws.
RemarkCheck remark_projection_check(std::uint64_t seed, int draws = 20, int truncation = 128,
                                    double tol = 1e-10);

}  // namespace toepker
