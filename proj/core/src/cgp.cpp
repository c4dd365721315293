#include "toepker/cgp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "toepker/errors.hpp"
#include "toepker/generators.hpp"

namespace toepker {

namespace {

constexpr double kBranchTol = kScalarTol;

LaurentSeries lift(const AnalyticSeries& f) { return LaurentSeries::from_analytic(f); }

AnalyticSeries unit(const AnalyticSeries& f) {
  const double n = f.norm();
  if (n == 0.0) throw DegenerateError("normalizing a zero vector");
  return f * cplx(1.0 / n);
}

// |f|^2 on the circle.
LaurentSeries modulus_squared(const AnalyticSeries& f) { return multiply(lift(f), conj_on_circle(f)); }

// P(conj(z) g).
AnalyticSeries project_after_zbar(const LaurentSeries& g) {
  const int N = g.truncation();
  AnalyticSeries out(N);
  for (int n = 0; n < N; ++n) out[n] = g.at(n + 1);
  return out;
}

int effective_degree(const AnalyticSeries& f) {
  if (f.norm() == 0.0) return 0;
  return bandwidth(lift(f)).positive;
}

Subspace remove_direction(const Subspace& s, const AnalyticSeries& g, double rank_tol) {
  const CVector gh = unit(g).coeffs();
  const CMatrix rest = s.frame - gh * (gh.adjoint() * s.frame);
  return span_columns(rest, rank_tol);
}

KTerm term(int slot, cplx scale = 1.0) {
  KTerm t;
  t.slot = slot;
  t.scale = scale;
  return t;
}

KTerm term_mult(int slot, cplx scale, const AnalyticSeries& multiplier) {
  KTerm t = term(slot, scale);
  t.multiplier = multiplier;
  return t;
}

KTerm term_shift(int slot, cplx scale, int shift) {
  KTerm t = term(slot, scale);
  t.shift = shift;
  return t;
}

KTerm term_backshift(int slot, cplx scale, int backshift) {
  KTerm t = term(slot, scale);
  t.backshift = backshift;
  return t;
}

KClause clause(ClauseKind kind, std::string name, std::vector<KTerm> terms) {
  KClause c;
  c.kind = kind;
  c.name = std::move(name);
  c.terms = std::move(terms);
  return c;
}

KClause ip_clause(std::string name, std::vector<std::optional<AnalyticSeries>> vectors) {
  KClause c;
  c.kind = ClauseKind::InnerProducts;
  c.name = std::move(name);
  c.ip_vectors = std::move(vectors);
  return c;
}

CMatrix term_matrix(const KTerm& t, int N, int L) {
  CMatrix out = CMatrix::Zero(N, L);
  for (int i = 0; i < L; ++i) {
    const int power = i + t.shift;
    if (power >= N) continue;
    AnalyticSeries col = AnalyticSeries::monomial(power, N);
    if (t.multiplier) col = multiply(*t.multiplier, col);
    if (t.backshift > 0) col = backshift(col, t.backshift);
    out.col(i) = t.scale * col.coeffs();
  }
  return out;
}

CMatrix expression_matrix(const KClause& c, int arity, int N, int L) {
  CMatrix e = CMatrix::Zero(N, arity * L);
  for (const KTerm& t : c.terms) {
    if (t.slot < 0 || t.slot >= arity) throw InputError("clause term refers to a missing slot");
    e.middleCols(t.slot * L, L) += term_matrix(t, N, L);
  }
  return e;
}

CMatrix clause_rows(const KClause& c, int arity, int N, int L) {
  switch (c.kind) {
    case ClauseKind::InnerProducts: {
      CMatrix rows = CMatrix::Zero(L, arity * L);
      for (int j = 0; j < arity && j < static_cast<int>(c.ip_vectors.size()); ++j) {
        if (!c.ip_vectors[j]) continue;
        const AnalyticSeries& v = *c.ip_vectors[j];
        for (int n = 0; n < L; ++n) {
          for (int i = n; i < L; ++i) rows(n, j * L + i) = std::conj(v[i - n]);
        }
      }
      return rows;
    }
    case ClauseKind::InModelSpace: {
      const CMatrix e = expression_matrix(c, arity, N, L);
      return e - c.space.frame * (c.space.frame.adjoint() * e);
    }
    case ClauseKind::Constant:
      return expression_matrix(c, arity, N, L).bottomRows(N - 1);
    case ClauseKind::Zero:
      return expression_matrix(c, arity, N, L);
  }
  return {};
}

CMatrix null_space(const CMatrix& a, int cols, double rank_tol) {
  if (a.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (smax == 0.0) return CMatrix::Identity(cols, cols);
  int rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * smax) ++rank;
  CMatrix out = svd.matrixV().rightCols(cols - rank);
  fix_phases(out);
  return out;
}

std::vector<CVector> unstack(const CVector& k, int arity, int L) {
  std::vector<CVector> out;
  for (int j = 0; j < arity; ++j) out.push_back(k.segment(j * L, L));
  return out;
}

CVector stack(const std::vector<CVector>& ks) {
  Eigen::Index total = 0;
  for (const auto& k : ks) total += k.size();
  CVector out(total);
  Eigen::Index at = 0;
  for (const auto& k : ks) {
    out.segment(at, k.size()) = k;
    at += k.size();
  }
  return out;
}

CVector backshift_components(const CVector& k, int arity, int L) {
  CVector out = CVector::Zero(k.size());
  for (int j = 0; j < arity; ++j) out.segment(j * L, L - 1) = k.segment(j * L + 1, L - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Frames per symbol class

void zero_symbol_frame(CgpFrame& f, const PerturbationSpec& p, int N, const CgpOptions& opts) {
  const AnalyticSeries& u = p.terms[0].u;
  f.case_tag = "zero symbol";
  const cplx u0 = u[0];
  f.f0 = AnalyticSeries::monomial(0, N) - std::conj(u0) * u;
  const LaurentSeries absu2 = modulus_squared(u);
  const AnalyticSeries v0 = u - u0 * riesz_project(absu2);
  const AnalyticSeries v1 = project_after_zbar(absu2);
  f.constraint_vectors.emplace("v0", v0);
  f.constraint_vectors.emplace("v1", v1);
  f.e_list = {u};
  f.displayed_kernel = orthogonal_complement(span({u}, N, opts.rank_tol));

  f.f0_vanishes = f.f0.norm() <= kBranchTol;
  if (f.f0_vanishes) {
    f.branch = "P_M 1 = 0";
    f.f0 = AnalyticSeries(N);
    f.isometric = true;
    f.clauses.push_back(ip_clause("<k1, z^n v1> = 0", {v1}));
  } else {
    f.branch = "P_M 1 != 0";
    f.clauses.push_back(ip_clause("<k0, z^n v0> + <k1, z^n v1> = 0", {v0, v1}));
  }

  switch (opts.system) {
    case CgpSystem::Corollary:
      return;
    case CgpSystem::UnitConstantU:
      if (!f.f0_vanishes) throw InputError("closed form K = H^2 needs u = 1");
      f.clauses.clear();
      return;
    case CgpSystem::InnerU: {
      if (f.f0_vanishes) throw InputError("closed form K = K_eta x H^2 needs P_M 1 != 0");
      const InnerOuter io = inner_outer_factor(u - AnalyticSeries::monomial(0, N, u0));
      KClause c = clause(ClauseKind::InModelSpace, "k0 in K_eta", {term(0)});
      c.space = model_space(io.inner, N, opts.rank_tol);
      f.scalars.emplace("deg eta", static_cast<double>(io.inner.degree()));
      f.clauses = {c};
      return;
    }
    case CgpSystem::ReproducingKernelU:
      if (f.f0_vanishes) throw InputError("closed form K = H^2 x {0} needs P_M 1 != 0");
      f.clauses = {clause(ClauseKind::Zero, "k1 = 0", {term(1)})};
      return;
    case CgpSystem::BinomialU: {
      if (f.f0_vanishes) throw InputError("binomial closed form needs P_M 1 != 0");
      const int k = opts.binomial_power;
      if (k < 1) throw InputError("binomial power must be >= 1");
      f.clauses = {clause(ClauseKind::Zero, "sqrt2 S*^(k-1) k1 + S*^k k0 = 0",
                          {term_backshift(1, std::numbers::sqrt2, k - 1), term_backshift(0, 1.0, k)})};
      return;
    }
    case CgpSystem::MonomialTheta:
      throw InputError("monomial-theta system applies to the conjugate inner class");
  }
}

// Shared tail of the inner and invertible-product classes: M = span{x}.
void one_dimensional_frame(CgpFrame& f, const AnalyticSeries& x, const AnalyticSeries& e_raw,
                           cplx scale_at_zero, double x_norm_sq, const std::string& zero_branch) {
  f.displayed_kernel = span({x}, x.truncation());
  f.e_list = {unit(e_raw)};
  if (std::abs(scale_at_zero) > kBranchTol) {
    f.branch = zero_branch + " != 0";
    f.f0 = (std::conj(scale_at_zero) / x_norm_sq) * x;
    f.clauses.push_back(clause(ClauseKind::Constant, "k0 in C", {term(0)}));
    f.clauses.push_back(clause(ClauseKind::Zero, "k1 = 0", {term(1)}));
  } else {
    f.branch = zero_branch + " = 0";
    f.f0 = AnalyticSeries(x.truncation());
    f.f0_vanishes = true;
    f.isometric = true;
    f.clauses.push_back(clause(ClauseKind::Constant, "k1 in C", {term(0)}));
  }
}

void inner_symbol_frame(CgpFrame& f, const InnerSymbol& s, const PerturbationSpec& p, int N) {
  const AnalyticSeries& u = p.terms[0].u;
  const AnalyticSeries& v = p.terms[0].v;
  f.case_tag = "inner symbol";
  const AnalyticSeries theta = blaschke_expand(s.theta, N);
  const AnalyticSeries q = riesz_project(multiply(conj_on_circle(theta), lift(v)));
  const bool divides = (multiply(theta, q) - v).norm() <= kMembershipTol * v.norm();
  const cplx det = 1.0 + inner_product(q, u);
  f.scalars.emplace("1 + <conj(theta) v, u>", det);
  if (!divides || std::abs(det) > kBranchTol) {
    f.trivial = true;
    f.branch = "M = {0}";
    f.notes.push_back(divides ? "1 + <conj(theta) v, u> != 0" : "theta does not divide v");
    return;
  }
  const cplx a0 = q[0];
  f.scalars.emplace("a0", a0);
  one_dimensional_frame(f, q, backshift(q), a0, v.squared_norm(), "a0");
}

void invertible_product_frame(CgpFrame& f, const InvertibleProductSymbol& s,
                              const PerturbationSpec& p, int N) {
  const AnalyticSeries& u = p.terms[0].u;
  const AnalyticSeries& v = p.terms[0].v;
  f.case_tag = "invertible product symbol";
  const AnalyticSeries inv1 = taylor_invert(s.f1, N);
  const LaurentSeries cinv2 = conj_on_circle(taylor_invert(s.f2, N));
  const AnalyticSeries y = riesz_project(multiply(cinv2, lift(v)));
  const AnalyticSeries x = multiply(inv1, y);
  const cplx det = 1.0 + inner_product(x, u);
  f.scalars.emplace("1 + <x, u>", det);
  if (std::abs(det) > kBranchTol) {
    f.trivial = true;
    f.branch = "M = {0}";
    f.notes.push_back("1 + <f1^-1 T v, u> != 0");
    return;
  }
  const cplx a0 = y[0];
  const cplx b0 = inv1[0];
  f.scalars.emplace("a0", a0);
  f.scalars.emplace("b0", b0);
  f.notes.push_back("b0 = 1/f1(0) is never zero for invertible f1; the branch is decided by a0");
  const AnalyticSeries e = multiply(inv1, riesz_project(multiply(cinv2, lift(backshift(v)))));
  one_dimensional_frame(f, x, e, a0 * b0, x.squared_norm(), "a0 b0");
}

void conj_inner_frame(CgpFrame& f, const ConjInnerSymbol& s, const PerturbationSpec& p, int N,
                      const CgpOptions& opts) {
  const AnalyticSeries& u = p.terms[0].u;
  const AnalyticSeries& v = p.terms[0].v;
  const AnalyticSeries theta = blaschke_expand(s.theta, N);
  const Subspace kt = model_space(s.theta, N, opts.rank_tol);
  const AnalyticSeries thv = multiply(theta, v);
  const AnalyticSeries sv = backshift(v);
  const double nsv = sv.norm();
  if (nsv <= kBranchTol) throw PreconditionError("S* v must be nonzero");
  const double nv2 = v.squared_norm();
  const cplx th0 = theta[0];
  const cplx vz = v[0];
  const cplx c = std::conj(th0 * vz) / nv2;
  const AnalyticSeries one = AnalyticSeries::monomial(0, N);
  const AnalyticSeries e1 = multiply(theta, sv) * cplx(1.0 / nsv);
  const AnalyticSeries base_f0 = one - std::conj(th0) * theta + c * thv;
  const Subspace nsp = direct_sum(kt, span({thv}, N, opts.rank_tol));

  KClause model = clause(ClauseKind::InModelSpace, "k0 - (k0 conj(theta(0)) + k1 v(0)/|S*v|) theta in K_theta",
                         {term(0), term_mult(0, -std::conj(th0), theta), term_mult(1, -vz / nsv, theta)});
  model.space = kt;

  const AnalyticSeries u1 = project(kt, u);
  const bool divides = u1.norm() <= kLambdaRelTol * u.norm();
  f.scalars.emplace("|S*v|", nsv);

  if (divides) {
    f.case_tag = "conjugate inner symbol, theta | u";
    if (opts.system == CgpSystem::MonomialTheta) {
      throw InputError("monomial-theta system needs theta not dividing u");
    }
    const cplx det = 1.0 + inner_product(thv, u);
    f.scalars.emplace("1 + <theta v, u>", det);
    if (std::abs(det) > kBranchTol) {
      f.branch = "M = K_theta";
      f.f0 = one - std::conj(th0) * theta;
      f.clauses.push_back(clause(ClauseKind::InModelSpace, "k0 f0 in K_theta", {term_mult(0, 1.0, f.f0)}));
      f.clauses.back().space = kt;
      f.displayed_kernel = kt;
      return;
    }
    f.branch = "1 + <theta v, u> = 0";
    f.f0 = base_f0;
    f.e_list = {e1};
    f.clauses.push_back(model);
    f.clauses.push_back(clause(ClauseKind::Constant, "k0 conj(theta(0) v(0))/|v|^2 + k1/|S*v| in C",
                               {term(0, c), term(1, 1.0 / nsv)}));
    f.displayed_kernel = nsp;
    return;
  }

  f.case_tag = "conjugate inner symbol, theta does not divide u";
  const AnalyticSeries u_theta = u - u1;
  const double nu1 = u1.norm();
  const cplx w = 1.0 + inner_product(thv, u_theta);
  f.scalars.emplace("w_theta", w);
  f.scalars.emplace("|u1|", nu1);
  f.constraint_vectors.emplace("u1", u1);
  const AnalyticSeries e2 = u1 * cplx(1.0 / nu1);
  f.e_list = {e1, e2};
  const AnalyticSeries v2 = project_after_zbar(modulus_squared(u1)) * cplx(1.0 / nu1);
  const AnalyticSeries v1 =
      riesz_project(multiply(lift(v), conj_on_circle(v - AnalyticSeries::monomial(0, N, vz)))) *
      (std::conj(w) / nsv);

  if (opts.system == CgpSystem::MonomialTheta) {
    if (!s.theta.is_monomial() || std::abs(s.theta.unimodular_const() - 1.0) > kBranchTol) {
      throw InputError("monomial-theta system needs theta = z^m");
    }
    const int m = s.theta.z_power();
    if ((u1 - AnalyticSeries::monomial(m - 1, N, 0.25)).norm() > kMembershipTol) {
      throw InputError("monomial-theta system needs P_{K_theta} u = z^(m-1)/4");
    }
    if (std::abs(w) <= kBranchTol) throw InputError("monomial-theta system needs w_theta != 0");
  }

  if (std::abs(w) > kBranchTol) {
    f.branch = "w_theta != 0";
    const AnalyticSeries g = u1 + std::conj(w) * thv;
    const double denom = nu1 * nu1 + std::norm(w) * nv2;
    if (denom < 1e-14) throw DegenerateError("rho_theta denominator vanishes");
    const cplx rho = (std::conj(u1[0]) + std::conj(th0 * vz) * w) / denom;
    f.scalars.emplace("rho_theta", rho);
    f.f0 = base_f0 - rho * g;
    f.displayed_kernel = remove_direction(nsp, g, opts.rank_tol);
    const LaurentSeries absv2 = modulus_squared(v);
    const AnalyticSeries v0 =
        riesz_project(lift(u1 + std::conj(w) * thv - (th0 * std::conj(w)) * v) +
                      (th0 * vz / nv2 * std::conj(w)) * absv2 - std::conj(rho) * modulus_squared(g));
    if (opts.system == CgpSystem::MonomialTheta) {
      const int m = s.theta.z_power();
      const AnalyticSeries v0m = AnalyticSeries::monomial(m - 1, N, 0.25) + std::conj(w) * thv;
      f.constraint_vectors.emplace("v0", v0m);
      f.constraint_vectors.emplace("v1", v1);
      KClause mc = clause(ClauseKind::InModelSpace, "k0 - k1 v(0)/|S*v| z^m in K_{z^m}",
                          {term(0), term_shift(1, -vz / nsv, m)});
      mc.space = kt;
      f.clauses.push_back(mc);
      f.clauses.push_back(clause(ClauseKind::Constant, "k1/|S*v| - 4 k2 z conj(w_theta) in C",
                                 {term(1, 1.0 / nsv), term_shift(2, -4.0 * std::conj(w), 1)}));
      f.clauses.push_back(ip_clause("<k0, z^n v0> + <k1, z^n v1> = 0", {v0m, v1, std::nullopt}));
      return;
    }
    f.constraint_vectors.emplace("v0", v0);
    f.constraint_vectors.emplace("v1", v1);
    f.constraint_vectors.emplace("v2", v2);
    f.clauses.push_back(model);
    f.clauses.push_back(clause(ClauseKind::Constant,
                               "k0 conj(theta(0) v(0))/|v|^2 + k1/|S*v| - k2 z conj(w_theta)/|u1| in C",
                               {term(0, c), term(1, 1.0 / nsv), term_shift(2, -std::conj(w) / nu1, 1)}));
    f.clauses.push_back(ip_clause("<k0, z^n v0> + <k1, z^n v1> + <k2, z^n v2> = 0", {v0, v1, v2}));
    return;
  }

  f.branch = "w_theta = 0";
  f.f0 = base_f0 - (std::conj(u1[0]) / (nu1 * nu1)) * u1;
  f.displayed_kernel = remove_direction(nsp, u1, opts.rank_tol);
  const AnalyticSeries v0 = u1 - (u1[0] / (nu1 * nu1)) * riesz_project(modulus_squared(u1));
  f.constraint_vectors.emplace("v0", v0);
  f.constraint_vectors.emplace("v2", v2);
  f.clauses.push_back(model);
  f.clauses.push_back(clause(ClauseKind::Constant, "k0 conj(theta(0) v(0))/|v|^2 + k1/|S*v| in C",
                             {term(0, c), term(1, 1.0 / nsv)}));
  f.clauses.push_back(ip_clause("<k0, z^n v0> + <k2, z^n v2> = 0", {v0, std::nullopt, v2}));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::vector<std::string> CgpFrame::slot_names() const {
  std::vector<std::string> out;
  if (!f0_vanishes) out.push_back("k0");
  for (std::size_t j = 0; j < e_list.size(); ++j) out.push_back("k" + std::to_string(j + 1));
  return out;
}

std::string system_name(CgpSystem s) {
  switch (s) {
    case CgpSystem::Corollary: return "corollary";
    case CgpSystem::UnitConstantU: return "closed form: u = 1";
    case CgpSystem::InnerU: return "closed form: u inner";
    case CgpSystem::ReproducingKernelU: return "closed form: u reproducing kernel";
    case CgpSystem::BinomialU: return "closed form: u = (1 + z^k)/sqrt2";
    case CgpSystem::MonomialTheta: return "closed form: theta = z^m";
  }
  return "unknown";
}

AnalyticSeries projection_of_one(const Subspace& m) {
  return project(m, AnalyticSeries::monomial(0, m.truncation()));
}

ThetaSplit split_by_model_space(const BlaschkeProduct& theta, const AnalyticSeries& u, int N) {
  const AnalyticSeries u1 = project(model_space(theta, N), u);
  return {u1, u - u1};
}

cplx w_theta(const BlaschkeProduct& theta, const AnalyticSeries& v, const AnalyticSeries& u, int N) {
  const ThetaSplit sp = split_by_model_space(theta, u, N);
  return 1.0 + inner_product(multiply(blaschke_expand(theta, N), v), sp.u_theta);
}

cplx rho_theta(const BlaschkeProduct& theta, const AnalyticSeries& v, const AnalyticSeries& u, int N) {
  const ThetaSplit sp = split_by_model_space(theta, u, N);
  const cplx w = 1.0 + inner_product(multiply(blaschke_expand(theta, N), v), sp.u_theta);
  const double denom = sp.u1.squared_norm() + std::norm(w) * v.squared_norm();
  if (denom < 1e-14) throw DegenerateError("rho_theta denominator vanishes");
  const cplx th0 = theta.at_origin();
  return (std::conj(sp.u1[0]) + std::conj(th0 * v[0]) * w) / denom;
}

CgpFrame build_cgp_frame(const DefectCase& c, const PerturbationSpec& p, int N,
                         const CgpOptions& opts) {
  if (p.rank() != 1) throw InputError("the representation is built for rank-one perturbations");
  p.validate(N);
  CgpFrame f;
  f.f0 = AnalyticSeries(N);
  if (opts.system != CgpSystem::Corollary && opts.system != CgpSystem::MonomialTheta &&
      !std::holds_alternative<ZeroSymbol>(c)) {
    throw InputError("closed-form u systems apply to the zero symbol only");
  }
  std::visit(overloaded{
                 [&](const ZeroSymbol&) { zero_symbol_frame(f, p, N, opts); },
                 [&](const InnerSymbol& s) { inner_symbol_frame(f, s, p, N); },
                 [&](const InvertibleProductSymbol& s) { invertible_product_frame(f, s, p, N); },
                 [&](const ConjInnerSymbol& s) { conj_inner_frame(f, s, p, N, opts); },
             },
             c);
  if (opts.system == CgpSystem::MonomialTheta && !std::holds_alternative<ConjInnerSymbol>(c)) {
    throw InputError("monomial-theta system applies to the conjugate inner class");
  }
  return f;
}

CMatrix assembly_matrix(const CgpFrame& frame, int N, int L) {
  const int arity = frame.arity();
  CMatrix phi = CMatrix::Zero(N, arity * L);
  int slot = 0;
  if (!frame.f0_vanishes) {
    phi.middleCols(0, L) = term_matrix(term_mult(0, 1.0, frame.f0), N, L);
    slot = 1;
  }
  for (const auto& e : frame.e_list) {
    KTerm t = term_mult(slot, 1.0, e);
    t.shift = 1;
    phi.middleCols(slot * L, L) = term_matrix(t, N, L);
    ++slot;
  }
  return phi;
}

CMatrix constraint_rows(const CgpFrame& frame, int N, int L) {
  const int arity = frame.arity();
  std::vector<CMatrix> blocks;
  Eigen::Index total = 0;
  for (const auto& c : frame.clauses) {
    blocks.push_back(clause_rows(c, arity, N, L));
    total += blocks.back().rows();
  }
  CMatrix rows(total, arity * L);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    rows.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return rows;
}

CMatrix k_basis(const CgpFrame& frame, int N, int L, double rank_tol) {
  return null_space(constraint_rows(frame, N, L), frame.arity() * L, rank_tol);
}

int usable_inner_truncation(const CgpFrame& frame, int N, int requested) {
  int need = 0;
  if (!frame.f0_vanishes) need = effective_degree(frame.f0);
  for (const auto& e : frame.e_list) need = std::max(need, effective_degree(e) + 1);
  return std::max(1, std::min(requested, N - need));
}

Decomposition cgp_decompose(const AnalyticSeries& f, const CgpFrame& frame, int L,
                            const std::optional<CMatrix>& basis) {
  const int N = f.truncation();
  if (L > usable_inner_truncation(frame, N, L)) {
    throw HeadroomError("inner truncation " + std::to_string(L) +
                        " exceeds the room left by the frame degrees");
  }
  const int arity = frame.arity();
  const CMatrix phi = assembly_matrix(frame, N, L);
  CVector k;
  if (basis) {
    const CMatrix a = phi * *basis;
    k = *basis * a.completeOrthogonalDecomposition().solve(f.coeffs());
  } else {
    k = phi.completeOrthogonalDecomposition().solve(f.coeffs());
  }
  Decomposition out;
  const double fn = f.norm();
  out.fit_residual = fn == 0.0 ? 0.0 : (phi * k - f.coeffs()).norm() / fn;
  out.k_list = unstack(k, arity, L);
  return out;
}

MembershipResult k_membership(const CgpFrame& frame, const std::vector<CVector>& k_list, int N,
                              double tol) {
  if (static_cast<int>(k_list.size()) != frame.arity()) {
    throw InputError("k_membership: k_list length does not match the case arity");
  }
  const int L = k_list.empty() ? 0 : static_cast<int>(k_list[0].size());
  const CVector k = stack(k_list);
  const double scale = std::max(1.0, k.norm());
  MembershipResult out;
  for (const auto& c : frame.clauses) {
    const CVector r = clause_rows(c, frame.arity(), N, L) * k;
    const double viol = r.size() ? r.cwiseAbs().maxCoeff() / scale : 0.0;
    out.clauses.push_back({c.name, viol});
    out.max_violation = std::max(out.max_violation, viol);
  }
  out.member = out.max_violation <= tol;
  return out;
}

RepresentationReport verify_corollary(const DefectCase& c, const PerturbationSpec& p, int N,
                                      const CgpOptions& opts) {
  RepresentationReport rep;
  rep.system = system_name(opts.system);
  const CgpFrame frame = build_cgp_frame(c, p, N, opts);
  rep.case_tag = frame.case_tag;
  rep.branch = frame.branch;
  rep.notes = frame.notes;

  const OperatorMatrix r = perturbed_matrix(toeplitz_matrix(symbol_of(c), N), p);
  const Subspace m = kernel_subspace(r, opts.rank_tol);
  rep.kernel_dim = m.dim();

  if (frame.trivial) {
    rep.pass = m.dim() == 0;
    rep.notes.push_back("kernel is {0}; the representation is vacuous");
    if (!rep.pass) rep.failing_clause = "expected a trivial kernel";
    return rep;
  }

  std::vector<std::string> failures;
  rep.f0_residual = (frame.f0 - projection_of_one(m)).norm();
  if (rep.f0_residual > kScalarTol) failures.push_back("f0 = P_M 1");
  if (frame.displayed_kernel) {
    rep.kernel_formula_angle = subspace_distance(m, *frame.displayed_kernel);
    if (*rep.kernel_formula_angle > 1e-7) failures.push_back("displayed kernel formula");
  }

  const int L = usable_inner_truncation(frame, N, opts.inner_truncation);
  rep.inner_truncation = L;
  if (L < opts.inner_truncation) {
    rep.notes.push_back("inner truncation reduced to " + std::to_string(L));
  }
  const int arity = frame.arity();
  const CMatrix kb = k_basis(frame, N, L, opts.rank_tol);
  rep.k_dim = static_cast<int>(kb.cols());
  const CMatrix phi = assembly_matrix(frame, N, L);
  const CMatrix phik = phi * kb;
  const auto solver = phik.completeOrthogonalDecomposition();

  // Cofinite kernels: members of degree < L/2 only.
  const Subspace reverse_basis = m.dim() < L ? m : kernel_subspace(r, opts.rank_tol, std::max(1, L / 2));
  rep.reverse_basis_dim = reverse_basis.dim();
  for (int j = 0; j < reverse_basis.dim(); ++j) {
    const CVector f = reverse_basis.frame.col(j);
    const CVector y = solver.solve(f);
    rep.reverse_max_residual = std::max(rep.reverse_max_residual, (phik * y - f).norm() / f.norm());
    const auto mem = k_membership(frame, unstack(kb * y, arity, L), N, opts.constraint_tol);
    rep.constraint_max_violation = std::max(rep.constraint_max_violation, mem.max_violation);
  }
  if (rep.reverse_max_residual >= opts.membership_tol) failures.push_back("reverse fit (M into K)");

  const int samples = std::min<int>(kMaxKSamples, static_cast<int>(kb.cols()));
  rep.sample_count = samples;
  for (int j = 0; j < samples; ++j) {
    const CVector k = kb.col(j);
    const CVector f = phi * k;
    if (f.norm() > 1e-12 * k.norm()) {
      rep.forward_max_residual = std::max(rep.forward_max_residual,
                                          contains(m, AnalyticSeries(CVector(f))).second);
    }
    const auto mem = k_membership(frame, unstack(backshift_components(k, arity, L), arity, L), N,
                                  opts.constraint_tol);
    if (mem.max_violation > rep.backshift_max_violation) rep.backshift_max_violation = mem.max_violation;
    if (frame.isometric) {
      const double err = std::abs(f.squaredNorm() - k.squaredNorm());
      rep.norm_identity_max_error = std::max(rep.norm_identity_max_error.value_or(0.0), err);
    }
  }
  if (rep.forward_max_residual >= opts.membership_tol) failures.push_back("forward membership (K into M)");
  if (rep.backshift_max_violation >= opts.constraint_tol) failures.push_back("backshift closure of K");
  if (rep.norm_identity_max_error && *rep.norm_identity_max_error >= 1e-10) {
    failures.push_back("norm identity");
  }
  if (samples == kb.cols() && m.dim() <= samples && samples > 0) {
    rep.dimension_audit_angle = subspace_distance(span_columns(phik, opts.rank_tol), m);
    if (*rep.dimension_audit_angle >= 1e-6) failures.push_back("dimension audit");
  }

  if (opts.brute_force_oracle) {
    // Largest S*-invariant set of k whose every backshift assembles into M.
    const Subspace perp = orthogonal_complement(m);
    const CMatrix a = perp.frame.adjoint() * phi;
    CMatrix rows(a.rows() * L, arity * L);
    rows.setZero();
    for (int n = 0; n < L; ++n) {
      for (int j = 0; j < arity; ++j) {
        for (int i = n; i < L; ++i) {
          rows.block(n * a.rows(), j * L + i, a.rows(), 1) = a.col(j * L + i - n);
        }
      }
    }
    const CMatrix oracle = null_space(rows, arity * L, opts.rank_tol);
    rep.oracle_k_dim = static_cast<int>(oracle.cols());
    Subspace ks;
    ks.frame = kb;
    Subspace os;
    os.frame = oracle;
    rep.oracle_agreement = subspace_distance(ks, os);
    const CMatrix phio = phi * oracle;
    const auto osolver = phio.completeOrthogonalDecomposition();
    double worst = 0.0;
    for (int j = 0; j < reverse_basis.dim(); ++j) {
      const CVector f = reverse_basis.frame.col(j);
      worst = std::max(worst, (phio * osolver.solve(f) - f).norm() / f.norm());
    }
    rep.oracle_reverse_residual = worst;
  }

  if (opts.system != CgpSystem::Corollary) {
    CgpOptions base = opts;
    base.system = CgpSystem::Corollary;
    const CgpFrame cf = build_cgp_frame(c, p, N, base);
    if (cf.arity() == arity) {
      Subspace ks;
      ks.frame = kb;
      Subspace cs;
      cs.frame = k_basis(cf, N, L, opts.rank_tol);
      rep.corollary_agreement = subspace_distance(ks, cs);
    }
  }

  rep.pass = failures.empty();
  if (!failures.empty()) {
    std::string joined;
    for (const auto& s : failures) joined += (joined.empty() ? "" : "; ") + s;
    rep.failing_clause = joined;
  }
  return rep;
}

RemarkCheck remark_projection_check(std::uint64_t seed, int draws, int N, double tol) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  auto gauss = [&] { return cplx(normal(rng), normal(rng)); };
  RemarkCheck out;
  out.draws = draws;
  for (int d = 0; d < draws; ++d) {
    const BlaschkeProduct theta = d % 2 == 0
                                      ? BlaschkeProduct::monomial(1 + d % 3)
                                      : random_blaschke(rng, (d / 2) % 2, 1 + (d / 2) % 2, 0.6);
    const AnalyticSeries th = blaschke_expand(theta, N);
    const Subspace kt = model_space(theta, N);
    const AnalyticSeries v = AnalyticSeries::from_polynomial(random_polynomial(rng, 4), N);
    CVector coef(kt.dim());
    for (int i = 0; i < kt.dim(); ++i) coef(i) = gauss();
    const AnalyticSeries g(CVector(kt.frame * coef));
    const cplx mu = gauss();
    const AnalyticSeries thv = multiply(th, v);
    const AnalyticSeries big_g = g + mu * thv;
    const Subspace nsp = direct_sum(kt, span({thv}, N));
    const Subspace m = remove_direction(nsp, big_g, kRankTol);
    const AnalyticSeries direct = projection_of_one(m);

    const cplx th0 = th[0];
    const AnalyticSeries k0 = AnalyticSeries::monomial(0, N) - std::conj(th0) * th;
    const cplx num = inner_product(k0, g) + std::conj(th0 * v[0] * mu);
    const double den = g.squared_norm() + std::norm(mu) * v.squared_norm();
    const AnalyticSeries closed =
        k0 + (std::conj(th0 * v[0]) / v.squared_norm()) * thv - (num / den) * big_g;
    out.max_error = std::max(out.max_error, (closed - direct).norm());
  }
  out.pass = out.max_error < tol;
  return out;
}

}  // namespace toepker
