#include "toepker/theorems.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

AnalyticSeries toeplitz_apply(const LaurentSeries& g, const AnalyticSeries& f) {
  return riesz_project(multiply(g, LaurentSeries::from_analytic(f)));
}

// T_{f1^-1} T_{conj(f2)^-1} applied to x.
AnalyticSeries inverse_product_apply(const InvertibleProductSymbol& s, const AnalyticSeries& x) {
  const int N = x.truncation();
  const AnalyticSeries inv1 = taylor_invert(s.f1, N);
  const AnalyticSeries inv2 = taylor_invert(s.f2, N);
  return multiply(inv1, toeplitz_apply(conj_on_circle(inv2), x));
}

std::vector<cplx> kernel_pairings(const AnalyticSeries& h, const PerturbationSpec& p) {
  std::vector<cplx> out;
  for (const auto& term : p.terms) out.push_back(inner_product(h, term.u));
  return out;
}

AnalyticSeries witness_unchecked(const DefectCase& c, const AnalyticSeries& h,
                                 const PerturbationSpec& p, int N) {
  const AnalyticSeries sh = backshift(h);
  const std::vector<cplx> ck = kernel_pairings(h, p);
  AnalyticSeries w(N);
  std::visit(
      overloaded{
          [&](const ZeroSymbol&) {
            for (const auto& term : p.terms) w -= inner_product(sh, term.u) * term.u;
          },
          [&](const InnerSymbol& s) {
            const LaurentSeries ctheta = conj_on_circle(blaschke_expand(s.theta, N));
            for (int k = 0; k < p.rank(); ++k) {
              w += ck[k] * toeplitz_apply(ctheta, backshift(p.terms[k].v));
            }
          },
          [&](const InvertibleProductSymbol& s) {
            for (int k = 0; k < p.rank(); ++k) {
              w += ck[k] * inverse_product_apply(s, backshift(p.terms[k].v));
            }
          },
          [&](const ConjInnerSymbol& s) {
            const AnalyticSeries theta = blaschke_expand(s.theta, N);
            const LaurentSeries ctheta = conj_on_circle(theta);
            LaurentSeries psi = multiply(ctheta, LaurentSeries::from_analytic(sh));
            for (int k = 0; k < p.rank(); ++k) {
              const AnalyticSeries sv = backshift(p.terms[k].v);
              psi += ck[k] * LaurentSeries::from_analytic(sv);
              w += ck[k] * multiply(theta, sv);
            }
            const Subspace kt = model_space(s.theta, N);
            std::vector<AnalyticSeries> u1;
            for (const auto& term : p.terms) {
              AnalyticSeries part = project(kt, term.u);
              if (part.norm() > kLambdaRelTol * term.u.norm()) u1.push_back(std::move(part));
            }
            if (u1.empty()) return;
            // psi_1: projection of psi onto span{conj(theta) u_i1} in the negative modes.
            CMatrix basis(N, static_cast<Eigen::Index>(u1.size()));
            for (std::size_t i = 0; i < u1.size(); ++i) {
              const LaurentSeries b = multiply(ctheta, LaurentSeries::from_analytic(u1[i]));
              basis.col(static_cast<Eigen::Index>(i)) = b.coeffs().head(N);
            }
            const CVector target = psi.coeffs().head(N);
            const CVector coef = basis.completeOrthogonalDecomposition().solve(target);
            for (std::size_t i = 0; i < u1.size(); ++i) {
              w -= coef(static_cast<Eigen::Index>(i)) * u1[i];
            }
          },
      },
      c);
  return w;
}

}  // namespace

DefectCase defect_case_of(const SymbolSpec& s) {
  return std::visit(overloaded{
                        [](const ZeroSymbol& x) -> DefectCase { return x; },
                        [](const InnerSymbol& x) -> DefectCase { return x; },
                        [](const ConjInnerSymbol& x) -> DefectCase { return x; },
                        [](const InvertibleProductSymbol& x) -> DefectCase { return x; },
                        [](const TrigPolySymbol&) -> DefectCase {
                          throw InputError(
                              "no defect-space construction for a general trigonometric symbol");
                        },
                    },
                    s);
}

SymbolSpec symbol_of(const DefectCase& c) {
  return std::visit([](const auto& x) -> SymbolSpec { return x; }, c);
}

std::string case_name(const DefectCase& c) { return symbol_kind(symbol_of(c)); }

Subspace model_space(const BlaschkeProduct& theta, int truncation, double rank_tol) {
  return kernel_subspace(toeplitz_matrix(ConjInnerSymbol{theta}, truncation), rank_tol);
}

std::vector<int> lambda_set(const BlaschkeProduct& theta, const std::vector<AnalyticSeries>& u_list,
                            double rel_tol, int truncation) {
  const Subspace kt = model_space(theta, truncation);
  std::vector<int> out;
  for (std::size_t k = 0; k < u_list.size(); ++k) {
    if (project(kt, u_list[k]).norm() > rel_tol * u_list[k].norm()) {
      out.push_back(static_cast<int>(k));
    }
  }
  return out;
}

std::vector<AnalyticSeries> theorem_defect_generators(const DefectCase& c,
                                                      const PerturbationSpec& p, int N) {
  std::vector<AnalyticSeries> gens;
  std::visit(overloaded{
                 [&](const ZeroSymbol&) {
                   for (const auto& term : p.terms) gens.push_back(term.u);
                 },
                 [&](const InnerSymbol& s) {
                   const LaurentSeries ctheta = conj_on_circle(blaschke_expand(s.theta, N));
                   for (const auto& term : p.terms) {
                     gens.push_back(toeplitz_apply(ctheta, backshift(term.v)));
                   }
                 },
                 [&](const InvertibleProductSymbol& s) {
                   for (const auto& term : p.terms) {
                     gens.push_back(inverse_product_apply(s, backshift(term.v)));
                   }
                 },
                 [&](const ConjInnerSymbol& s) {
                   const AnalyticSeries theta = blaschke_expand(s.theta, N);
                   for (const auto& term : p.terms) {
                     gens.push_back(multiply(theta, backshift(term.v)));
                   }
                   const Subspace kt = model_space(s.theta, N);
                   for (const auto& term : p.terms) {
                     AnalyticSeries part = project(kt, term.u);
                     if (part.norm() > kLambdaRelTol * term.u.norm()) {
                       gens.push_back(std::move(part));
                     }
                   }
                 },
             },
             c);
  return gens;
}

Subspace theorem_defect_space(const DefectCase& c, const PerturbationSpec& p, int truncation,
                              double rank_tol) {
  return span(theorem_defect_generators(c, p, truncation), truncation, rank_tol);
}

int theorem_bound(const DefectCase& c, const PerturbationSpec& p, int truncation) {
  int bound = p.rank();
  if (const auto* s = std::get_if<ConjInnerSymbol>(&c)) {
    std::vector<AnalyticSeries> us;
    for (const auto& term : p.terms) us.push_back(term.u);
    bound += static_cast<int>(lambda_set(s->theta, us, kLambdaRelTol, truncation).size());
  }
  return bound;
}

AnalyticSeries defect_witness(const DefectCase& c, const AnalyticSeries& h,
                              const PerturbationSpec& p, int truncation) {
  if (h.truncation() != truncation) throw InputError("defect_witness: truncation mismatch");
  const double hn = h.norm();
  if (hn == 0.0) return AnalyticSeries(truncation);
  if (std::abs(h[0]) > kWitnessTol * hn) throw PreconditionError("h(0) != 0");
  const OperatorMatrix r = perturbed_matrix(toeplitz_matrix(symbol_of(c), truncation), p);
  const double scale = std::max(1.0, r.entries.norm());
  if (apply(r, h).norm() > kWitnessTol * scale * hn) {
    throw PreconditionError("h is not in the kernel of R_n");
  }
  return witness_unchecked(c, h, p, truncation);
}

DefectTheoremReport verify_defect_theorem(const DefectCase& c, const PerturbationSpec& p,
                                          int N, const DefectTolerances& tols) {
  p.validate(N);
  DefectTheoremReport report;
  report.case_name = case_name(c);

  const OperatorMatrix r = perturbed_matrix(toeplitz_matrix(symbol_of(c), N), p);
  const Subspace m = kernel_subspace(r, tols.rank);
  report.kernel_dim = m.dim();
  report.kernel_singular_values = m.singular_values;
  report.defect = minimal_defect(m, tols.rank);

  const std::vector<AnalyticSeries> gens = theorem_defect_generators(c, p, N);
  const Subspace f = span(gens, N, tols.rank);
  report.theorem_F_dim = f.dim();
  if (const auto* s = std::get_if<ConjInnerSymbol>(&c)) {
    std::vector<AnalyticSeries> us;
    for (const auto& term : p.terms) us.push_back(term.u);
    report.lambda = lambda_set(s->theta, us, tols.lambda_rel, N);
  }
  const int bound = p.rank() + static_cast<int>(report.lambda.size());
  report.defect.bound_from_theorem = bound;
  report.bound_ok = report.defect.defect_dim <= bound;

  // Residual directions live in M^perp; F is a valid defect space iff they lie in M + F.
  CMatrix joint(N, m.dim() + f.dim());
  joint << m.frame, f.frame;
  const Subspace m_plus_f = span_columns(joint, tols.rank);
  double worst = 0.0;
  const CMatrix& res = report.defect.residual_frame.frame;
  for (Eigen::Index j = 0; j < res.cols(); ++j) {
    const CVector col = res.col(j);
    worst = std::max(worst, (col - m_plus_f.frame * (m_plus_f.frame.adjoint() * col)).norm());
  }
  report.defect.max_residual_outside_F = worst;
  report.residual_in_F_ok = worst < tols.defect_in_F;
  report.defect.contained_in_theorem_F = report.residual_in_F_ok;

  const Subspace m0 = vanish_at_zero(m);
  for (int j = 0; j < m0.dim(); ++j) {
    const AnalyticSeries h = m0.column(j);
    WitnessEntry e{witness_unchecked(c, h, p, N)};
    const AnalyticSeries x = backshift(h) + e.w;
    e.membership_residual = apply(r, x).norm() / std::max(1.0, x.norm());
    e.w_in_F_residual = contains(f, e.w).second;
    report.witness.max_membership_residual =
        std::max(report.witness.max_membership_residual, e.membership_residual);
    report.witness.max_w_in_F_residual =
        std::max(report.witness.max_w_in_F_residual, e.w_in_F_residual);
    report.witness.entries.push_back(std::move(e));
  }
  report.witness_ok = report.witness.max_membership_residual < tols.witness;
  report.witness_locality_ok = report.witness.max_w_in_F_residual < tols.witness;
  report.pass =
      report.bound_ok && report.residual_in_F_ok && report.witness_ok && report.witness_locality_ok;
  return report;
}

}  // namespace toepker
