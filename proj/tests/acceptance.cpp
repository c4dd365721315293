// One line per acceptance criterion; exit status 1 if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exact_nullspace.hpp"
#include "model_space_basis.hpp"
#include "toepker/catalogue.hpp"
#include "toepker/cgp.hpp"
#include "toepker/generators.hpp"
#include "toepker/theorems.hpp"

using namespace toepker;

namespace {

constexpr int kModelSpaceN = 256;
constexpr double kModelSpaceAngle = 1e-6;
constexpr double kModelSpaceSeconds = 5.0;
constexpr int kDefectSuiteN = 128;
constexpr int kDefectSuiteInstances = 50;
constexpr double kDefectSuiteSeconds = 60.0;
constexpr double kClosedFormTol = 1e-12;
constexpr double kDisplayedKernelAngle = 1e-7;
constexpr int kExampleN = 64;
constexpr double kFitTol = 1e-8;
constexpr double kNormIdentityTol = 1e-10;
constexpr double kOracleAngle = 1e-10;
constexpr int kOracleMatrices = 100;
constexpr double kProductTol = 1e-12;
constexpr int kProductPairs = 20;
constexpr double kRemarkTol = 1e-10;
constexpr int kRemarkDraws = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

using ZeroList = std::vector<std::pair<cplx, int>>;

Outcome model_spaces() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    ZeroList zeros;
    int z_power;
  };
  std::vector<Case> cases{{{}, 1}, {{}, 2}, {{}, 3}};
  cases.push_back({{{0.8, 1}}, 0});
  cases.push_back({{{cplx(0.0, 0.5), 1}, {-0.8, 1}}, 0});
  cases.push_back({{{std::polar(0.8, 2.0), 1}, {cplx(0.3, -0.4), 1}, {-0.7, 1}}, 0});
  cases.push_back({{{0.6, 1}}, 1});
  cases.push_back({{{cplx(0.5, 0.5), 2}}, 1});
  cases.push_back({{{std::polar(0.75, -1.0), 3}}, 0});
  Rng rng(2718);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int d = 1; d <= 3; ++d) {
    ZeroList z;
    for (int i = 0; i < d; ++i) z.push_back({std::polar(0.8 * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng)), 1});
    cases.push_back({z, 0});
  }
  double worst = 0.0;
  Outcome o;
  for (const auto& c : cases) {
    std::vector<BlaschkeZero> zs;
    for (const auto& [a, k] : c.zeros) zs.push_back({a, k});
    const BlaschkeProduct theta(zs, c.z_power);
    const Subspace k = model_space(theta, kModelSpaceN);
    if (k.dim() != theta.degree()) {
      o.pass = false;
      o.detail = "dim " + std::to_string(k.dim()) + " != degree " + std::to_string(theta.degree()) + "; ";
      continue;
    }
    const auto ref = oracle::orthonormal_columns(oracle::model_space_columns(c.zeros, c.z_power, kModelSpaceN));
    worst = std::max(worst, std::asin(std::min(1.0, oracle::max_angle_sine(ref, k.frame))));
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && worst < kModelSpaceAngle && secs < kModelSpaceSeconds;
  o.detail += std::to_string(cases.size()) + " symbols, max angle " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

Outcome defect_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  int total = 0, failed = 0;
  double worst_res = 0.0, worst_wit = 0.0;
  for (int kind = 0; kind < 4; ++kind) {
    for (int i = 0; i < kDefectSuiteInstances; ++i) {
      Rng rng(1'000'000 * (kind + 1) + i);
      const int n = 1 + i % 3;
      Instance inst;
      switch (kind) {
        case 0: inst = random_zero_instance(rng, kDefectSuiteN, n); break;
        case 1: inst = random_inner_instance(rng, kDefectSuiteN, n, false); break;
        case 2: inst = random_invertible_product_instance(rng, kDefectSuiteN, n); break;
        default: inst = random_conj_inner_instance(rng, kDefectSuiteN, n, false); break;
      }
      const auto rep = verify_defect_theorem(defect_case_of(inst.symbol), inst.perturbation, kDefectSuiteN);
      ++total;
      worst_res = std::max(worst_res, rep.defect.max_residual_outside_F);
      worst_wit = std::max(worst_wit, rep.witness.max_membership_residual);
      if (!(rep.bound_ok && rep.defect.max_residual_outside_F < kDefectInFTol &&
            rep.witness.max_membership_residual < kWitnessTol)) {
        ++failed;
      }
    }
  }
  const double secs = seconds_since(t0);
  o.pass = failed == 0 && secs < kDefectSuiteSeconds;
  o.detail = std::to_string(total - failed) + "/" + std::to_string(total) + " instances, residual outside F " +
             fmt(worst_res) + ", witness " + fmt(worst_wit) + ", " + fmt(secs) + " s";
  return o;
}

Instance instance_of(const Scenario& s) { return s.materialize(s.truncation); }

Outcome binomial_closed_forms() {
  Outcome o;
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Scenario s = zero_symbol_example(4, k, kExampleN);
    const auto inst = instance_of(s);
    CgpOptions opts;
    opts.system = CgpSystem::BinomialU;
    opts.binomial_power = k;
    const CgpFrame f = build_cgp_frame(ZeroSymbol{}, inst.perturbation, kExampleN, opts);
    AnalyticSeries f0(kExampleN), v0(kExampleN), v1(kExampleN);
    f0[0] = 0.5;
    f0[k] = -0.5;
    v0[k] = 1.0 / (2.0 * std::numbers::sqrt2);
    v1[k - 1] = 0.5;
    const auto err = [](const AnalyticSeries& a, const AnalyticSeries& b) {
      return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
    };
    worst = std::max({worst, err(f.f0, f0), err(f.constraint_vectors.at("v0"), v0),
                      err(f.constraint_vectors.at("v1"), v1)});
  }
  o.pass = worst < kClosedFormTol;
  o.detail = "k = 1..3, max coefficient error " + fmt(worst);
  return o;
}

Outcome monomial_theta() {
  Outcome o;
  double worst_angle = 0.0, worst_rev = 0.0, worst_fwd = 0.0;
  int ok = 0, total = 0;
  for (int m = 1; m <= 3; ++m) {
    for (std::uint64_t seed : {101u, 202u}) {
      const Scenario s = monomial_theta_example(m, seed);
      const auto inst = instance_of(s);
      CgpOptions opts;
      opts.system = CgpSystem::MonomialTheta;
      const auto rep = verify_corollary(defect_case_of(inst.symbol), inst.perturbation, s.truncation, opts);
      const double angle = rep.kernel_formula_angle.value_or(1.0);
      worst_angle = std::max(worst_angle, angle);
      worst_rev = std::max(worst_rev, rep.reverse_max_residual);
      worst_fwd = std::max(worst_fwd, rep.forward_max_residual);
      ++total;
      if (angle < kDisplayedKernelAngle && rep.pass) ++ok;
    }
  }
  o.pass = ok == total;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " pass; kernel formula angle " + fmt(worst_angle) +
             ", constraint system reverse " + fmt(worst_rev) + ", forward " + fmt(worst_fwd);
  return o;
}

Outcome zero_examples() {
  Outcome o;
  std::vector<Scenario> scenarios{zero_symbol_example(1, 1, kExampleN), zero_symbol_example(2, 2, kExampleN),
                                  zero_symbol_example(2, 3, kExampleN), zero_symbol_example(3, 1, kExampleN)};
  for (int k = 1; k <= 3; ++k) scenarios.push_back(zero_symbol_example(4, k, kExampleN));
  double rev = 0.0, fwd = 0.0, bs = 0.0, norm_err = 1.0;
  int ok = 0;
  for (const auto& s : scenarios) {
    const auto inst = instance_of(s);
    CgpOptions opts;
    opts.system = s.cgp_system;
    opts.binomial_power = s.binomial_power;
    opts.inner_truncation = s.inner_truncation;
    const auto rep = verify_corollary(ZeroSymbol{}, inst.perturbation, kExampleN, opts);
    rev = std::max(rev, rep.reverse_max_residual);
    fwd = std::max(fwd, rep.forward_max_residual);
    bs = std::max(bs, rep.backshift_max_violation);
    bool good = rep.reverse_max_residual < kFitTol && rep.forward_max_residual < kFitTol &&
                rep.backshift_max_violation < kConstraintTol;
    if (s.cgp_system == CgpSystem::UnitConstantU) {
      norm_err = rep.norm_identity_max_error.value_or(1.0);
      good = good && norm_err < kNormIdentityTol;
    }
    if (good) ++ok;
  }
  o.pass = ok == static_cast<int>(scenarios.size());
  o.detail = std::to_string(ok) + "/" + std::to_string(scenarios.size()) + " systems; reverse " + fmt(rev) +
             ", forward " + fmt(fwd) + ", backshift " + fmt(bs) + ", norm identity " + fmt(norm_err);
  return o;
}

Outcome exact_oracle() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> entry(-4, 4);
  double worst = 0.0;
  int mismatched = 0;
  for (int t = 0; t < kOracleMatrices; ++t) {
    const int n = 2 + t % 7;
    const int r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    std::vector<std::vector<std::pair<int, int>>> b(n, std::vector<std::pair<int, int>>(r)), c(r, std::vector<std::pair<int, int>>(n));
    for (auto& row : b) for (auto& x : row) x = {entry(rng), entry(rng)};
    for (auto& row : c) for (auto& x : row) x = {entry(rng), entry(rng)};
    oracle::ExactMatrix exact(n, std::vector<oracle::GaussianRational>(n));
    OperatorMatrix op;
    op.entries = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        long re = 0, im = 0;
        for (int k = 0; k < r; ++k) {
          re += long{b[i][k].first} * c[k][j].first - long{b[i][k].second} * c[k][j].second;
          im += long{b[i][k].first} * c[k][j].second + long{b[i][k].second} * c[k][j].first;
        }
        exact[i][j] = {re, im};
        op.entries(i, j) = cplx(static_cast<double>(re), static_cast<double>(im));
      }
    }
    const auto null = oracle::exact_nullspace(exact);
    const Subspace k = kernel_subspace(op);
    if (k.dim() != static_cast<int>(null.size())) {
      ++mismatched;
      continue;
    }
    if (null.empty()) continue;
    Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(null.size()));
    for (std::size_t j = 0; j < null.size(); ++j) {
      for (int i = 0; i < n; ++i) cols(i, static_cast<Eigen::Index>(j)) = null[j][i];
    }
    worst = std::max(worst, std::asin(std::min(1.0, oracle::max_angle_sine(oracle::orthonormal_columns(cols), k.frame))));
  }
  o.pass = mismatched == 0 && worst < kOracleAngle;
  o.detail = std::to_string(kOracleMatrices) + " matrices, " + std::to_string(mismatched) +
             " dimension mismatches, max angle " + fmt(worst);
  return o;
}

LaurentSeries random_trig(Rng& rng, int neg, int pos, int n) {
  const Polynomial c = random_polynomial(rng, neg + pos);
  return LaurentSeries::from_coefficients(-neg, c, n);
}

bool adjoint_exact(const LaurentSeries& g, int n) {
  LaurentSeries gbar(g.truncation());
  for (int m = -g.truncation(); m <= g.truncation(); ++m) gbar.at(m) = std::conj(g.at(-m));
  return toeplitz_matrix(gbar, n).entries == toeplitz_matrix(g, n).entries.adjoint();
}

Outcome toeplitz_algebra() {
  constexpr int n = 64;
  Outcome o;
  Rng rng(77);
  std::uniform_int_distribution<int> band(0, 4);
  double worst = 0.0;
  bool adjoint = true;
  for (int t = 0; t < kProductPairs; ++t) {
    const LaurentSeries psi = random_trig(rng, band(rng), 0, n);
    const LaurentSeries phi = random_trig(rng, band(rng), band(rng), n);
    worst = std::max(worst, toeplitz_product_residual(psi, phi, n, t));
    adjoint = adjoint && adjoint_exact(psi, n) && adjoint_exact(phi, n);
  }
  const LaurentSeries zbar = LaurentSeries::from_coefficients(-1, std::vector<cplx>{1.0}, n);
  const LaurentSeries g = random_trig(rng, 3, 3, n);
  const double ident = toeplitz_product_residual(zbar, g, n);
  const SymbolSpec prod = make_invertible_product({1.0, 0.25}, {1.0, cplx(0.0, -0.5)});
  const double ident2 = toeplitz_product_residual(zbar, symbol_fourier(prod, n), n);
  o.pass = worst <= kProductTol && ident <= kProductTol && ident2 <= kProductTol && adjoint;
  o.detail = std::to_string(kProductPairs) + " pairs max " + fmt(worst) + ", T_conj(z) T_g " +
             fmt(std::max(ident, ident2)) + ", adjoint symmetry " + (adjoint ? "exact" : "broken");
  return o;
}

Outcome stabilization() {
  Outcome o;
  const SuiteReport suite = run_catalogue();
  int ran = 0, agree = 0;
  std::string bad;
  for (const auto& r : suite.scenarios) {
    if (!r.stabilization.ran) continue;
    ++ran;
    if (r.stabilization.agree) {
      ++agree;
    } else {
      bad += " " + r.id;
    }
  }
  o.pass = ran > 0 && agree == ran;
  o.detail = std::to_string(agree) + "/" + std::to_string(ran) + " scenarios agree at N and 2N" +
             (bad.empty() ? "" : ";" + bad);
  return o;
}

Outcome projection_of_one_formula() {
  const RemarkCheck r = remark_projection_check(2024, kRemarkDraws, 128, kRemarkTol);
  return {r.pass && r.draws == kRemarkDraws && r.max_error < kRemarkTol,
          std::to_string(r.draws) + " draws, max error " + fmt(r.max_error)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"model-space kernels at N = 256", model_spaces},
      {"defect suite, four symbol classes", defect_suite},
      {"binomial u closed forms", binomial_closed_forms},
      {"conj(z^m) kernel formula and constraint system", monomial_theta},
      {"zero-symbol examples, bidirectional representation", zero_examples},
      {"SVD kernels vs exact nullspaces", exact_oracle},
      {"Toeplitz product rule and adjoints", toeplitz_algebra},
      {"stabilization at N and 2N", stabilization},
      {"closed form of P_M 1", projection_of_one_formula},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
