#include "toepker/catalogue.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

double pnorm(const Polynomial& a) {
  double s = 0.0;
  for (const auto& c : a) s += std::norm(c);
  return std::sqrt(s);
}

cplx pinner(const Polynomial& a, const Polynomial& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Polynomial padd(Polynomial a, const Polynomial& b, cplx sb = 1.0) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sb * b[i];
  return a;
}

Polynomial pscale(Polynomial a, cplx s) {
  for (auto& c : a) c *= s;
  return a;
}

Polynomial pshift(const Polynomial& a, int m) {
  Polynomial out(m, 0.0);
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

Polynomial pnormalize(const Polynomial& a) { return pscale(a, 1.0 / pnorm(a)); }

Polynomial porth(Polynomial a, const std::vector<Polynomial>& orthonormal) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : orthonormal) a = padd(a, b, -pinner(a, b));
  }
  return a;
}

Polynomial monomial(int m, cplx c = 1.0) {
  Polynomial out(m + 1, 0.0);
  out[m] = c;
  return out;
}

// P(conj(f) y) for polynomials.
Polynomial coanalytic_apply(const Polynomial& f, const Polynomial& y) {
  Polynomial out(y.size(), 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    for (std::size_t j = 0; j < f.size() && n + j < y.size(); ++j) out[n] += std::conj(f[j]) * y[n + j];
  }
  return out;
}

Scenario explicit_scenario(std::string id, std::string anchor, SymbolSpec symbol, Polynomial u, Polynomial v,
                           std::set<Check> checks) {
  Scenario s;
  s.id = std::move(id);
  s.anchor = std::move(anchor);
  ExplicitInstance e;
  e.symbol = std::move(symbol);
  e.terms.emplace_back(SeriesSource::poly(std::move(u)), SeriesSource::poly(std::move(v)));
  s.instance = std::move(e);
  s.checks = std::move(checks);
  return s;
}

Scenario generated_scenario(std::string id, std::string anchor, std::string kind, int rank, bool blaschke,
                            std::uint64_t seed) {
  Scenario s;
  s.id = std::move(id);
  s.anchor = std::move(anchor);
  s.instance = GeneratedInstance{std::move(kind), rank, blaschke};
  s.seed = seed;
  return s;
}

const std::set<Check> kAllChecks{Check::Kernel, Check::Defect, Check::Witness, Check::Cgp};

// branch 0: a0 != 0, 1: a0 = 0, 2: kernel {0}.
Scenario inner_corollary(int branch, std::uint64_t seed) {
  Rng rng(seed);
  const Polynomial u = pnormalize(random_polynomial(rng, 3));
  Polynomial r = porth(random_polynomial(rng, 3), {u});
  if (branch == 1) {
    const Polynomial s = padd({1.0}, u, -std::conj(u[0]));
    r = padd(r, s, (u[0] - r[0]) / s[0]);
  }
  const Polynomial q = padd(r, u, branch == 2 ? -2.0 : -1.0);
  static const char* ids[] = {"inner-representation-a0", "inner-representation-a0-zero", "inner-representation-trivial"};
  static const char* anchors[] = {"inner symbol: K = C x {0} when a0 != 0",
                                  "inner symbol: isometric branch a0 = 0",
                                  "inner symbol: kernel {0} when 1 + <conj(theta) v, u> != 0"};
  Scenario s = explicit_scenario(ids[branch], anchors[branch], InnerSymbol{BlaschkeProduct::monomial(2)}, u,
                                 pshift(q, 2), kAllChecks);
  s.expect_kernel_dim = branch == 2 ? 0 : 1;
  s.seed = seed;
  return s;
}

// branch 0: a0 b0 != 0, 1: a0 = 0.
Scenario invertible_product_corollary(int branch, std::uint64_t seed) {
  Rng rng(seed);
  const Polynomial f1{1.0, -1.0 / 3.0};
  const Polynomial f2{2.0, 1.0};
  const Polynomial x =
      pnormalize(branch == 0 ? random_polynomial(rng, 3) : pshift(random_polynomial(rng, 2), 1));
  const Polynomial u = pscale(x, -1.0);
  const Polynomial v = coanalytic_apply(f2, polynomial_multiply(f1, x));
  Scenario s = explicit_scenario(branch == 0 ? "invertible-product-representation" : "invertible-product-representation-a0-zero",
                                 branch == 0 ? "invertible product symbol: K = C x {0} when a0 b0 != 0"
                                             : "invertible product symbol: isometric branch a0 b0 = 0",
                                 make_invertible_product(f1, f2), u, v, kAllChecks);
  s.expect_kernel_dim = 1;
  s.seed = seed;
  return s;
}

// theta = z^2 divides u; branch 0: 1 + <theta v, u> = 0, 1: != 0.
Scenario conj_inner_divides(int branch, std::uint64_t seed) {
  Rng rng(seed);
  const Polynomial qu = pnormalize(random_polynomial(rng, 3));
  const Polynomial r = porth(random_polynomial(rng, 3), {qu});
  const Polynomial v = padd(r, qu, branch == 0 ? -1.0 : -2.0);
  Scenario s = explicit_scenario(
      branch == 0 ? "conj-inner-divides-representation" : "conj-inner-divides-model-space",
      branch == 0 ? "conjugate inner symbol, theta | u: M = K_theta + span{theta v}"
                  : "conjugate inner symbol, theta | u: M = K_theta",
      ConjInnerSymbol{BlaschkeProduct::monomial(2)}, pshift(qu, 2), v, kAllChecks);
  s.expect_kernel_dim = branch == 0 ? 3 : 2;
  s.seed = seed;
  return s;
}

// theta = z^2 does not divide u; branch 0: w_theta != 0, 1: w_theta = 0.
Scenario conj_inner_general(int branch, std::uint64_t seed) {
  Rng rng(seed);
  const Polynomial p1 = pnormalize(random_polynomial(rng, 1));
  const Polynomial q2n = pnormalize(random_polynomial(rng, 3));
  const double b = std::sqrt(3.0) / 2.0;
  const Polynomial u = padd(pscale(p1, 0.5), pshift(q2n, 2), b);
  Polynomial v;
  if (branch == 0) {
    v = pnormalize(random_polynomial(rng, 3));
  } else {
    const Polynomial r = porth(random_polynomial(rng, 3), {q2n});
    v = padd(r, q2n, -1.0 / b);
  }
  Scenario s = explicit_scenario(
      branch == 0 ? "conj-inner-general-representation" : "conj-inner-general-representation-w-zero",
      branch == 0 ? "conjugate inner symbol, theta does not divide u, w_theta != 0"
                  : "conjugate inner symbol, theta does not divide u, w_theta = 0",
      ConjInnerSymbol{BlaschkeProduct::monomial(2)}, u, v, kAllChecks);
  s.expect_kernel_dim = 2;
  s.seed = seed;
  return s;
}

// T_{z^m}: defect space spanned by (S*)^(m+1) v.
Scenario shift_power_example(int m, std::uint64_t seed) {
  Rng rng(seed);
  const Polynomial u = pnormalize(random_polynomial(rng, 3));
  const Polynomial r = porth(random_polynomial(rng, 3), {u});
  const Polynomial q = padd(r, u, -1.0);
  Scenario s = explicit_scenario("shift-power-defect", "symbol z^m: defect space spanned by (S*)^(m+1) v",
                                 InnerSymbol{BlaschkeProduct::monomial(m)}, u, pshift(q, m),
                                 {Check::Kernel, Check::Defect, Check::Witness});
  s.seed = seed;
  return s;
}

void shift_power_extra(const Scenario& s, const RunOptions& opts, ScenarioReport& rep) {
  const int N = opts.truncation.value_or(s.truncation);
  const Instance inst = s.materialize(N);
  const DefectCase dc = defect_case_of(inst.symbol);
  const int m = std::get<InnerSymbol>(dc).theta.z_power();
  const Subspace f = theorem_defect_space(dc, inst.perturbation, N);
  const Subspace expected = span({backshift(inst.perturbation.terms[0].v, m + 1)}, N);
  const double angle = subspace_distance(f, expected);
  rep.extra["defect_space_angle"] = angle;
  if (angle > 1e-10) rep.failures.push_back("F differs from span{(S*)^(m+1) v}");
}

ScenarioReport custom_report(std::string id, std::string anchor) {
  ScenarioReport rep;
  rep.id = std::move(id);
  rep.anchor = std::move(anchor);
  return rep;
}

ScenarioReport remark_row(const RunOptions& opts) {
  ScenarioReport rep =
      custom_report("projection-of-one-closed-form", "closed form of P_M 1 for M = N minus span{g + mu theta v}");
  const RemarkCheck c = remark_projection_check(opts.seed.value_or(2024), 20, opts.truncation.value_or(128));
  rep.truncation = opts.truncation.value_or(128);
  rep.extra = {{"draws", c.draws}, {"max_error", c.max_error}};
  if (!c.pass) rep.failures.push_back("closed form and direct projection disagree");
  return rep;
}

ScenarioReport backshift_identity_row(const RunOptions& opts) {
  ScenarioReport rep = custom_report("backshift-toeplitz-identity", "T_conj(z) T_g = T_(conj(z) g)");
  const int N = opts.truncation.value_or(128);
  rep.truncation = N;
  Rng rng(opts.seed.value_or(7));
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const TrigPolySymbol g{-3, random_polynomial(rng, 6)};
    worst = std::max(worst, toeplitz_product_residual(TrigPolySymbol{-1, {1.0}}, g, N, 7 + i));
  }
  rep.extra = {{"max_residual", worst}};
  if (worst > 1e-12) rep.failures.push_back("residual above 1e-12");
  return rep;
}

CatalogueRow row(Scenario s) {
  CatalogueRow r;
  r.id = s.id;
  r.anchor = s.anchor;
  r.scenario = std::move(s);
  return r;
}

}  // namespace

Scenario zero_symbol_example(int which, int k, int truncation, cplx alpha) {
  Scenario s;
  s.truncation = truncation;
  s.checks = kAllChecks;
  ExplicitInstance e;
  e.symbol = ZeroSymbol{};
  const SeriesSource v = SeriesSource::poly({0.0, 1.0});
  const double r2 = std::numbers::sqrt2;
  switch (which) {
    case 1:
      s.id = "zero-example-unit";
      s.anchor = "zero symbol, u = 1: f0 = 0 and K = H^2";
      e.terms.emplace_back(SeriesSource::poly({1.0}), v);
      s.cgp_system = CgpSystem::UnitConstantU;
      s.expect_vectors.emplace("f0", SeriesSource::poly({0.0}));
      break;
    case 2:
      s.id = "zero-example-inner-u" + std::to_string(k);
      s.anchor = "zero symbol, u = z^k inner: K = K_eta x H^2";
      e.terms.emplace_back(SeriesSource::poly(monomial(k)), v);
      s.cgp_system = CgpSystem::InnerU;
      s.expect_vectors.emplace("f0", SeriesSource::poly({1.0}));
      s.expect_vectors.emplace("v0", SeriesSource::poly(monomial(k)));
      s.expect_vectors.emplace("v1", SeriesSource::poly({0.0}));
      break;
    case 3: {
      s.id = "zero-example-kernel";
      s.anchor = "zero symbol, u normalized reproducing kernel: K = H^2 x {0}";
      e.terms.emplace_back(SeriesSource::kernel(alpha, true), v);
      s.cgp_system = CgpSystem::ReproducingKernelU;
      SeriesSource v1 = SeriesSource::kernel(alpha, false);
      v1.scale = std::conj(alpha);
      SeriesSource f0 = SeriesSource::blaschke_times(BlaschkeProduct({{alpha, 1}}), {1.0});
      f0.scale = std::conj(alpha);
      s.expect_vectors.emplace("f0", f0);
      s.expect_vectors.emplace("v0", SeriesSource::poly({0.0}));
      s.expect_vectors.emplace("v1", v1);
      s.expect_tol = 1e-10;
      break;
    }
    case 4: {
      s.id = "zero-example-binomial" + std::to_string(k);
      s.anchor = "zero symbol, u = (1 + z^k)/sqrt2: sqrt2 (S*)^(k-1) k1 = -(S*)^k k0";
      e.terms.emplace_back(SeriesSource::poly(padd(monomial(k, 1.0 / r2), {1.0 / r2})), v);
      s.cgp_system = CgpSystem::BinomialU;
      s.binomial_power = k;
      s.expect_vectors.emplace("f0", SeriesSource::poly(padd(monomial(k, -0.5), {0.5})));
      s.expect_vectors.emplace("v0", SeriesSource::poly(monomial(k, 1.0 / (2.0 * r2))));
      s.expect_vectors.emplace("v1", SeriesSource::poly(monomial(k - 1, 0.5)));
      break;
    }
    default:
      throw InputError("zero_symbol_example: which must be 1..4");
  }
  s.instance = std::move(e);
  return s;
}

Scenario monomial_theta_example(int m, std::uint64_t seed, int truncation) {
  Rng rng(seed);
  const Polynomial q2n = pnormalize(random_polynomial(rng, 3));
  const Polynomial u = padd(monomial(m - 1, 0.25), pshift(q2n, m), std::sqrt(15.0) / 4.0);
  const Polynomial v = pnormalize(random_polynomial(rng, 3));
  Scenario s = explicit_scenario("monomial-theta-m" + std::to_string(m) + "-s" + std::to_string(seed),
                                 "conj(z^m) symbol, P_K u = z^(m-1)/4: kernel formula and its K",
                                 ConjInnerSymbol{BlaschkeProduct::monomial(m)}, u, v, kAllChecks);
  s.truncation = truncation;
  s.cgp_system = CgpSystem::MonomialTheta;
  s.expect_kernel_dim = m;
  s.seed = seed;
  return s;
}

std::vector<CatalogueRow> builtin_catalogue() {
  std::vector<CatalogueRow> rows;
  for (int n = 1; n <= 3; ++n) {
    rows.push_back(row(generated_scenario("zero-defect-rank" + std::to_string(n),
                                          "zero symbol: defect at most n, F = span{u_i}", "zero", n, false,
                                          10 + n)));
  }
  rows.push_back(row(generated_scenario("inner-defect-monomial", "inner symbol z^m: defect at most n",
                                        "inner", 2, false, 21)));
  rows.push_back(row(generated_scenario("inner-defect-blaschke", "inner symbol, Blaschke: defect at most n",
                                        "inner", 2, true, 22)));
  {
    CatalogueRow r = row(shift_power_example(3, 23));
    r.extra = shift_power_extra;
    rows.push_back(std::move(r));
  }
  rows.push_back(row(generated_scenario("invertible-product-defect-rank1",
                                        "invertible product symbol: defect at most n", "invertible_product",
                                        1, false, 31)));
  rows.push_back(row(generated_scenario("invertible-product-defect-rank2",
                                        "invertible product symbol: defect at most n", "invertible_product",
                                        2, false, 32)));
  {
    Scenario s = conj_inner_divides(0, 41);
    s.id = "conj-inner-defect-lambda-empty";
    s.anchor = "conjugate inner symbol, theta | u: defect at most n";
    s.checks = {Check::Kernel, Check::Defect, Check::Witness};
    rows.push_back(row(std::move(s)));
  }
  {
    Scenario s = conj_inner_general(0, 42);
    s.id = "conj-inner-defect-lambda-nonempty";
    s.anchor = "conjugate inner symbol, theta does not divide u: defect at most n + |Lambda|";
    s.checks = {Check::Kernel, Check::Defect, Check::Witness};
    rows.push_back(row(std::move(s)));
  }
  rows.push_back(row(generated_scenario("conj-inner-defect-blaschke",
                                        "conjugate inner symbol, Blaschke: defect at most n + |Lambda|",
                                        "conj_inner", 2, true, 43)));
  rows.push_back(row(zero_symbol_example(1)));
  rows.push_back(row(zero_symbol_example(2, 2)));
  rows.push_back(row(zero_symbol_example(2, 3)));
  rows.push_back(row(zero_symbol_example(3)));
  for (int k = 1; k <= 3; ++k) rows.push_back(row(zero_symbol_example(4, k)));
  for (int b = 0; b < 3; ++b) rows.push_back(row(inner_corollary(b, 61)));
  for (int b = 0; b < 2; ++b) rows.push_back(row(invertible_product_corollary(b, 71)));
  for (int b = 0; b < 2; ++b) rows.push_back(row(conj_inner_divides(b, 81)));
  for (int b = 0; b < 2; ++b) rows.push_back(row(conj_inner_general(b, 91)));
  {
    CatalogueRow r;
    r.id = "projection-of-one-closed-form";
    r.anchor = "closed form of P_M 1 for M = N minus span{g + mu theta v}";
    r.custom = remark_row;
    rows.push_back(std::move(r));
  }
  {
    CatalogueRow r;
    r.id = "backshift-toeplitz-identity";
    r.anchor = "T_conj(z) T_g = T_(conj(z) g)";
    r.custom = backshift_identity_row;
    rows.push_back(std::move(r));
  }
  for (int m = 1; m <= 3; ++m) rows.push_back(row(monomial_theta_example(m, 101)));
  return rows;
}

ScenarioReport run_row(const CatalogueRow& r, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport rep;
  try {
    if (r.scenario) {
      rep = run_scenario(*r.scenario, opts);
      if (r.extra) r.extra(*r.scenario, opts, rep);
    } else {
      rep = r.custom(opts);
    }
  } catch (const std::exception& e) {
    rep = custom_report(r.id, r.anchor);
    rep.failures.push_back(std::string("error: ") + e.what());
  }
  rep.pass = rep.failures.empty();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SuiteReport run_catalogue(const RunOptions& opts) {
  SuiteReport out;
  for (const auto& r : builtin_catalogue()) out.scenarios.push_back(run_row(r, opts));
  return out;
}

}  // namespace toepker
