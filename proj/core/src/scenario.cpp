#include "toepker/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const std::map<std::string, CgpSystem>& system_names() {
  static const std::map<std::string, CgpSystem> names{
      {"corollary", CgpSystem::Corollary},
      {"unit_constant_u", CgpSystem::UnitConstantU},
      {"inner_u", CgpSystem::InnerU},
      {"reproducing_kernel_u", CgpSystem::ReproducingKernelU},
      {"binomial_u", CgpSystem::BinomialU},
      {"monomial_theta", CgpSystem::MonomialTheta},
  };
  return names;
}

std::string system_key(CgpSystem s) {
  for (const auto& [k, v] : system_names()) {
    if (v == s) return k;
  }
  return "corollary";
}

int polynomial_degree(const Polynomial& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != cplx(0.0)) return i;
  }
  return 0;
}

int symbol_degree(const SymbolSpec& s) {
  return std::visit(overloaded{
                        [](const ZeroSymbol&) { return 0; },
                        [](const TrigPolySymbol& t) {
                          const int hi = t.lowest + static_cast<int>(t.coeffs.size()) - 1;
                          return std::max(std::abs(t.lowest), std::abs(hi));
                        },
                        [](const InnerSymbol& t) { return t.theta.degree(); },
                        [](const ConjInnerSymbol& t) { return t.theta.degree(); },
                        [](const InvertibleProductSymbol& t) {
                          return std::max(polynomial_degree(t.f1), polynomial_degree(t.f2));
                        },
                    },
                    s);
}

double tail_beyond(const AnalyticSeries& f2n, int n) {
  const double total = f2n.norm();
  if (total == 0.0) return 0.0;
  return f2n.coeffs().tail(f2n.truncation() - n).norm() / total;
}

double symbol_tail(const SymbolSpec& s, int n) {
  const LaurentSeries g = symbol_fourier(s, 2 * n);
  const double total = g.norm();
  if (total == 0.0) return 0.0;
  double out = 0.0;
  for (int k = n; k <= 2 * n; ++k) out += std::norm(g.at(k)) + std::norm(g.at(-k));
  return std::sqrt(out) / total;
}

Check check_from_name(const std::string& s) {
  if (s == "kernel") return Check::Kernel;
  if (s == "defect") return Check::Defect;
  if (s == "witness") return Check::Witness;
  if (s == "cgp") return Check::Cgp;
  throw InputError("schema: unknown check \"" + s + "\"");
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw InputError("schema: a scenario must be an object");
  Scenario s;
  s.id = j.value("id", std::string("scenario"));
  s.anchor = j.value("anchor", std::string());
  s.truncation = j.value("truncation", kDefaultTruncation);
  s.inner_truncation = j.value("inner_truncation", kDefaultInnerTruncation);
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    s.tolerances.rank = t.value("rank", kRankTol);
    s.tolerances.membership = t.value("membership", kMembershipTol);
    s.tolerances.constraint = t.value("constraint", kConstraintTol);
  }
  if (j.contains("generate")) {
    const json& g = j.at("generate");
    GeneratedInstance gi;
    gi.kind = g.at("kind").get<std::string>();
    gi.rank = g.value("rank", 1);
    gi.blaschke = g.value("blaschke", false);
    if (gi.rank < 1) throw InputError("schema: generated rank must be >= 1");
    s.instance = gi;
  } else {
    ExplicitInstance ei;
    if (!j.contains("symbol")) throw InputError("schema: missing field \"symbol\"");
    ei.symbol = symbol_from_json(j.at("symbol"));
    if (j.contains("perturbation")) {
      const json& p = j.at("perturbation");
      const json& terms = p.is_array() ? p : p.at("terms");
      for (const auto& t : terms) {
        ei.terms.emplace_back(series_source_from_json(t.at("u")), series_source_from_json(t.at("v")));
      }
    }
    s.instance = ei;
  }
  if (j.contains("checks")) {
    s.checks.clear();
    for (const auto& c : j.at("checks")) s.checks.insert(check_from_name(c.get<std::string>()));
  }
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("cgp")) {
    const json& c = j.at("cgp");
    const std::string name = c.value("system", std::string("corollary"));
    const auto it = system_names().find(name);
    if (it == system_names().end()) throw InputError("schema: unknown cgp system \"" + name + "\"");
    s.cgp_system = it->second;
    s.binomial_power = c.value("binomial_power", 1);
  }
  if (j.contains("expect")) {
    const json& e = j.at("expect");
    if (e.contains("kernel_dim")) s.expect_kernel_dim = e.at("kernel_dim").get<int>();
    if (e.contains("vectors")) {
      for (const auto& [name, src] : e.at("vectors").items()) {
        s.expect_vectors.emplace(name, series_source_from_json(src));
      }
    }
    s.expect_tol = e.value("tol", 1e-12);
  }
  if (s.truncation <= 0 || s.inner_truncation <= 0) {
    throw InputError("schema: truncations must be positive");
  }
  return s;
}

std::map<std::string, AnalyticSeries> frame_vectors(const CgpFrame& f) {
  std::map<std::string, AnalyticSeries> out(f.constraint_vectors.begin(), f.constraint_vectors.end());
  out.insert_or_assign("f0", f.f0);
  for (std::size_t j = 0; j < f.e_list.size(); ++j) out.insert_or_assign("e" + std::to_string(j + 1), f.e_list[j]);
  return out;
}

}  // namespace

SeriesSource SeriesSource::poly(Polynomial p, bool normalize) {
  SeriesSource s;
  s.form = Poly{std::move(p)};
  s.normalize = normalize;
  return s;
}

SeriesSource SeriesSource::kernel(cplx alpha, bool normalized) {
  SeriesSource s;
  s.form = Kernel{alpha, normalized};
  return s;
}

SeriesSource SeriesSource::blaschke_times(BlaschkeProduct theta, Polynomial p, bool normalize) {
  SeriesSource s;
  s.form = BlaschkeTimesPoly{std::move(theta), std::move(p)};
  s.normalize = normalize;
  return s;
}

int SeriesSource::rational_degree() const {
  return std::visit(overloaded{
                        [](const Poly& p) { return polynomial_degree(p.coeffs); },
                        [](const Kernel&) { return 1; },
                        [](const BlaschkeTimesPoly& b) {
                          return 2 * b.theta.degree() - b.theta.z_power() + polynomial_degree(b.poly);
                        },
                    },
                    form);
}

AnalyticSeries SeriesSource::materialize(int N) const {
  AnalyticSeries f = std::visit(
      overloaded{
          [&](const Poly& p) { return AnalyticSeries::from_polynomial(p.coeffs, N); },
          [&](const Kernel& k) { return reproducing_kernel(k.alpha, N, k.normalized); },
          [&](const BlaschkeTimesPoly& b) {
            return multiply(blaschke_expand(b.theta, N), AnalyticSeries::from_polynomial(b.poly, N));
          },
      },
      form);
  if (normalize) {
    const double n = f.norm();
    if (n == 0.0) throw InputError("cannot normalize a zero series");
    f *= cplx(1.0 / n);
  }
  return scale * f;
}

json to_json(const SeriesSource& s) {
  json out = std::visit(
      overloaded{
          [](const SeriesSource::Poly& p) -> json { return {{"poly", to_json(p.coeffs)}}; },
          [](const SeriesSource::Kernel& k) -> json {
            return {{"reproducing_kernel", {{"alpha", to_json(k.alpha)}, {"normalized", k.normalized}}}};
          },
          [](const SeriesSource::BlaschkeTimesPoly& b) -> json {
            return {{"blaschke_times_poly", {{"theta", to_json(b.theta)}, {"poly", to_json(b.poly)}}}};
          },
      },
      s.form);
  if (s.normalize) out["normalize"] = true;
  if (s.scale != cplx(1.0)) out["scale"] = to_json(s.scale);
  return out;
}

SeriesSource series_source_from_json(const json& j) {
  if (j.is_array()) return SeriesSource::poly(polynomial_from_json(j));
  if (!j.is_object()) throw InputError("schema: series must be an array or an object");
  SeriesSource s;
  if (j.contains("poly")) {
    s.form = SeriesSource::Poly{polynomial_from_json(j.at("poly"))};
  } else if (j.contains("coeffs")) {
    s.form = SeriesSource::Poly{polynomial_from_json(j.at("coeffs"))};
  } else if (j.contains("reproducing_kernel")) {
    const json& k = j.at("reproducing_kernel");
    s.form = SeriesSource::Kernel{complex_from_json(k.at("alpha")), k.value("normalized", true)};
  } else if (j.contains("blaschke_times_poly")) {
    const json& b = j.at("blaschke_times_poly");
    s.form = SeriesSource::BlaschkeTimesPoly{blaschke_from_json(b.at("theta")),
                                             polynomial_from_json(b.value("poly", json::array({1.0})))};
  } else {
    throw InputError("schema: series object needs poly, coeffs, reproducing_kernel or blaschke_times_poly");
  }
  s.normalize = j.value("normalize", false);
  if (j.contains("scale")) s.scale = complex_from_json(j.at("scale"));
  return s;
}

std::string check_name(Check c) {
  switch (c) {
    case Check::Kernel: return "kernel";
    case Check::Defect: return "defect";
    case Check::Witness: return "witness";
    case Check::Cgp: return "cgp";
  }
  return "?";
}

int Scenario::max_input_degree() const {
  return std::visit(overloaded{
                        [](const GeneratedInstance&) { return kGeneratedDegreeBound; },
                        [](const ExplicitInstance& e) {
                          int d = symbol_degree(e.symbol);
                          for (const auto& [u, v] : e.terms) {
                            d = std::max({d, u.rational_degree(), v.rational_degree()});
                          }
                          return d;
                        },
                    },
                    instance);
}

void Scenario::check_headroom(int N) const {
  const int need = 2 * max_input_degree() + 8;
  if (N < need) {
    throw HeadroomError("scenario \"" + id + "\": truncation " + std::to_string(N) +
                        " is below 2 * max degree + 8 = " + std::to_string(need));
  }
}

Instance Scenario::materialize(int N) const {
  return std::visit(overloaded{
                        [&](const GeneratedInstance& g) {
                          Rng rng(seed);
                          if (g.kind == "zero") return random_zero_instance(rng, N, g.rank);
                          if (g.kind == "inner") return random_inner_instance(rng, N, g.rank, g.blaschke);
                          if (g.kind == "invertible_product") {
                            return random_invertible_product_instance(rng, N, g.rank);
                          }
                          if (g.kind == "conj_inner") {
                            return random_conj_inner_instance(rng, N, g.rank, g.blaschke);
                          }
                          throw InputError("schema: unknown generated kind \"" + g.kind + "\"");
                        },
                        [&](const ExplicitInstance& e) {
                          Instance inst;
                          inst.label = id;
                          inst.symbol = e.symbol;
                          for (const auto& [u, v] : e.terms) {
                            inst.perturbation.terms.push_back({u.materialize(N), v.materialize(N)});
                          }
                          return inst;
                        },
                    },
                    instance);
}

Scenario scenario_from_json(const json& j) {
  try {
    return parse_scenario(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("schema: ") + e.what());
  }
}

json to_json(const Scenario& s) {
  json out = {{"id", s.id},
              {"truncation", s.truncation},
              {"inner_truncation", s.inner_truncation},
              {"tolerances",
               {{"rank", s.tolerances.rank},
                {"membership", s.tolerances.membership},
                {"constraint", s.tolerances.constraint}}},
              {"seed", s.seed}};
  if (!s.anchor.empty()) out["anchor"] = s.anchor;
  std::visit(overloaded{
                 [&](const GeneratedInstance& g) {
                   out["generate"] = {{"kind", g.kind}, {"rank", g.rank}, {"blaschke", g.blaschke}};
                 },
                 [&](const ExplicitInstance& e) {
                   out["symbol"] = to_json(e.symbol);
                   json terms = json::array();
                   for (const auto& [u, v] : e.terms) terms.push_back({{"u", to_json(u)}, {"v", to_json(v)}});
                   out["perturbation"] = {{"terms", terms}};
                 },
             },
             s.instance);
  json checks = json::array();
  for (Check c : s.checks) checks.push_back(check_name(c));
  out["checks"] = checks;
  if (s.checks.count(Check::Cgp)) {
    out["cgp"] = {{"system", system_key(s.cgp_system)}, {"binomial_power", s.binomial_power}};
  }
  if (s.expect_kernel_dim || !s.expect_vectors.empty()) {
    json e = json::object();
    if (s.expect_kernel_dim) e["kernel_dim"] = *s.expect_kernel_dim;
    if (!s.expect_vectors.empty()) {
      json v = json::object();
      for (const auto& [name, src] : s.expect_vectors) v[name] = to_json(src);
      e["vectors"] = v;
      e["tol"] = s.expect_tol;
    }
    out["expect"] = e;
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scenario file \"" + path + "\"");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("schema: ") + e.what());
  }
  std::vector<Scenario> out;
  if (j.is_object() && j.contains("scenarios")) {
    for (const auto& s : j.at("scenarios")) out.push_back(scenario_from_json(s));
  } else {
    out.push_back(scenario_from_json(j));
  }
  return out;
}

ScenarioReport run_scenario(const Scenario& scenario, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Scenario s = scenario;
  if (opts.seed) s.seed = *opts.seed;
  const int N = opts.truncation.value_or(s.truncation);
  s.check_headroom(N);

  ScenarioReport rep;
  rep.id = s.id;
  rep.anchor = s.anchor;
  rep.truncation = N;

  const Instance inst = s.materialize(N);
  inst.perturbation.validate(N);

  try {
    const OperatorMatrix r = perturbed_matrix(toeplitz_matrix(inst.symbol, N), inst.perturbation);
    const Subspace m = kernel_subspace(r, s.tolerances.rank);
    rep.kernel_dim = m.dim();
    rep.singular_values = m.singular_values;
    rep.defect_dim = minimal_defect(m, s.tolerances.rank).defect_dim;
    if (s.expect_kernel_dim && *s.expect_kernel_dim != m.dim()) {
      rep.failures.push_back("kernel dimension " + std::to_string(m.dim()) + ", expected " +
                             std::to_string(*s.expect_kernel_dim));
    }

    const bool wants_defect = s.checks.count(Check::Defect) || s.checks.count(Check::Witness);
    const bool wants_cgp = s.checks.count(Check::Cgp) || !s.expect_vectors.empty();
    if (wants_defect || wants_cgp) {
      const DefectCase dc = defect_case_of(inst.symbol);
      if (wants_defect) {
        DefectTolerances tols;
        tols.rank = s.tolerances.rank;
        DefectTheoremReport d = verify_defect_theorem(dc, inst.perturbation, N, tols);
        if (s.checks.count(Check::Defect)) {
          if (!d.bound_ok) rep.failures.push_back("defect exceeds the theorem bound");
          if (!d.residual_in_F_ok) rep.failures.push_back("defect residual outside the theorem's F");
        }
        if (s.checks.count(Check::Witness)) {
          if (!d.witness_ok) rep.failures.push_back("witness S*h + w not in the kernel");
          if (!d.witness_locality_ok) rep.failures.push_back("witness outside the theorem's F");
        }
        rep.defect = std::move(d);
      }
      CgpOptions co;
      co.system = s.cgp_system;
      co.binomial_power = s.binomial_power;
      co.inner_truncation = s.inner_truncation;
      co.rank_tol = s.tolerances.rank;
      co.membership_tol = s.tolerances.membership;
      co.constraint_tol = s.tolerances.constraint;
      if (s.checks.count(Check::Cgp)) {
        RepresentationReport c = verify_corollary(dc, inst.perturbation, N, co);
        if (!c.pass) rep.failures.push_back("representation: " + c.failing_clause);
        rep.cgp = std::move(c);
      }
      if (!s.expect_vectors.empty()) {
        const auto vecs = frame_vectors(build_cgp_frame(dc, inst.perturbation, N, co));
        json errs = json::object();
        for (const auto& [name, src] : s.expect_vectors) {
          const auto it = vecs.find(name);
          if (it == vecs.end()) {
            rep.failures.push_back("frame has no vector " + name);
            continue;
          }
          const double err = (it->second.coeffs() - src.materialize(N).coeffs()).cwiseAbs().maxCoeff();
          errs[name] = err;
          if (err > s.expect_tol) rep.failures.push_back("closed form of " + name);
        }
        rep.extra["closed_form_errors"] = errs;
      }
    }

    const int n2 = 2 * N;
    const Instance inst2 = s.materialize(n2);
    for (const auto& t : inst2.perturbation.terms) {
      rep.tail_ratio = std::max({rep.tail_ratio, tail_beyond(t.u, N), tail_beyond(t.v, N)});
    }
    rep.tail_ratio = std::max(rep.tail_ratio, symbol_tail(inst.symbol, N));
    rep.headroom_violated = rep.tail_ratio > kTailWarnRatio;
    if (rep.defect) rep.defect->tail_ratio = rep.tail_ratio;

    if (opts.stabilize) {
      const OperatorMatrix r2 = perturbed_matrix(toeplitz_matrix(inst2.symbol, n2), inst2.perturbation);
      const Subspace m2 = kernel_subspace(r2, s.tolerances.rank);
      Stabilization& st = rep.stabilization;
      st.ran = true;
      st.kernel_dim = m.dim();
      st.defect_dim = *rep.defect_dim;
      st.kernel_dim_2n = m2.dim();
      st.defect_dim_2n = minimal_defect(m2, s.tolerances.rank).defect_dim;
      // Kernels of finite codimension grow with N; their codimension is what stabilizes.
      st.cofinite = st.kernel_dim != st.kernel_dim_2n && N - st.kernel_dim == n2 - st.kernel_dim_2n;
      st.agree = (st.kernel_dim == st.kernel_dim_2n || st.cofinite) && st.defect_dim == st.defect_dim_2n;
      if (!st.agree) rep.failures.push_back("kernel or defect dimension changes at 2N");
    }
  } catch (const DegenerateError& e) {
    rep.failures.push_back(e.what());
  } catch (const ConditioningError& e) {
    rep.failures.push_back(e.what());
  }

  rep.pass = rep.failures.empty();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json to_json(const ScenarioReport& r, bool timings) {
  json out = {{"id", r.id},
              {"anchor", r.anchor},
              {"truncation", r.truncation},
              {"tail_ratio", r.tail_ratio},
              {"headroom_violated", r.headroom_violated},
              {"kernel_dim", r.kernel_dim ? json(*r.kernel_dim) : json(nullptr)},
              {"singular_values", r.singular_values},
              {"defect_dim", r.defect_dim ? json(*r.defect_dim) : json(nullptr)},
              {"stabilization",
               {{"ran", r.stabilization.ran},
                {"kernel_dim", r.stabilization.kernel_dim},
                {"kernel_dim_2n", r.stabilization.kernel_dim_2n},
                {"defect_dim", r.stabilization.defect_dim},
                {"defect_dim_2n", r.stabilization.defect_dim_2n},
                {"compared", r.stabilization.cofinite ? "codimension" : "dimension"},
                {"agree", r.stabilization.agree}}},
              {"failures", r.failures},
              {"pass", r.pass}};
  if (r.defect) out["defect"] = to_json(*r.defect);
  if (r.cgp) out["cgp"] = to_json(*r.cgp);
  if (!r.extra.empty()) out["extra"] = r.extra;
  if (timings) out["seconds"] = r.seconds;
  return out;
}

bool SuiteReport::pass() const {
  return std::all_of(scenarios.begin(), scenarios.end(), [](const auto& s) { return s.pass; });
}

json to_json(const SuiteReport& r, bool timings) {
  json rows = json::array();
  for (const auto& s : r.scenarios) rows.push_back(to_json(s, timings));
  return {{"scenarios", rows}, {"pass", r.pass()}};
}

std::string format_table(const SuiteReport& r) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-46s %5s %6s %7s  %-6s %s\n", "scenario", "dimM", "defect", "N/2N",
                "result", "detail");
  out << line;
  int passed = 0;
  for (const auto& s : r.scenarios) {
    const std::string dk = s.kernel_dim ? std::to_string(*s.kernel_dim) : "-";
    const std::string dd = s.defect_dim ? std::to_string(*s.defect_dim) : "-";
    const std::string st = !s.stabilization.ran ? "-" : (s.stabilization.agree ? "same" : "DIFF");
    std::string detail = s.anchor;
    if (!s.failures.empty()) detail = s.failures.front();
    std::snprintf(line, sizeof line, "%-46s %5s %6s %7s  %-6s %s\n", s.id.c_str(), dk.c_str(), dd.c_str(),
                  st.c_str(), s.pass ? "pass" : "FAIL", detail.c_str());
    out << line;
    if (s.pass) ++passed;
  }
  out << passed << "/" << r.scenarios.size() << " scenarios passed: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace toepker
