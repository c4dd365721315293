#include "toepker/serialize.hpp"

#include <string>

#include "toepker/errors.hpp"

namespace toepker {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("schema: missing field \"") + key + "\"");
  }
  return j.at(key);
}

int int_field(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw InputError(std::string("schema: \"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

json vector_to_json(const CVector& c) {
  json out = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(to_json(c(i)));
  return out;
}

json doubles(const std::vector<double>& v) { return json(v); }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("schema: complex numbers are [re, im] pairs, got " + j.dump());
}

json to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(to_json(c));
  return out;
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_array()) throw InputError("schema: polynomial must be an array of coefficients");
  Polynomial p;
  for (const auto& c : j) p.push_back(complex_from_json(c));
  return p;
}

json to_json(const AnalyticSeries& f) {
  return {{"truncation", f.truncation()}, {"coeffs", vector_to_json(f.coeffs())}};
}

AnalyticSeries analytic_from_json(const json& j) {
  const Polynomial p = polynomial_from_json(field(j, "coeffs"));
  const int n = int_field(j, "truncation", static_cast<int>(p.size()));
  if (n <= 0) throw InputError("schema: truncation must be positive");
  return AnalyticSeries::from_polynomial(p, n);
}

json to_json(const LaurentSeries& f) {
  return {{"truncation", f.truncation()},
          {"coeffs_from", -f.truncation()},
          {"coeffs", vector_to_json(f.coeffs())}};
}

LaurentSeries laurent_from_json(const json& j) {
  const Polynomial p = polynomial_from_json(field(j, "coeffs"));
  const int n = int_field(j, "truncation", 0);
  const int from = int_field(j, "coeffs_from", -n);
  if (n <= 0) throw InputError("schema: truncation must be positive");
  return LaurentSeries::from_coefficients(from, p, n);
}

json to_json(const BlaschkeProduct& b) {
  json zeros = json::array();
  for (const auto& z : b.zeros()) zeros.push_back({{"point", to_json(z.point)}, {"multiplicity", z.multiplicity}});
  return {{"zeros", zeros}, {"z_power", b.z_power()}, {"unimodular_const", to_json(b.unimodular_const())}};
}

BlaschkeProduct blaschke_from_json(const json& j) {
  if (!j.is_object()) throw InputError("schema: Blaschke product must be an object");
  std::vector<BlaschkeZero> zeros;
  if (j.contains("zeros")) {
    for (const auto& z : j.at("zeros")) {
      zeros.push_back({complex_from_json(field(z, "point")), int_field(z, "multiplicity", 1)});
    }
  }
  const cplx c = j.contains("unimodular_const") ? complex_from_json(j.at("unimodular_const")) : cplx(1.0);
  return BlaschkeProduct(std::move(zeros), int_field(j, "z_power", 0), c);
}

json to_json(const SymbolSpec& s) {
  return std::visit(
      overloaded{
          [](const ZeroSymbol&) -> json { return {{"kind", "zero"}}; },
          [](const TrigPolySymbol& t) -> json {
            return {{"kind", "trig_poly"}, {"lowest", t.lowest}, {"coeffs", to_json(t.coeffs)}};
          },
          [](const InnerSymbol& t) -> json { return {{"kind", "inner"}, {"theta", to_json(t.theta)}}; },
          [](const ConjInnerSymbol& t) -> json {
            return {{"kind", "conj_inner"}, {"theta", to_json(t.theta)}};
          },
          [](const InvertibleProductSymbol& t) -> json {
            return {{"kind", "invertible_product"}, {"f1", to_json(t.f1)}, {"f2", to_json(t.f2)}};
          },
      },
      s);
}

SymbolSpec symbol_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "zero") return ZeroSymbol{};
  if (kind == "trig_poly") {
    return TrigPolySymbol{int_field(j, "lowest", 0), polynomial_from_json(field(j, "coeffs"))};
  }
  if (kind == "inner") return InnerSymbol{blaschke_from_json(field(j, "theta"))};
  if (kind == "conj_inner") return ConjInnerSymbol{blaschke_from_json(field(j, "theta"))};
  if (kind == "invertible_product") {
    return make_invertible_product(polynomial_from_json(field(j, "f1")),
                                   polynomial_from_json(field(j, "f2")));
  }
  throw InputError("schema: unknown symbol kind \"" + kind + "\"");
}

json to_json(const PerturbationSpec& p) {
  json terms = json::array();
  for (const auto& t : p.terms) terms.push_back({{"u", to_json(t.u)}, {"v", to_json(t.v)}});
  return {{"rank", p.rank()}, {"terms", terms}};
}

json to_json(const Subspace& s, bool include_frame) {
  json out = {{"truncation", s.truncation()},
              {"dim", s.dim()},
              {"rank_tol", s.rank_tol},
              {"degenerate", s.degenerate},
              {"singular_values", doubles(s.singular_values)}};
  if (include_frame) {
    json frame = json::array();
    for (int j = 0; j < s.dim(); ++j) frame.push_back(to_json(s.column(j)));
    out["frame"] = frame;
  }
  return out;
}

json to_json(const DefectReport& r) {
  return {{"defect_dim", r.defect_dim},
          {"residual_frame", to_json(r.residual_frame)},
          {"bound_from_theorem", optional_json(r.bound_from_theorem)},
          {"contained_in_theorem_F", optional_json(r.contained_in_theorem_F)},
          {"max_residual_outside_F", r.max_residual_outside_F}};
}

json to_json(const DefectTheoremReport& r) {
  json entries = json::array();
  for (const auto& e : r.witness.entries) {
    entries.push_back({{"w", to_json(e.w)},
                       {"membership_residual", e.membership_residual},
                       {"w_in_F_residual", e.w_in_F_residual}});
  }
  return {{"case", r.case_name},
          {"kernel_dim", r.kernel_dim},
          {"kernel_singular_values", doubles(r.kernel_singular_values)},
          {"defect", to_json(r.defect)},
          {"theorem_F_dim", r.theorem_F_dim},
          {"lambda", r.lambda},
          {"witness",
           {{"entries", entries},
            {"max_membership_residual", r.witness.max_membership_residual},
            {"max_w_in_F_residual", r.witness.max_w_in_F_residual}}},
          {"bound_ok", r.bound_ok},
          {"residual_in_F_ok", r.residual_in_F_ok},
          {"witness_ok", r.witness_ok},
          {"witness_locality_ok", r.witness_locality_ok},
          {"tail_ratio", r.tail_ratio},
          {"pass", r.pass}};
}

json to_json(const RepresentationReport& r) {
  return {{"case", r.case_tag},
          {"branch", r.branch},
          {"system", r.system},
          {"notes", r.notes},
          {"kernel_dim", r.kernel_dim},
          {"inner_truncation", r.inner_truncation},
          {"k_dim", r.k_dim},
          {"sample_count", r.sample_count},
          {"reverse_basis_dim", r.reverse_basis_dim},
          {"f0_residual", r.f0_residual},
          {"kernel_formula_angle", optional_json(r.kernel_formula_angle)},
          {"reverse_max_residual", r.reverse_max_residual},
          {"forward_max_residual", r.forward_max_residual},
          {"backshift_max_violation", r.backshift_max_violation},
          {"constraint_max_violation", r.constraint_max_violation},
          {"norm_identity_max_error", optional_json(r.norm_identity_max_error)},
          {"dimension_audit_angle", optional_json(r.dimension_audit_angle)},
          {"oracle_k_dim", optional_json(r.oracle_k_dim)},
          {"oracle_agreement", optional_json(r.oracle_agreement)},
          {"oracle_reverse_residual", optional_json(r.oracle_reverse_residual)},
          {"corollary_agreement", optional_json(r.corollary_agreement)},
          {"failing_clause", r.failing_clause},
          {"pass", r.pass}};
}

}  // namespace toepker
