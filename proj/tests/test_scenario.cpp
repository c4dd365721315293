#include <string>

#include <doctest.h>

#include "toepker/catalogue.hpp"
#include "toepker/errors.hpp"
#include "toepker/scenario.hpp"
#include "toepker/serialize.hpp"

using namespace toepker;

namespace {

std::string fixture(const std::string& name) { return std::string(TOEPKER_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("series JSON round trip") {
  const auto f = AnalyticSeries::from_polynomial(Polynomial{1.0, cplx(0.5, -2.0), 0.0, 3.0}, 6);
  const json j = to_json(f);
  const auto g = analytic_from_json(j);
  CHECK(g.coeffs() == f.coeffs());
  const BlaschkeProduct b({{cplx(0.3, 0.1), 2}}, 1, cplx(0.0, 1.0));
  const json jb = to_json(b);
  const auto b2 = blaschke_from_json(jb);
  CHECK(b2.degree() == 3);
  CHECK(b2.zeros()[0].point == cplx(0.3, 0.1));
  CHECK(b2.unimodular_const() == cplx(0.0, 1.0));
}

TEST_CASE("scenario JSON round trip") {
  const Scenario s = zero_symbol_example(3);
  const Scenario t = scenario_from_json(to_json(s));
  CHECK(to_json(t).dump() == to_json(s).dump());
  CHECK(t.cgp_system == CgpSystem::ReproducingKernelU);
}

TEST_CASE("schema errors are input errors") {
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"truncation": 8})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"symbol": {"kind": "nope"}})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"symbol": {"kind": "zero"}, "checks": ["x"]})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"generate": {"rank": 1}})")), InputError);
  CHECK_THROWS_AS(load_scenarios(fixture("malformed.json")), InputError);
  CHECK_THROWS_AS(load_scenarios(fixture("missing.json")), InputError);
  CHECK_THROWS_AS(load_scenarios(fixture("bad_symbol.json")), NotInvertibleError);
}

TEST_CASE("headroom rule") {
  const auto s = load_scenarios(fixture("bad_headroom.json")).at(0);
  CHECK(s.max_input_degree() == 10);
  CHECK_THROWS_AS(s.check_headroom(16), HeadroomError);
  CHECK_NOTHROW(s.check_headroom(28));
  CHECK_THROWS_AS(run_scenario(s), HeadroomError);
  RunOptions o;
  o.truncation = 32;
  o.stabilize = false;
  CHECK(run_scenario(s, o).pass);
}

TEST_CASE("perturbation invariants surface as input errors") {
  const auto s = load_scenarios(fixture("bad_perturbation.json")).at(0);
  CHECK_THROWS_AS(run_scenario(s), PerturbationError);
}

TEST_CASE("scenario files run and stabilize") {
  for (const char* name : {"zero_unit.json", "generated_suite.json", "conj_inner_blaschke.json"}) {
    for (const auto& s : load_scenarios(fixture(name))) {
      CAPTURE(s.id);
      const auto rep = run_scenario(s);
      for (const auto& f : rep.failures) MESSAGE(f);
      CHECK(rep.pass);
      CHECK(rep.stabilization.ran);
      CHECK(rep.stabilization.agree);
      CHECK_FALSE(rep.headroom_violated);
    }
  }
}

TEST_CASE("the zero-symbol kernel is compared by codimension across N and 2N") {
  const auto rep = run_scenario(load_scenarios(fixture("zero_unit.json")).at(0));
  CHECK(rep.stabilization.cofinite);
  CHECK(rep.stabilization.kernel_dim == 63);
  CHECK(rep.stabilization.kernel_dim_2n == 127);
}

TEST_CASE("unmet expectations fail without throwing") {
  const auto rep = run_scenario(load_scenarios(fixture("wrong_expectation.json")).at(0));
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const auto s = load_scenarios(fixture("generated_suite.json")).at(3);
  const std::string a = to_json(run_scenario(s)).dump();
  const std::string b = to_json(run_scenario(s)).dump();
  CHECK(a == b);
  RunOptions o;
  o.seed = 99;
  CHECK(to_json(run_scenario(s, o)).dump() != a);
  CHECK(a.find("seconds") == std::string::npos);
}

TEST_CASE("generated instances are redrawn at 2N") {
  const auto s = load_scenarios(fixture("generated_suite.json")).at(1);
  const auto small = s.materialize(96);
  const auto big = s.materialize(192);
  CHECK(small.perturbation.rank() == big.perturbation.rank());
  CHECK(big.perturbation.terms[0].u.truncation() == 192);
}

TEST_CASE("summary table ends with a verdict") {
  SuiteReport suite;
  suite.scenarios.push_back(run_scenario(load_scenarios(fixture("zero_unit.json")).at(0)));
  suite.scenarios.push_back(run_scenario(load_scenarios(fixture("wrong_expectation.json")).at(0)));
  const std::string t = format_table(suite);
  CHECK(t.find("zero-unit-u") != std::string::npos);
  CHECK(t.find("1/2 scenarios passed: FAIL") != std::string::npos);
  CHECK_FALSE(suite.pass());
}

}
