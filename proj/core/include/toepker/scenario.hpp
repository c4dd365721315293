#pragma once

// Scenarios: symbolic inputs that can be materialized at any truncation,
// plus the checks to run on them.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "toepker/cgp.hpp"
#include "toepker/generators.hpp"
#include "toepker/serialize.hpp"

namespace toepker {

inline constexpr int kDefaultTruncation = 128;
/// Degree bound assumed for generated instances in the headroom rule.
inline constexpr int kGeneratedDegreeBound = 12;

/// A series given by a formula rather than by coefficients at a fixed N.
struct SeriesSource {
  struct Poly {
    Polynomial coeffs;
  };
  struct Kernel {
    cplx alpha;
    bool normalized = true;
  };
  struct BlaschkeTimesPoly {
    BlaschkeProduct theta;
    Polynomial poly;
  };
  std::variant<Poly, Kernel, BlaschkeTimesPoly> form;
  cplx scale = 1.0;
  bool normalize = false;

  static SeriesSource poly(Polynomial p, bool normalize = false);
  static SeriesSource kernel(cplx alpha, bool normalized = true);
  static SeriesSource blaschke_times(BlaschkeProduct theta, Polynomial p, bool normalize = false);

  /// Polynomial degree, or numerator plus denominator degree for rational forms.
  int rational_degree() const;
  AnalyticSeries materialize(int truncation) const;
};

json to_json(const SeriesSource& s);
SeriesSource series_source_from_json(const json& j);

struct GeneratedInstance {
  std::string kind;  // zero | inner | invertible_product | conj_inner
  int rank = 1;
  bool blaschke = false;
};

struct ExplicitInstance {
  SymbolSpec symbol = ZeroSymbol{};
  std::vector<std::pair<SeriesSource, SeriesSource>> terms;
};

enum class Check { Kernel, Defect, Witness, Cgp };

struct ScenarioTolerances {
  double rank = kRankTol;
  double membership = kMembershipTol;
  double constraint = kConstraintTol;
};

struct Scenario {
  std::string id;
  std::string anchor;
  int truncation = kDefaultTruncation;
  int inner_truncation = kDefaultInnerTruncation;
  ScenarioTolerances tolerances;
  std::variant<ExplicitInstance, GeneratedInstance> instance;
  std::set<Check> checks{Check::Kernel, Check::Defect, Check::Witness};
  std::uint64_t seed = 0;
  CgpSystem cgp_system = CgpSystem::Corollary;
  int binomial_power = 1;
  std::optional<int> expect_kernel_dim;
  /// Frame vectors (f0, v0, v1, v2, e1, ...) expected coefficientwise.
  std::map<std::string, SeriesSource> expect_vectors;
  double expect_tol = 1e-12;

  int max_input_degree() const;
  /// Throws HeadroomError unless N >= 2 * max degree + 8.
  void check_headroom(int truncation) const;
  /// Symbol and perturbation at truncation N; generated instances are redrawn from the seed.
  Instance materialize(int truncation) const;
};

std::string check_name(Check c);
Scenario scenario_from_json(const json& j);
json to_json(const Scenario& s);
/// A file holds one scenario or {"scenarios": [...]}.
std::vector<Scenario> load_scenarios(const std::string& path);

struct RunOptions {
  std::optional<int> truncation;
  std::optional<std::uint64_t> seed;
  bool stabilize = true;
  bool timings = false;
};

struct Stabilization {
  bool ran = false;
  int kernel_dim = 0;
  int kernel_dim_2n = 0;
  int defect_dim = 0;
  int defect_dim_2n = 0;
  /// Kernel dimension grew by exactly N: the codimension was compared instead.
  bool cofinite = false;
  bool agree = true;
};

struct ScenarioReport {
  std::string id;
  std::string anchor;
  int truncation = 0;
  double tail_ratio = 0.0;
  bool headroom_violated = false;
  std::optional<int> kernel_dim;
  std::vector<double> singular_values;
  std::optional<int> defect_dim;
  std::optional<DefectTheoremReport> defect;
  std::optional<RepresentationReport> cgp;
  json extra = json::object();
  Stabilization stabilization;
  std::vector<std::string> failures;
  bool pass = false;
  double seconds = 0.0;
};

ScenarioReport run_scenario(const Scenario& s, const RunOptions& opts = {});
json to_json(const ScenarioReport& r, bool timings = false);

struct SuiteReport {
  std::vector<ScenarioReport> scenarios;
  bool pass() const;
};
json to_json(const SuiteReport& r, bool timings = false);

/// Fixed-width table plus a one-line verdict.
std::string format_table(const SuiteReport& r);

}  // namespace toepker
