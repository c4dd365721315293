#pragma once

// Built-in verification suite: one row per statement in scope.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toepker/scenario.hpp"

namespace toepker {

struct CatalogueRow {
  std::string id;
  std::string anchor;
  /// Scenario rows run through run_scenario (and are re-run at 2N).
  std::optional<Scenario> scenario;
  /// Additional checks on a scenario row; failures are appended to the report.
  std::function<void(const Scenario&, const RunOptions&, ScenarioReport&)> extra;
  /// Rows that are not scenarios.
  std::function<ScenarioReport(const RunOptions&)> custom;
};

std::vector<CatalogueRow> builtin_catalogue();
ScenarioReport run_row(const CatalogueRow& row, const RunOptions& opts = {});
SuiteReport run_catalogue(const RunOptions& opts = {});

// Closed-form instances shared with the tests.

/// Zero symbol with u = 1 (which = 1), u = z^k (2), normalized kernel at alpha (3),
/// u = (1 + z^k)/sqrt2 (4); v = z. Uses the matching closed-form K.
Scenario zero_symbol_example(int which, int k = 1, int truncation = 64, cplx alpha = 0.5);
/// conj(z^m) symbol, u = z^(m-1)/4 + u2 with u2 in z^m H^2 and |u| = 1, |v| = 1.
Scenario monomial_theta_example(int m, std::uint64_t seed, int truncation = kDefaultTruncation);

}  // namespace toepker
