#pragma once

// JSON wire format. Complex numbers are [re, im] pairs.

#include <json.hpp>

#include "toepker/cgp.hpp"
#include "toepker/operators.hpp"
#include "toepker/subspaces.hpp"
#include "toepker/theorems.hpp"

namespace toepker {

using json = nlohmann::json;

json to_json(cplx z);
/// Accepts [re, im] or a plain number.
cplx complex_from_json(const json& j);

json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

json to_json(const AnalyticSeries& f);
AnalyticSeries analytic_from_json(const json& j);
json to_json(const LaurentSeries& f);
LaurentSeries laurent_from_json(const json& j);

json to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const json& j);

json to_json(const SymbolSpec& s);
SymbolSpec symbol_from_json(const json& j);

json to_json(const PerturbationSpec& p);

json to_json(const Subspace& s, bool include_frame = true);
json to_json(const DefectReport& r);
json to_json(const DefectTheoremReport& r);
json to_json(const RepresentationReport& r);

}  // namespace toepker
