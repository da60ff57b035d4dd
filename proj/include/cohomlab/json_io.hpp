#pragma once

// JSON and CSV forms of groups, reports and verdicts.

#include <string>

#include "json.hpp"

#include "cohomlab/cohom.hpp"
#include "cohomlab/experiments.hpp"
#include "cohomlab/galoisdict.hpp"

namespace cohomlab {

using Json = nlohmann::ordered_json;

/// { "p": int, "n": int, "generators": [[[a,b],[c,d]], ...] }. Throws
/// InvalidInput for malformed documents or out-of-range entries,
/// NonInvertibleGenerator for singular generators, CapExceeded past cap.
MatGroup parse_group_spec(const Json& doc, std::size_t cap = default_closure_cap());

Json to_json(const Mat2& m);
Json to_json(const MatGroup& g);
Json to_json(const Submodule& s);
Json to_json(const CohomologyReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const ExperimentVerdict& v);

/// One row per check: experiment,description,expected,actual,ok.
std::string to_csv(const ExperimentVerdict& v);

}  // namespace cohomlab
