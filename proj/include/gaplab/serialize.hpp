#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gaplab/audit.hpp"
#include "gaplab/bounds.hpp"
#include "gaplab/cmi.hpp"
#include "gaplab/counterexample.hpp"
#include "gaplab/lemmacov.hpp"
#include "gaplab/rat.hpp"
#include "gaplab/setting.hpp"

namespace gaplab {

// Key order is part of the output contract (reports are diffed byte for
// byte in tests), hence the ordered flavor.
using Json = nlohmann::ordered_json;

// Exact value plus a reading aid: {"rat": "3/4", "dec": 0.75}.
Json rat_json(const Rat& x);

Json to_json(const BoundReport& r);
Json to_json(const CmiBoundReport& r);
Json to_json(const GapStats& st);
Json to_json(const CEReport& rep);
Json to_json(const CovCheck& c);
Json to_json(const NprimeResult& r);
Json to_json(const DpiAudit& d);
Json to_json(const CmiAnalysis& a);
Json to_json(const AuditResult& a);

// Settings roundtrip through JSON with every mass as an exact "num/den"
// string; from_json validates the result.
Json to_json(const LearningSetting& s);
LearningSetting setting_from_json(const Json& j);

// Envelope for CLI output: schema and library version plus the payload
// under its kind.
Json wrap_report(const std::string& kind, Json payload);

// One row per bound: boundName,lhs,rhs,slack,holds.
std::string csv_bounds(const std::vector<BoundReport>& reports);
std::string csv_bounds(const std::vector<CmiBoundReport>& reports);

}  // namespace gaplab
