#pragma once

#include <string>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

#include "wick/anomaly.hpp"
#include "wick/ward.hpp"
#include "wick/wick_engine.hpp"

namespace wick {

using Json = nlohmann::ordered_json;

/// GraphViz rendering: vertices are point labels, one edge per propagator
/// bundle with attributes kind, derivs, multiplicity.
std::string diagram_to_dot(const ContractionDiagram& d, const std::string& name);
Json diagram_to_json(const ContractionDiagram& d);
Json diagrams_to_json(const std::vector<ContractionDiagram>& ds);

inline constexpr const char* kReportSchemaVersion = "1.0";

Json ward_report_to_json(const MwiReport& rep);
std::string ward_report_to_text(const MwiReport& rep);

Json anomaly_verdict_to_json(const AnomalyVerdict& v);
Json table1_to_json(const std::vector<Table1Row>& rows);
Json case1_report_to_json(const Case1Report& rep);

}  // namespace wick
