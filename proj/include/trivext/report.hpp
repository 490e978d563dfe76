#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trivext/resolution.hpp"
#include "trivext/scenarios.hpp"
#include "trivext/trivial_ext.hpp"

namespace trivext {

using ordered_json = nlohmann::ordered_json;

// Machine-readable result document with stable key ordering. Exit codes are
// a function of the content: any failed check -> 1, otherwise a recorded
// discrepancy -> 3, otherwise 0 (usage and parse errors exit 2 before a
// document is produced).
struct ReportDocument {
  std::string schema_version = "1.0";
  ordered_json invocation = ordered_json::object();
  std::vector<ordered_json> payloads;

  std::string overall_status() const;
  int exit_code() const;
  ordered_json to_json() const;
  std::string to_markdown() const;
};

ordered_json descriptor_json(const RingDescriptor& d);
ordered_json verdict_json(const PdVerdict& v);

ordered_json scenario_payload(const ScenarioReport& r);
ordered_json resolution_payload(const Resolution& r, bool verbose);
ordered_json pd_payload(const RingDescriptor& ring, const std::string& module_text,
                        const PdVerdict& v);
ordered_json gldim_payload(const RingPtr& R, const GlobalDimReport& g);
ordered_json ideals_payload(const RingPtr& R, const std::vector<IdealProbeReport>& census,
                            bool verbose);
ordered_json parse_payload(const std::string& text, const RingDescriptor& d);

// Validates a document against the subset of JSON Schema used by
// schema/report.schema.json (type, enum, required, properties, items,
// additionalProperties, anyOf).
bool validate_against_schema(const ordered_json& schema, const ordered_json& doc,
                             std::string* error);

}  // namespace trivext
