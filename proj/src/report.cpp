#include "trivext/report.hpp"

#include <sstream>

namespace trivext {

namespace {

const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass: return "pass";
    case CheckResult::Status::Fail: return "fail";
    case CheckResult::Status::RecordedDiscrepancy: return "recorded-discrepancy";
  }
  return "?";
}

std::string scenario_status(const ScenarioReport& r) {
  if (r.has_failure()) return "fail";
  if (r.has_discrepancy()) return "discrepancy";
  return "pass";
}

}  // namespace

ordered_json descriptor_json(const RingDescriptor& d) {
  ordered_json j = ordered_json::object();
  switch (d.kind) {
    case RingDescriptor::Kind::ZMod:
      j["kind"] = "zmod";
      j["n"] = d.n;
      break;
    case RingDescriptor::Kind::PrimeField:
      j["kind"] = "prime-field";
      j["p"] = d.n;
      break;
    case RingDescriptor::Kind::PolyQuotient:
      j["kind"] = "poly-quotient";
      j["p"] = d.n;
      j["modulus"] = poly_to_string(d.poly);
      break;
    case RingDescriptor::Kind::SeriesTrunc:
      j["kind"] = "series-trunc";
      j["p"] = d.n;
      j["precision"] = d.trunc;
      break;
    case RingDescriptor::Kind::Product: {
      j["kind"] = "product";
      ordered_json fs = ordered_json::array();
      for (const auto& c : d.children) fs.push_back(descriptor_json(c));
      j["factors"] = std::move(fs);
      break;
    }
    case RingDescriptor::Kind::TrivialExt: {
      j["kind"] = "trivial-ext";
      j["base"] = descriptor_json(d.children[0]);
      ordered_json mod = ordered_json::object();
      mod["rank"] = d.mod.rank;
      ordered_json rels = ordered_json::array();
      for (const Enc& r : d.mod.rels)
        rels.push_back(render_module_rep(d.children[0],
                                         ModuleShape{d.mod.rank, {}}, r));
      mod["relations"] = std::move(rels);
      j["module"] = std::move(mod);
      break;
    }
    case RingDescriptor::Kind::Corner:
      j["kind"] = "corner";
      j["parent"] = descriptor_json(d.children[0]);
      j["idempotent"] = d.children[0].render_elem(d.idem);
      break;
  }
  return j;
}

ordered_json verdict_json(const PdVerdict& v) {
  ordered_json j = ordered_json::object();
  switch (v.kind) {
    case PdVerdict::Kind::Finite:
      j["kind"] = "Finite";
      j["k"] = v.k;
      break;
    case PdVerdict::Kind::CertifiedInfinite:
      j["kind"] = "CertifiedInfinite";
      j["reason"] = v.reason;
      if (v.periodic) {
        ordered_json p = ordered_json::object();
        p["offset"] = v.periodic->offset;
        p["period"] = v.periodic->period;
        j["periodic"] = std::move(p);
      }
      break;
    case PdVerdict::Kind::Unknown:
      j["kind"] = "Unknown";
      j["lower_bound"] = v.lower_bound;
      break;
  }
  return j;
}

ordered_json scenario_payload(const ScenarioReport& r) {
  ordered_json j = ordered_json::object();
  j["kind"] = "scenario";
  j["scenario"] = r.scenario_id;
  ordered_json inst = ordered_json::object();
  for (const auto& [k, v] : r.instance) inst[k] = v;
  j["instance"] = std::move(inst);
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj = ordered_json::object();
    cj["name"] = c.name;
    cj["verifies"] = c.verifies;
    cj["status"] = status_name(c.status);
    cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["timing_ms"] = r.elapsed_ms;
  j["status"] = scenario_status(r);
  return j;
}

ordered_json resolution_payload(const Resolution& r, bool verbose) {
  ordered_json j = ordered_json::object();
  j["kind"] = "resolution";
  j["ring"] = r.module.ring->desc().to_string();
  j["betti"] = r.betti;
  j["terminated"] = r.terminated;
  j["minimal"] = r.minimal;
  j["depth_reached"] = r.depth_reached;
  if (verbose) {
    ordered_json steps = ordered_json::array();
    for (const auto& d : r.steps) {
      ordered_json rows = ordered_json::array();
      for (int64_t i = 0; i < d.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (int64_t c = 0; c < d.cols; ++c) row.push_back(d.at(i, c).str());
        rows.push_back(std::move(row));
      }
      steps.push_back(std::move(rows));
    }
    j["differentials"] = std::move(steps);
  }
  j["status"] = "pass";
  return j;
}

ordered_json pd_payload(const RingDescriptor& ring, const std::string& module_text,
                        const PdVerdict& v) {
  ordered_json j = ordered_json::object();
  j["kind"] = "pd";
  j["ring"] = ring.to_string();
  j["module"] = module_text;
  j["verdict"] = verdict_json(v);
  j["status"] = "pass";
  return j;
}

ordered_json gldim_payload(const RingPtr& R, const GlobalDimReport& g) {
  ordered_json j = ordered_json::object();
  j["kind"] = "gldim";
  j["ring"] = R->desc().to_string();
  j["verdict"] = verdict_json(g.verdict);
  ordered_json fs = ordered_json::array();
  for (const auto& f : g.factors) {
    ordered_json fj = ordered_json::object();
    fj["factor"] = f.factor.to_string();
    fj["idempotent"] = R->desc().render_elem(f.idempotent);
    fj["cardinality"] = f.cardinality;
    fj["is_field"] = f.is_field;
    fj["residue_pd"] = verdict_json(f.residue_pd);
    fs.push_back(std::move(fj));
  }
  j["factors"] = std::move(fs);
  j["status"] = "pass";
  return j;
}

ordered_json ideals_payload(const RingPtr& R, const std::vector<IdealProbeReport>& census,
                            bool verbose) {
  ordered_json j = ordered_json::object();
  j["kind"] = "ideal-census";
  j["ring"] = R->desc().to_string();
  j["count"] = census.size();
  bool discrepancy = false;
  ordered_json ideals = ordered_json::array();
  for (const auto& ip : census) {
    ordered_json ij = ordered_json::object();
    ij["size"] = ip.ideal_elements.size();
    ordered_json gens = ordered_json::array();
    for (const Enc& g : ip.gens) gens.push_back(R->render(g));
    ij["generators"] = std::move(gens);
    if (ip.has_pair_form.has_value()) {
      ij["pair_form"] = *ip.has_pair_form;
      if (!*ip.has_pair_form) discrepancy = true;
      if (ip.pair) {
        ordered_json pj = ordered_json::object();
        ordered_json bg = ordered_json::array();
        const auto* TR = dynamic_cast<const TrivialExtRing*>(R.get());
        for (const Enc& g : ip.pair->base_ideal_gens)
          bg.push_back(TR->base()->render(g));
        pj["base_ideal_gens"] = std::move(bg);
        ordered_json sg = ordered_json::array();
        for (const Enc& g : ip.pair->submodule_gens)
          sg.push_back(render_module_rep(TR->base()->desc(), TR->ext().shape(), g));
        pj["submodule_gens"] = std::move(sg);
        ij["pair"] = std::move(pj);
      }
      if (ip.counterexample) ij["counterexample"] = R->render(*ip.counterexample);
    } else {
      ij["pair_form"] = nullptr;
    }
    if (verbose) {
      ordered_json els = ordered_json::array();
      for (const Enc& e : ip.ideal_elements) els.push_back(R->render(e));
      ij["elements"] = std::move(els);
    }
    ideals.push_back(std::move(ij));
  }
  j["ideals"] = std::move(ideals);
  j["status"] = discrepancy ? "discrepancy" : "pass";
  return j;
}

ordered_json parse_payload(const std::string& text, const RingDescriptor& d) {
  ordered_json j = ordered_json::object();
  j["kind"] = "ast";
  j["input"] = text;
  j["canonical"] = d.to_string();
  j["ast"] = descriptor_json(d);
  j["status"] = "pass";
  return j;
}

std::string ReportDocument::overall_status() const {
  bool discrepancy = false;
  for (const auto& p : payloads) {
    auto it = p.find("status");
    if (it == p.end()) continue;
    if (*it == "fail") return "fail";
    if (*it == "discrepancy") discrepancy = true;
  }
  return discrepancy ? "discrepancy" : "pass";
}

int ReportDocument::exit_code() const {
  std::string s = overall_status();
  if (s == "fail") return 1;
  if (s == "discrepancy") return 3;
  return 0;
}

ordered_json ReportDocument::to_json() const {
  ordered_json j = ordered_json::object();
  j["schema_version"] = schema_version;
  j["invocation"] = invocation;
  j["payloads"] = payloads;
  j["overall_status"] = overall_status();
  return j;
}

namespace {

std::string md_cell(std::string s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '|') {
      s.insert(i, "\\");
      ++i;
    }
  }
  return s;
}

}  // namespace

std::string ReportDocument::to_markdown() const {
  std::ostringstream os;
  os << "# report\n\n";
  os << "- schema_version: " << schema_version << "\n";
  os << "- overall_status: **" << overall_status() << "**\n\n";
  for (const auto& p : payloads) {
    std::string kind = p.value("kind", "?");
    os << "## " << kind << "\n\n";
    if (kind == "scenario") {
      os << "- scenario: " << p.value("scenario", "") << "\n";
      for (auto& [k, v] : p.at("instance").items())
        os << "- " << k << ": " << v.get<std::string>() << "\n";
      os << "\n| check | status | witness |\n|---|---|---|\n";
      for (const auto& c : p.at("checks"))
        os << "| " << md_cell(c.value("name", "")) << " | " << c.value("status", "")
           << " | " << md_cell(c.value("witness", "")) << " |\n";
      os << "\n";
    } else {
      for (auto& [k, v] : p.items()) {
        if (k == "kind") continue;
        os << "- " << k << ": " << v.dump() << "\n";
      }
      os << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON-schema subset validator

namespace {

bool type_matches(const std::string& ty, const ordered_json& v) {
  if (ty == "object") return v.is_object();
  if (ty == "array") return v.is_array();
  if (ty == "string") return v.is_string();
  if (ty == "integer") return v.is_number_integer();
  if (ty == "number") return v.is_number();
  if (ty == "boolean") return v.is_boolean();
  if (ty == "null") return v.is_null();
  return false;
}

bool validate_node(const ordered_json& schema, const ordered_json& doc, std::string path,
                   std::string* error) {
  if (schema.contains("anyOf")) {
    for (const auto& sub : schema.at("anyOf")) {
      std::string e;
      if (validate_node(sub, doc, path, &e)) return true;
    }
    if (error) *error = path + ": no anyOf branch matched";
    return false;
  }
  if (schema.contains("enum")) {
    for (const auto& v : schema.at("enum"))
      if (v == doc) return true;
    if (error) *error = path + ": value not in enum";
    return false;
  }
  if (schema.contains("type")) {
    const auto& ty = schema.at("type");
    bool ok = false;
    if (ty.is_array()) {
      for (const auto& t : ty) ok = ok || type_matches(t.get<std::string>(), doc);
    } else {
      ok = type_matches(ty.get<std::string>(), doc);
    }
    if (!ok) {
      if (error) *error = path + ": wrong type (" + ty.dump() + ")";
      return false;
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema.at("required")) {
        if (!doc.contains(r.get<std::string>())) {
          if (error) *error = path + ": missing required key " + r.get<std::string>();
          return false;
        }
      }
    }
    const ordered_json* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    for (auto& [k, v] : doc.items()) {
      if (props && props->contains(k)) {
        if (!validate_node(props->at(k), v, path + "." + k, error)) return false;
      } else if (schema.contains("additionalProperties")) {
        const auto& ap = schema.at("additionalProperties");
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) {
            if (error) *error = path + ": unexpected key " + k;
            return false;
          }
        } else if (!validate_node(ap, v, path + "." + k, error)) {
          return false;
        }
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    size_t i = 0;
    for (const auto& item : doc) {
      if (!validate_node(schema.at("items"), item, path + "[" + std::to_string(i) + "]",
                         error))
        return false;
      ++i;
    }
  }
  return true;
}

}  // namespace

bool validate_against_schema(const ordered_json& schema, const ordered_json& doc,
                             std::string* error) {
  return validate_node(schema, doc, "$", error);
}

}  // namespace trivext
