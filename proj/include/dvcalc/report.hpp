#pragma once

// Scenario reports.  A scenario computes an ordered list of named values,
// serialized as exact strings; the report compares them verbatim against the
// golden entries stored in a fixture file and renders the outcome as plain
// text or JSON.  Rendering is deterministic: the only field that varies
// between runs is elapsed_ms.

#include <dvcalc/rational.hpp>

#include <json.hpp>

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dvcalc {

struct ReportValue {
  std::string name;
  std::string value;
  std::string provenance;
};

struct Report {
  std::string scenario;
  std::string anchor;
  std::vector<ReportValue> values;
  std::string status;  // "pass", "fail", "timeout" or "error"
  long long elapsed_ms = 0;
  std::vector<std::string> notes;  // mismatch and error details

  bool passed() const { return status == "pass"; }
};

struct GoldenEntry {
  std::string name;
  std::string provenance;
  std::string value;
};

// Contents of one scenario fixture file: a one-line anchor describing the
// object being computed, and the golden values with their provenance labels.
struct ScenarioSpec {
  std::string anchor;
  std::vector<GoldenEntry> goldens;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// Fixture format, one directive per line:
//   # comment
//   anchor = <free text>
//   golden <name> [<provenance>] = <value>
// Values are taken verbatim (trimmed), so vectors and matrices keep their
// canonical spacing.
inline ScenarioSpec parse_scenario_spec(std::istream& in) {
  ScenarioSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::ostringstream where;
    where << "scenario spec line " << lineno;
    if (t.rfind("anchor", 0) == 0) {
      std::size_t eq = t.find('=');
      if (eq == std::string::npos || detail::trim(t.substr(6, eq - 6)) != "")
        throw std::invalid_argument(where.str() + ": malformed anchor line");
      if (!spec.anchor.empty())
        throw std::invalid_argument(where.str() + ": duplicate anchor");
      spec.anchor = detail::trim(t.substr(eq + 1));
      if (spec.anchor.empty())
        throw std::invalid_argument(where.str() + ": empty anchor");
      continue;
    }
    if (t.rfind("golden ", 0) == 0) {
      std::size_t lb = t.find('[');
      std::size_t rb = t.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::invalid_argument(where.str() + ": missing provenance label");
      GoldenEntry e;
      e.name = detail::trim(t.substr(7, lb - 7));
      e.provenance = detail::trim(t.substr(lb + 1, rb - lb - 1));
      std::size_t eq = t.find('=', rb);
      if (e.name.empty() || e.provenance.empty() || eq == std::string::npos)
        throw std::invalid_argument(where.str() + ": malformed golden line");
      e.value = detail::trim(t.substr(eq + 1));
      if (e.value.empty())
        throw std::invalid_argument(where.str() + ": empty golden value");
      for (const GoldenEntry& prev : spec.goldens)
        if (prev.name == e.name)
          throw std::invalid_argument(where.str() + ": duplicate golden " + e.name);
      spec.goldens.push_back(std::move(e));
      continue;
    }
    throw std::invalid_argument(where.str() + ": unrecognized directive");
  }
  if (spec.anchor.empty())
    throw std::invalid_argument("scenario spec: anchor line is required");
  return spec;
}

inline ScenarioSpec parse_scenario_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario spec: " + path);
  return parse_scenario_spec(in);
}

// Compare computed values against the goldens.  Both directions are strict:
// a golden without a computed value, a computed value without a golden, or
// any string mismatch fails the report.  Values are listed in golden order;
// unexpected extras are appended.
inline Report make_report(const std::string& scenario, const ScenarioSpec& spec,
                          const std::vector<std::pair<std::string, std::string>>& computed,
                          long long elapsed_ms) {
  Report r;
  r.scenario = scenario;
  r.anchor = spec.anchor;
  r.elapsed_ms = elapsed_ms;
  bool ok = true;
  for (const GoldenEntry& g : spec.goldens) {
    const std::pair<std::string, std::string>* found = nullptr;
    for (const auto& c : computed)
      if (c.first == g.name) {
        found = &c;
        break;
      }
    if (!found) {
      ok = false;
      r.notes.push_back("missing value: " + g.name);
      continue;
    }
    r.values.push_back({g.name, found->second, g.provenance});
    if (found->second != g.value) {
      ok = false;
      r.notes.push_back(g.name + ": expected " + g.value + ", got " + found->second);
    }
  }
  for (const auto& c : computed) {
    bool known = false;
    for (const GoldenEntry& g : spec.goldens) known = known || g.name == c.first;
    if (!known) {
      ok = false;
      r.values.push_back({c.first, c.second, "unregistered"});
      r.notes.push_back("unregistered value: " + c.first);
    }
  }
  r.status = ok ? "pass" : "fail";
  return r;
}

inline std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "scenario: " << r.scenario << "\n";
  out << "anchor: " << r.anchor << "\n";
  for (const ReportValue& v : r.values) out << v.name << " = " << v.value << "\n";
  for (const std::string& n : r.notes) out << "note: " << n << "\n";
  out << "status: " << r.status << "\n";
  out << "elapsed_ms: " << r.elapsed_ms << "\n";
  return out.str();
}

inline nlohmann::ordered_json report_json_object(const Report& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["anchor"] = r.anchor;
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (const ReportValue& v : r.values) {
    nlohmann::ordered_json e;
    e["name"] = v.name;
    e["value"] = v.value;
    e["provenance"] = v.provenance;
    vals.push_back(std::move(e));
  }
  j["values"] = std::move(vals);
  j["status"] = r.status;
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline std::string report_json(const Report& r) { return report_json_object(r).dump(2) + "\n"; }

// Merged rendering, reports in the order given (registration order for "all").
inline std::string reports_text(const std::vector<Report>& rs) {
  std::string out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) out += "\n";
    out += report_text(rs[i]);
  }
  return out;
}

inline std::string reports_json(const std::vector<Report>& rs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Report& r : rs) arr.push_back(report_json_object(r));
  return arr.dump(2) + "\n";
}

}  // namespace dvcalc
