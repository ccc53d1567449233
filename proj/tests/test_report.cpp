#include <catch2/catch_amalgamated.hpp>

#include <dvcalc/report.hpp>
#include <dvcalc/scenarios.hpp>

#include <sstream>
#include <string>
#include <vector>

using namespace dvcalc;

namespace {

ScenarioSpec spec_from(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario_spec(in);
}

}  // namespace

TEST_CASE("scenario spec parsing") {
  ScenarioSpec s = spec_from(
      "# comment\n"
      "anchor = a short description\n"
      "\n"
      "golden alpha [where it comes from] = 5/11\n"
      "golden beta [matrix rows] = 1 2 / 3 4\n");
  CHECK(s.anchor == "a short description");
  REQUIRE(s.goldens.size() == 2);
  CHECK(s.goldens[0].name == "alpha");
  CHECK(s.goldens[0].provenance == "where it comes from");
  CHECK(s.goldens[0].value == "5/11");
  CHECK(s.goldens[1].name == "beta");
  CHECK(s.goldens[1].value == "1 2 / 3 4");

  CHECK_THROWS_AS(spec_from("golden a [x] = 1\n"), std::invalid_argument);  // no anchor
  CHECK_THROWS_AS(spec_from("anchor = a\nanchor = b\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("anchor = a\ngolden x = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("anchor = a\ngolden x [p] =\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("anchor = a\ngolden [p] = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(
      spec_from("anchor = a\ngolden x [p] = 1\ngolden x [q] = 2\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(spec_from("anchor = a\nsomething else\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("anchor =\n"), std::invalid_argument);
}

TEST_CASE("report comparison against goldens") {
  ScenarioSpec s = spec_from(
      "anchor = toy\n"
      "golden a [src] = 1\n"
      "golden b [src] = 2\n");

  Report pass = make_report("toy", s, {{"a", "1"}, {"b", "2"}}, 7);
  CHECK(pass.passed());
  CHECK(pass.status == "pass");
  CHECK(pass.anchor == "toy");
  CHECK(pass.elapsed_ms == 7);
  REQUIRE(pass.values.size() == 2);
  CHECK(pass.values[0].name == "a");
  CHECK(pass.values[0].provenance == "src");
  CHECK(pass.notes.empty());

  Report mismatch = make_report("toy", s, {{"a", "1"}, {"b", "3"}}, 0);
  CHECK_FALSE(mismatch.passed());
  REQUIRE(mismatch.notes.size() == 1);
  CHECK(mismatch.notes[0] == "b: expected 2, got 3");

  Report missing = make_report("toy", s, {{"a", "1"}}, 0);
  CHECK(missing.status == "fail");
  CHECK(missing.notes[0] == "missing value: b");

  Report extra = make_report("toy", s, {{"a", "1"}, {"b", "2"}, {"c", "9"}}, 0);
  CHECK(extra.status == "fail");
  REQUIRE(extra.values.size() == 3);
  CHECK(extra.values[2].provenance == "unregistered");
}

TEST_CASE("text rendering") {
  ScenarioSpec s = spec_from("anchor = toy anchor\ngolden a [src] = 1\n");
  Report r = make_report("toy", s, {{"a", "1"}}, 3);
  CHECK(report_text(r) ==
        "scenario: toy\n"
        "anchor: toy anchor\n"
        "a = 1\n"
        "status: pass\n"
        "elapsed_ms: 3\n");

  Report bad = make_report("toy", s, {{"a", "2"}}, 3);
  std::string t = report_text(bad);
  CHECK(t.find("note: a: expected 1, got 2\n") != std::string::npos);
  CHECK(t.find("status: fail\n") != std::string::npos);
}

TEST_CASE("json rendering and schema") {
  ScenarioSpec s = spec_from("anchor = toy anchor\ngolden a [src] = 1\n");
  Report r = make_report("toy", s, {{"a", "1"}}, 3);
  nlohmann::json j = nlohmann::json::parse(report_json(r));
  REQUIRE(j.is_object());
  CHECK(j["scenario"] == "toy");
  CHECK(j["anchor"] == "toy anchor");
  CHECK(j["status"] == "pass");
  CHECK(j["elapsed_ms"] == 3);
  REQUIRE(j["values"].is_array());
  REQUIRE(j["values"].size() == 1);
  CHECK(j["values"][0]["name"] == "a");
  CHECK(j["values"][0]["value"] == "1");
  CHECK(j["values"][0]["provenance"] == "src");
  CHECK_FALSE(j.contains("notes"));

  // key order is part of the schema
  std::string dumped = report_json(r);
  CHECK(dumped.find("\"scenario\"") < dumped.find("\"anchor\""));
  CHECK(dumped.find("\"anchor\"") < dumped.find("\"values\""));
  CHECK(dumped.find("\"values\"") < dumped.find("\"status\""));
  CHECK(dumped.find("\"status\"") < dumped.find("\"elapsed_ms\""));

  // an empty report is still valid JSON with the full schema
  Report empty;
  empty.scenario = "none";
  empty.status = "pass";
  nlohmann::json je = nlohmann::json::parse(report_json(empty));
  CHECK(je["values"].is_array());
  CHECK(je["values"].empty());

  // failure notes are carried
  Report bad = make_report("toy", s, {{"a", "2"}}, 3);
  nlohmann::json jb = nlohmann::json::parse(report_json(bad));
  REQUIRE(jb.contains("notes"));
  CHECK(jb["notes"][0] == "a: expected 1, got 2");

  // merged rendering keeps the given order
  nlohmann::json arr = nlohmann::json::parse(reports_json({r, bad}));
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  CHECK(arr[0]["status"] == "pass");
  CHECK(arr[1]["status"] == "fail");
}

TEST_CASE("registry names and order") {
  std::vector<std::string> expected = {
      "divisor-degrees",  "schubert-gram", "vanishing-projection", "sigma443-lattice",
      "sigma722-lattice", "k3-normal",     "peskine",              "taut-check",
      "dv-divisor",       "plane-lattices", "nonrep",              "mukai",
      "dv28-constants",   "trivector-fixtures"};
  const std::vector<ScenarioDef>& reg = scenario_registry();
  REQUIRE(reg.size() == expected.size());
  for (std::size_t i = 0; i < reg.size(); ++i) CHECK(reg[i].name == expected[i]);
}

TEST_CASE("running fast scenarios against their goldens") {
  RunOptions opts;
  for (const std::string& name :
       {std::string("plane-lattices"), std::string("nonrep"), std::string("mukai"),
        std::string("dv28-constants"), std::string("k3-normal")}) {
    Report r = run_scenario(name, opts);
    INFO(name << ": " << (r.notes.empty() ? "" : r.notes[0]));
    CHECK(r.passed());
    CHECK_FALSE(r.anchor.empty());
    CHECK_FALSE(r.values.empty());
  }
  CHECK_THROWS_AS(run_scenario("no-such-scenario", opts), std::invalid_argument);

  RunOptions broken;
  broken.fixture_dir = "/nonexistent";
  CHECK_THROWS_AS(run_scenario("nonrep", broken), std::invalid_argument);
}

TEST_CASE("reports are deterministic given the options") {
  RunOptions opts;
  Report a = run_scenario("trivector-fixtures", opts);
  Report b = run_scenario("trivector-fixtures", opts);
  CHECK(a.passed());
  a.elapsed_ms = 0;
  b.elapsed_ms = 0;
  CHECK(report_json(a) == report_json(b));
  CHECK(report_text(a) == report_text(b));

  // a different seed draws different samples but the full-rank count stays
  RunOptions other = opts;
  other.seed = 7;
  Report c = run_scenario("trivector-fixtures", other);
  CHECK(c.passed());
}

TEST_CASE("scenario fixture files parse cleanly") {
  RunOptions opts;
  for (const ScenarioDef& d : scenario_registry()) {
    ScenarioSpec s = parse_scenario_spec_file(opts.fixture_dir + "/scenarios/" + d.name + ".txt");
    CHECK_FALSE(s.anchor.empty());
    CHECK_FALSE(s.goldens.empty());
    for (const GoldenEntry& g : s.goldens) {
      CHECK_FALSE(g.provenance.empty());
      CHECK_FALSE(g.value.empty());
    }
  }
}
