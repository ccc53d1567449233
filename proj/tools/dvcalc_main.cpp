// Command-line runner for the scenario suite.  One subcommand per scenario
// plus "all"; reports go to stdout as text or JSON and the exit status is 0
// exactly when every executed scenario passed against its goldens.

#include <dvcalc/scenarios.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

const std::map<std::string, std::string>& scenario_blurbs() {
  static const std::map<std::string, std::string> m = {
      {"divisor-degrees", "degrees of the three invariant trivector divisors"},
      {"schubert-gram", "degree-10 Schubert intersection matrix on Gr(3,10)"},
      {"vanishing-projection", "dual class of sigma_433 and its self-intersection"},
      {"sigma443-lattice", "rank-11 overlattice bordered by a square-3 class"},
      {"sigma722-lattice", "rank-11 overlattice bordered by a square-2 class"},
      {"k3-normal", "top Chern number of the rank-10 normal bundle on Gr(2,7)"},
      {"peskine", "intersection numbers of the Peskine sixfold"},
      {"taut-check", "tautological restrictions on the degree-6 K3 model"},
      {"dv-divisor", "divisor intersection numbers and the recovered BBF Gram"},
      {"plane-lattices", "plane-class lattices, gluings and discriminants"},
      {"nonrep", "quadratic nonrepresentability mod 25 and mod 49"},
      {"mukai", "B-field normal forms, twisted embedding index and witness"},
      {"dv28-constants", "formal constants of the square-28 divisor classes"},
      {"trivector-fixtures", "plane configurations and skew contraction ranks"},
  };
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dvcalc;

  CLI::App app{"exact-arithmetic scenario suite"};
  app.fallthrough();

  std::string format = "text";
  RunOptions opts;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "seed for the sampling scenario")->capture_default_str();
  app.add_option("--fixture", opts.fixture_dir, "fixture directory")->capture_default_str();
  app.add_option("--timeout", opts.timeout_seconds,
                 "soft per-scenario budget in seconds (0 disables)");
  app.require_subcommand(1);

  std::string chosen;
  for (const ScenarioDef& d : scenario_registry()) {
    CLI::App* sub = app.add_subcommand(d.name, scenario_blurbs().at(d.name));
    sub->fallthrough();
    sub->callback([&chosen, name = d.name] { chosen = name; });
  }
  CLI::App* all_cmd = app.add_subcommand("all", "every scenario, in registration order");
  all_cmd->fallthrough();
  all_cmd->callback([&chosen] { chosen = "all"; });

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<Report> reports;
    if (chosen == "all")
      reports = run_all(opts);
    else
      reports.push_back(run_scenario(chosen, opts));

    std::string rendered;
    if (format == "json")
      rendered = chosen == "all" ? reports_json(reports) : report_json(reports[0]);
    else
      rendered = reports_text(reports);
    std::fputs(rendered.c_str(), stdout);

    for (const Report& r : reports)
      if (!r.passed()) return 1;
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
