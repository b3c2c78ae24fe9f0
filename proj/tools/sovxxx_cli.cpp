#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sovxxx/cli_harness.hpp"

namespace {

const std::map<std::string, std::vector<std::string>> kCommandSuites = {
    {"spectrum", {"oracle", "spectrum"}},
    {"verify-identities", {"identities"}},
    {"scalar-products", {"scalar-products"}},
    {"form-factors", {"form-factors"}},
    {"aba-check", {"aba-check"}},
    {"all", sov::all_suites()},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SoV checks for the antiperiodic XXX chain"};
  app.require_subcommand(1, 1);

  sov::RunConfig cfg;
  std::vector<std::string> tol_specs;
  std::vector<std::string> suites;
  std::string out_path;
  std::string format = "json";

  std::vector<CLI::App*> subs;
  for (const auto& [name, s] : kCommandSuites) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " checks");
    sub->add_option("--n", cfg.n_sites, "number of sites (1..8)")->default_val(2);
    sub->add_option("--seed", cfg.seed, "RNG seed")->default_val(1);
    sub->add_option("--margin", cfg.margin, "genericity margin (default from eta)");
    sub->add_flag("--fixture", cfg.fixture, "eta = 1, xi = 0, 2, 4, ... instead of a random draw");
    sub->add_option("--tol", tol_specs, "tolerance override <suite>=<value>");
    sub->add_option("--suites", suites, "explicit suite list (overrides the subcommand default)");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string cmd = app.get_subcommands().front()->get_name();
  cfg.suites = suites.empty() ? kCommandSuites.at(cmd) : suites;
  for (const auto& spec : tol_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --tol value: " << spec << "\n";
      return 2;
    }
    try {
      cfg.tolerances[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "bad --tol value: " << spec << "\n";
      return 2;
    }
  }

  sov::Report report;
  try {
    report = sov::run(cfg);
  } catch (const sov::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::string text = format == "csv" ? sov::report_to_csv(report) : sov::report_to_json(report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot open " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  for (const auto& r : report.rows)
    if (!r.pass && !r.diagnostic) {
      std::cerr << "FAIL " << r.key() << " rel_err=" << r.rel_err << " tol=" << r.tol << "\n";
    }
  for (const auto& n : report.notes)
    if (n.status == "aborted") std::cerr << "ABORTED " << n.suite << ": " << n.reason << "\n";
  return report.all_pass() ? 0 : 1;
}
