#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sovxxx/chain_model.hpp"

namespace sov {

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"oracle",        "sov",          "spectrum",  "identities",
                                             "scalar-products", "form-factors", "aba-check", "homogeneous-stress",
                                             "hamiltonian"};
  return s;
}

struct RunConfig {
  int n_sites = 2;
  std::uint64_t seed = 1;
  double margin = -1.0;  // negative: derived from eta
  bool fixture = false;  // eta = 1, xi = 0, 2, 4, ...
  std::map<std::string, double> tolerances;  // suite -> tolerance override
  std::vector<std::string> suites = all_suites();
  int identity_instances = 100;
  int random_pairs = 50;
};

// throws Error(InvalidArgument)
void validate_config(const RunConfig& cfg);

struct ReportRow {
  std::string suite, name, formula;
  cplx value, reference;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool diagnostic = false;  // reported, not counted toward the exit status

  std::string key() const { return suite + "/" + name; }
};

struct SuiteNote {
  std::string suite;
  std::string status;  // "aborted" or "skipped"
  std::string reason;
};

struct Report {
  RunConfig config;
  ChainParams params;
  std::vector<ReportRow> rows;  // sorted by key
  std::vector<SuiteNote> notes;
  nlohmann::ordered_json summaries = nlohmann::ordered_json::object();

  bool all_pass() const;
  const ReportRow* find(const std::string& key) const;
};

ChainParams params_for(const RunConfig& cfg);
Report run(const RunConfig& cfg);

nlohmann::ordered_json params_to_json(const ChainParams& p);
ChainParams params_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json report_to_json(const Report& r);
std::string report_to_csv(const Report& r);

}  // namespace sov
