#include "doctest.h"
#include "sovxxx/cli_harness.hpp"

using namespace sov;

TEST_CASE("config validation") {
  RunConfig c;
  c.n_sites = 12;
  CHECK_THROWS_AS(validate_config(c), Error);
  c.n_sites = 2;
  c.tolerances["oracle"] = -1.0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c.tolerances.clear();
  c.suites = {"nope"};
  CHECK_THROWS_AS(validate_config(c), Error);
  c.suites = {"oracle"};
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("N = 1 fixture run passes and records the form-factor fixture") {
  RunConfig c;
  c.n_sites = 1;
  c.fixture = true;
  Report r = run(c);
  CHECK(r.all_pass());
  const ReportRow* row = r.find("form-factors/fixture_sigma_minus");
  REQUIRE(row != nullptr);
  CHECK(std::abs(row->value - cplx(-0.5)) < 1e-12);
  const ReportRow* printed = r.find("form-factors/fixture_sigma_z_printed_sign");
  REQUIRE(printed != nullptr);
  CHECK_FALSE(printed->pass);
  CHECK(printed->diagnostic);
}

TEST_CASE("reports are deterministic and sorted") {
  RunConfig c;
  c.n_sites = 3;
  c.seed = 4;
  c.suites = {"identities", "oracle"};
  c.identity_instances = 20;
  std::string a = report_to_json(run(c)).dump();
  std::string b = report_to_json(run(c)).dump();
  CHECK(a == b);
  Report r = run(c);
  for (size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i - 1].key() <= r.rows[i].key());
  CHECK(r.all_pass());
  std::string csv = report_to_csv(r);
  CHECK(csv.rfind("suite,name,formula", 0) == 0);
}

TEST_CASE("params serialization round trip") {
  ChainParams p = sample_generic_params(3, 2);
  ChainParams q = params_from_json(params_to_json(p));
  CHECK(q.n_sites == 3);
  for (int a = 0; a < 3; ++a) CHECK(q.xi[a] == p.xi[a]);
  CHECK(q.eta == p.eta);
}

TEST_CASE("tolerance override can force a failure") {
  RunConfig c;
  c.n_sites = 2;
  c.suites = {"oracle"};
  c.tolerances["oracle"] = 1e-300;
  Report r = run(c);
  CHECK_FALSE(r.all_pass());
}
