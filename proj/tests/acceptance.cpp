// One pass/fail line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "sovxxx/cli_harness.hpp"

using namespace sov;

namespace {

struct Outcome {
  bool pass = true;
  int rows = 0;
  std::string worst_key;
  double worst_rel = 0.0;
  double seconds = 0.0;
  std::vector<std::string> failures;
};

void absorb(Outcome& o, const Report& r) {
  for (const auto& row : r.rows) {
    if (row.diagnostic) continue;
    ++o.rows;
    if (row.rel_err > o.worst_rel && row.tol > 0.0) {
      o.worst_rel = row.rel_err;
      o.worst_key = row.key() + " (N=" + std::to_string(r.config.n_sites) + ")";
    }
    if (!row.pass) {
      o.pass = false;
      o.failures.push_back(row.key() + " N=" + std::to_string(r.config.n_sites));
    }
  }
  for (const auto& n : r.notes)
    if (n.status == "aborted") {
      o.pass = false;
      o.failures.push_back(n.suite + " aborted: " + n.reason);
    }
}

Outcome sweep(const std::string& suite, int n_lo, int n_hi, std::uint64_t seed = 1, bool fixture = false) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (int n = n_lo; n <= n_hi; ++n) {
    RunConfig c;
    c.n_sites = n;
    c.seed = seed;
    c.fixture = fixture;
    c.suites = {suite};
    absorb(o, run(c));
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

int failures = 0;

void line(int k, bool pass, const std::string& what, const Outcome& o) {
  if (!pass) ++failures;
  std::printf("[PRIMARY] criterion %2d: %s  %s  (%d checks, worst %s rel=%.2e, %.2fs)\n", k, pass ? "PASS" : "FAIL",
              what.c_str(), o.rows, o.worst_key.empty() ? "-" : o.worst_key.c_str(), o.worst_rel, o.seconds);
  for (const auto& f : o.failures) std::printf("      failed: %s\n", f.c_str());
}

void diagnostic(const Report& r, const std::string& key) {
  const ReportRow* row = r.find(key);
  if (!row) return;
  std::printf("    diagnostic %s (N=%d): rel=%.3e -> %s\n", key.c_str(), r.config.n_sites, row->rel_err,
              row->pass ? "holds" : "does not hold");
}

}  // namespace

int main() {
  // 1: N = 1 hand fixtures
  {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    RunConfig c;
    c.n_sites = 1;
    c.fixture = true;
    Report r = run(c);
    absorb(o, r);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int fixtures = 0;
    for (const auto& row : r.rows)
      if (row.name.rfind("fixture_", 0) == 0 && !row.diagnostic) ++fixtures;
    line(1, o.pass && fixtures >= 12 && o.seconds < 1.0,
         "N=1 fixture: spectrum, Q, <1|1>, Gaudin norms, sigma^-/+/z form factors", o);
    diagnostic(r, "form-factors/fixture_sigma_z_printed_sign");
  }

  Outcome o2 = sweep("oracle", 1, 5);
  line(2, o2.pass && o2.seconds < 30.0, "dense oracle gates N<=5: commutativity, qdet, x-symmetries, similarity", o2);

  Outcome o3 = sweep("sov", 1, 5);
  line(3, o3.pass, "SoV basis N<=5: D-eigenrelations, Gram matrix, identity decomposition", o3);

  Outcome o4 = sweep("spectrum", 1, 6);
  line(4, o4.pass, "spectrum completeness N<=6: T-Q, Bethe, Q uniqueness, pairing, Wronskian", o4);

  Outcome o5 = sweep("identities", 1, 5);
  line(5, o5.pass, "A+-, Izergin and Slavnov determinant identities, zero overlap, N=2M, Gaudin limit", o5);
  {
    RunConfig c;
    c.n_sites = 4;
    c.suites = {"identities"};
    Report r = run(c);
    diagnostic(r, "identities/slavnov_a_form_printed_sign");
    diagnostic(r, "identities/slavnov_izergin_corollary_printed");
  }

  Outcome o6 = sweep("scalar-products", 1, 5);
  line(6, o6.pass, "scalar products N<=5: direct = A = B = Izergin = dense, eigenstate dispatch", o6);
  {
    RunConfig c;
    c.n_sites = 3;
    c.suites = {"scalar-products"};
    diagnostic(run(c), "scalar-products/b_form_printed_vs_dense");
  }

  Outcome o7 = sweep("form-factors", 1, 4);
  {
    RunConfig c;
    c.n_sites = 1;
    c.fixture = true;
    c.suites = {"form-factors"};
    Report r = run(c);
    const ReportRow* derived = r.find("form-factors/fixture_sigma_z");
    const ReportRow* printed = r.find("form-factors/fixture_sigma_z_printed_sign");
    bool sign_ok = derived && printed && derived->pass && !printed->pass;
    line(7, o7.pass && sign_ok, "form factors N<=4 vs dense; sigma^z derived sign passes, printed sign fails", o7);
    diagnostic(r, "form-factors/fixture_sigma_z_printed_sign");
    diagnostic(r, "form-factors/sigma_minus_reconstruction_printed");
  }

  Outcome o8 = sweep("aba-check", 1, 4);
  line(8, o8.pass, "ABA bridge N<=4: correspondence constant, ABA vs SoV sigma^z expressions, |1> product form", o8);

  {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    RunConfig c;
    c.n_sites = 4;
    c.suites = {"homogeneous-stress"};
    Report r = run(c);
    absorb(o, r);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line(9, o.pass, "homogeneous limit N=4: B/Izergin/Slavnov Cauchy in eps, cond(raw) ~ eps^-(N-1)", o);
    if (r.summaries.contains("homogeneous-stress")) {
      const auto& s = r.summaries["homogeneous-stress"];
      std::printf("    condition exponent %.3f, Cauchy ratios B %.3f Izergin %.3f Slavnov %.3f\n",
                  s["condition_exponent"].get<double>(), s["cauchy_ratios"][0].get<double>(),
                  s["cauchy_ratios"][1].get<double>(), s["cauchy_ratios"][2].get<double>());
      for (const auto& row : s["rows"])
        std::printf("    eps=%.0e  B=%.10e%+.10ei  cond=%.3e  raw=%.6e%+.6ei\n", row["eps"].get<double>(),
                    row["b_form"][0].get<double>(), row["b_form"][1].get<double>(),
                    row["direct_condition"].get<double>(), row["direct_form"][0].get<double>(),
                    row["direct_form"][1].get<double>());
    }
  }

  Outcome o10 = sweep("hamiltonian", 2, 3);
  line(10, o10.pass, "Hamiltonian limit N=2,3: exact at xi=0, linear decay in eps", o10);

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
