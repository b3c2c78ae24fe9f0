#include "doctest.h"
#include "sovxxx/determinant_engine.hpp"
#include "sovxxx/rng.hpp"
#include "sovxxx/spectrum_tq.hpp"

using namespace sov;

namespace {
CList draw(CounterRng& rng, int n) {
  CList v;
  for (int i = 0; i < n; ++i) v.push_back(rng.complex_normal(1.5, 1.5));
  return v;
}
}  // namespace

TEST_CASE("one-by-one Izergin determinant") {
  // (x - y + eta) t_mu(x - y) = mu (x - y + eta)/(x - y) - 1
  cplx v = izergin(1.0, {1.0}, {0.0}, 1.0);
  CHECK(std::abs(v - cplx(1.0)) < 1e-15);
  cplx w = izergin(-1.0, {2.0}, {0.5}, 1.0);
  CHECK(std::abs(w - cplx(-2.5 / 1.5 - 1.0)) < 1e-15);
}

TEST_CASE("Izergin symmetry and divided-difference evaluation") {
  CounterRng rng(2);
  for (int n = 1; n <= 5; ++n) {
    CList x = draw(rng, n), y = draw(rng, n);
    cplx mu(0.3, -0.8);
    cplx v = izergin(mu, x, y, 1.0);
    CHECK(rel_diff(izergin_divided(mu, x, y, 1.0), v) < 1e-10);
    CList xr(x.rbegin(), x.rend()), yr(y.rbegin(), y.rend());
    CHECK(rel_diff(izergin(mu, xr, yr, 1.0), v) < 1e-12);
  }
}

TEST_CASE("determinant identities on random sets") {
  CounterRng rng(3);
  const cplx eta(0.8, 0.3);
  for (int k = 0; k < 40; ++k) {
    int n = 1 + k % 5;
    CList x = draw(rng, n), y = draw(rng, n), f = draw(rng, n);
    CHECK(a_pm_duality_check(x, f, eta).residual() < 1e-10);
    auto [a, b] = izergin_a_form_check(cplx(-1.0), x, y, eta);
    CHECK(a.residual() < 1e-10);
    CHECK(b.residual() < 1e-10);
    CList y2 = draw(rng, (k / 5) % 5);
    CHECK(a_pm_unbalanced_check(cplx(2.0), x, y2, eta).residual() < 1e-10);
  }
}

TEST_CASE("zero overlap for larger y-sets") {
  CounterRng rng(4);
  for (int m = 0; m < 4; ++m) {
    CList x = draw(rng, m), y = draw(rng, m + 1);
    CHECK(std::abs(zero_overlap_check(x, y, 1.0, Sign::Plus).lhs) < 1e-11);
    CHECK(std::abs(zero_overlap_check(x, y, 1.0, Sign::Minus).lhs) < 1e-11);
  }
}

TEST_CASE("E functions and the coinciding factor") {
  CList set = {0.0, 2.0};
  CHECK(std::abs(e_pm(set, 1.0, 1.0, Sign::Plus) - cplx(2.0 * 0.0)) < 1e-15);
  CHECK(std::abs(e_ratio(set, 2.0, 1.0) - cplx(-1.0 * 3.0)) < 1e-15);
  CHECK_THROWS_AS(e_pm(set, 2.0, 1.0, Sign::Minus), Error);
}

TEST_CASE("Slavnov identities on on-shell roots") {
  ChainParams p = sample_generic_params(4, 6);
  CounterRng rng(5);
  for (const auto& r : full_spectrum(p, {7, false})) {
    if (r.R == 0) continue;
    for (int s = 0; s + r.R <= 4; ++s) {
      CList y = draw(rng, r.R + s);
      auto chk = slavnov_a_form_check(-1.0, r.bethe_roots, y, p.xi, p.eta);
      CHECK(chk.corrected.residual() < 1e-9);
    }
    if (r.R == 2) {
      auto c = slavnov_izergin_check(-1.0, r.bethe_roots, draw(rng, 2), p.xi, p.eta);
      CHECK(c.corrected.residual() < 1e-9);
    }
  }
  CHECK(slavnov_identity_sign(0, 0) == 1);
  CHECK(slavnov_identity_sign(1, 0) == -1);
  CHECK(slavnov_identity_sign(1, 1) == 1);
  CHECK(slavnov_identity_sign(2, 2) == -1);
}

TEST_CASE("gated Slavnov rejects off-shell input") {
  ChainParams p = sample_generic_params(2, 1);
  CHECK_THROWS_AS(slavnov_checked(-1.0, {cplx(0.3, 0.1)}, {cplx(1.0, 1.0)}, p.xi, p.eta), Error);
}

TEST_CASE("Richardson limit") {
  auto f = [](double e) { return cplx((std::exp(e) - 1.0) / e); };
  LimitResult r = coinciding_limit(f);
  CHECK(std::abs(r.value - cplx(1.0)) < 1e-10);
  CHECK(r.samples.size() == 6);
}
