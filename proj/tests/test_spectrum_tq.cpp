#include "doctest.h"
#include "sovxxx/spectrum_tq.hpp"

using namespace sov;

TEST_CASE("N = 1 fixture spectrum") {
  ChainParams p = fixture_params(1);
  auto recs = full_spectrum(p);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    cplx t = r.tau(cplx(0.4, 0.2));
    if (std::abs(t - cplx(1.0)) < 1e-10) {
      CHECK(r.R == 1);
      CHECK(std::abs(r.q_tau(0.0) - cplx(0.5)) < 1e-12);
      CHECK(std::abs(r.bethe_roots[0] + cplx(0.5)) < 1e-12);
    } else {
      CHECK(std::abs(t + cplx(1.0)) < 1e-10);
      CHECK(r.R == 0);
      CHECK(r.q_tau.degree() == 0);
    }
  }
}

TEST_CASE("spectrum completeness and residuals") {
  for (int n = 2; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 3 * n);
    auto recs = full_spectrum(p);
    CHECK(recs.size() == (1u << n));
    CHECK(min_tau_gap(recs) > 1e-8);
    for (const auto& r : recs) {
      CHECK(r.residuals.functional_tq < 1e-8);
      CHECK(r.residuals.bethe < 1e-7);
      CHECK(r.residuals.q_uniqueness < 1e-9);
      CHECK(r.residuals.wronskian < 1e-8);
      CHECK(r.residuals.discrete_system < 1e-9);
      CHECK(r.residuals.eigenstate < 1e-9);
      REQUIRE(r.partner >= 0);
      CHECK(std::abs(recs[r.partner].tau(0.3) + r.tau(0.3)) < 1e-9 * std::max(1.0, std::abs(r.tau(0.3))));
      CHECK(recs[r.partner].R == n - r.R);
    }
  }
}

TEST_CASE("Q is independent of the auxiliary point") {
  ChainParams p = sample_generic_params(3, 17);
  auto recs = full_spectrum(p, {5, false});
  const Poly& tau = recs[2].tau;
  QSolve a = solve_Q_from_tau(p, tau, 1), b = solve_Q_from_tau(p, tau, 2);
  CHECK(a.aux_point != b.aux_point);
  for (size_t i = 0; i < a.q.c.size(); ++i) CHECK(std::abs(a.q.c[i] - b.q.c[i]) < 1e-9);
  CHECK(q_degree_from_tau(p, tau) == a.q.degree());
}

TEST_CASE("least-squares route agrees with the Cramer route") {
  ChainParams p = sample_generic_params(4, 2);
  auto recs = full_spectrum(p, {7, false});
  CList pts = {cplx(1.1, 0.3), cplx(-0.7, 1.9), cplx(2.2, -1.0), cplx(0.4, -2.3), cplx(-1.8, -0.6),
               cplx(3.0, 0.8),  cplx(-2.5, 2.5), cplx(0.9, 3.1),  cplx(1.7, 1.4),  cplx(-0.2, -1.2)};
  for (const auto& r : recs) {
    Poly q = solve_Q_functional(p, r.tau, r.R, pts);
    for (int k = 0; k <= r.R; ++k) CHECK(std::abs(q.c[k] - r.q_tau.c[k]) < 1e-8 * (1 + std::abs(r.q_tau.c[k])));
  }
}

TEST_CASE("generalized on-shell residual at mu = -1 matches the Bethe residual") {
  ChainParams p = sample_generic_params(3, 4);
  for (const auto& r : full_spectrum(p, {7, false})) {
    if (r.R == 0) continue;
    CHECK(bethe_residuals_mu(-1.0, r.bethe_roots, p.xi, p.eta) < 1e-8);
  }
}
