#include "doctest.h"
#include "sovxxx/aba_bridge.hpp"

using namespace sov;

TEST_CASE("N = 1 C-flavor state is an eigenvector of A - D") {
  ChainParams p = fixture_params(1);
  Vec v = bethe_state(p, {cplx(-0.5)}, Flavor::COnDown);
  CHECK(std::abs(v(0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(v(1)) < 1e-15);
  Mat t = transfer_twisted(p, cplx(0.2, 0.7));
  CHECK((t * v - v).norm() < 1e-14);
}

TEST_CASE("correspondence constant") {
  for (int n = 1; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 80 + n);
    for (const auto& r : full_spectrum(p)) {
      auto c = correspondence_check(p, r);
      CHECK(c.spread < 1e-9);
      CHECK(c.bra_spread < 1e-9);
      CHECK(rel_diff(c.ratio, c.expected) < 1e-9);
      CHECK(rel_diff(c.bra_ratio, c.expected) < 1e-9);
      CHECK(c.twisted_residual < 1e-9);
    }
  }
}

TEST_CASE("explicit product states") {
  for (int n = 1; n <= 4; ++n) {
    auto c = one_explicit_check(sample_generic_params(n, n));
    CHECK(c.ket_vs_product < 1e-12);
    CHECK(c.ket_vs_gamma < 1e-12);
    CHECK(c.bra_vs_product < 1e-12);
    CHECK(c.alt_ket < 1e-12);
    CHECK(c.alt_bra < 1e-12);
  }
}

TEST_CASE("similarity and Gamma_U action on sigma minus") {
  ChainParams p = sample_generic_params(3, 9);
  CHECK(gamma_u_similarity_check(p, cplx(0.4, -0.3)) < 1e-12);
  CHECK(isospectrality_check(p, cplx(0.4, -0.3)) < 1e-10);
  for (int s = 1; s <= 3; ++s) CHECK(gamma_u_sigma_relation(p, s) < 1e-12);
}

TEST_CASE("ABA sigma z expression against the SoV sigma minus expression") {
  ChainParams p = sample_generic_params(3, 21);
  auto recs = full_spectrum(p);
  int checked = 0;
  for (const auto& a : recs)
    for (const auto& b : recs) {
      if (a.R != b.R || a.R == 0) continue;
      for (int s = 1; s <= 3; ++s) {
        auto ab = aba_sov_crosscheck(p, a, b, s);
        CHECK(ab.diff < 1e-9);
        CHECK(ab.aba_vs_dense < 1e-9);
        CHECK(ab.sigma_minus_relation < 1e-9);
        ++checked;
      }
    }
  CHECK(checked > 0);
}
