#include "doctest.h"
#include "sovxxx/rng.hpp"
#include "sovxxx/scalar_products.hpp"

using namespace sov;

namespace {
CList draw(CounterRng& rng, int n) {
  CList v;
  for (int i = 0; i < n; ++i) v.push_back(rng.complex_normal(1.5, 1.5));
  return v;
}
}  // namespace

TEST_CASE("representations agree with the dense pairing") {
  for (int n = 1; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 60 + n);
    SovBasis basis(p);
    CounterRng rng(n);
    for (int M = 0; M <= n; ++M)
      for (int S = 0; S <= n; ++S) {
        CList al = draw(rng, M), be = draw(rng, S);
        auto L = spec_from_roots(p, al, Side::Left);
        auto R = spec_from_roots(p, be, Side::Right);
        cplx dense = pair(basis.left_state(L), basis.right_state(R));
        CHECK(rel_diff(sp_direct(p, L, R), dense) < 1e-9);
        CHECK(rel_diff(sp_a_form(p, al, be), dense) < 1e-9);
        CHECK(rel_diff(sp_b_form(p, al, be), dense) < 1e-9);
        if (M + S == n) {
          CHECK(rel_diff(sp_izergin_form(p, al, be), dense) < 1e-9);
          CHECK(rel_diff(sp_izergin_form_stable(p, al, be), dense) < 1e-9);
        }
      }
  }
}

TEST_CASE("eigenstate scalar products") {
  ChainParams p = sample_generic_params(3, 14);
  SovBasis basis(p);
  CounterRng rng(8);
  for (const auto& r : full_spectrum(p)) {
    for (int M = 0; M <= 4; ++M) {
      CList al = draw(rng, M);
      RowVec lv = basis.left_state(spec_from_roots(p, al, Side::Left));
      cplx dense = pair(lv, r.sov_ket);
      auto e = sp_with_eigenstate(p, al, r);
      if (M < r.R) {
        CHECK(e.which == EigenCase::Vanishing);
        CHECK(std::abs(dense) < 1e-9 * lv.norm() * r.sov_ket.norm());
      } else {
        CHECK(rel_diff(e.value, dense) < 1e-9);
      }
      if (M == r.R) CHECK(e.cross_residual < 1e-9);
    }
  }
}

TEST_CASE("Gaudin norms") {
  ChainParams f = fixture_params(1);
  for (const auto& r : full_spectrum(f)) {
    cplx g = gaudin_norm(f, r);
    CHECK(std::abs(g - (r.R == 0 ? cplx(2.0) : cplx(0.5))) < 1e-12);
  }
  ChainParams p = sample_generic_params(4, 4);
  for (const auto& r : full_spectrum(p)) {
    cplx dense = pair(r.sov_bra, r.sov_ket);
    CHECK(rel_diff(gaudin_norm(p, r), dense) < 1e-9);
    if (r.R > 0) {
      CHECK(rel_diff(gaudin_via_limit(p, r), dense) < 1e-6);
      Mat a = gaudin_matrix(p, r.bethe_roots), b = gaudin_matrix_fd(p, r.bethe_roots);
      CHECK((a - b).norm() < 1e-5 * a.norm());
    }
  }
}

TEST_CASE("homogeneous sweep") {
  auto sw = homogeneous_sweep(4, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}, 1);
  CHECK(sw.rows.size() == 5);
  CHECK(sw.b_ratio < 0.5);
  CHECK(sw.izergin_ratio < 0.5);
  CHECK(sw.slavnov_ratio < 0.5);
  CHECK(sw.condition_exponent > 2.75);
  for (const auto& r : sw.rows) CHECK(rel_diff(r.b_form, r.izergin_form) < 1e-9);
}

TEST_CASE("cauchy ratio") {
  CHECK(cauchy_ratio({1.0, 1.1, 1.11, 1.111}) == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(cauchy_ratio({1.0, 1.0, 1.0}) == 0.0);
}
