#include "doctest.h"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/form_factors.hpp"

using namespace sov;

TEST_CASE("reconstruction of sigma minus") {
  for (int n = 1; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 70 + n);
    GlobalOps g = global_operators(p);
    for (int s = 1; s <= n; ++s) {
      CHECK(op_norm(reconstruct_sigma_minus(p, s) - g.sigma_minus[s - 1]) < 1e-9);
      Mat printed = reconstruct_sigma_minus_printed(p, s);
      double sign = n % 2 ? -1.0 : 1.0;
      CHECK(op_norm(printed - sign * g.sigma_minus[s - 1] * g.Gx) < 1e-9);
    }
  }
}

TEST_CASE("N = 1 fixtures") {
  ChainParams p = fixture_params(1);
  auto recs = full_spectrum(p);
  const EigenRecord& minus = recs[0].R == 0 ? recs[0] : recs[1];
  const EigenRecord& plus = recs[0].R == 0 ? recs[1] : recs[0];
  CHECK(std::abs(ff_sigma_minus(p, minus, plus, 1).value - cplx(-0.5)) < 1e-12);
  CHECK(std::abs(ff_sigma_plus(p, minus, plus, 1).value - cplx(0.5)) < 1e-12);
  auto z = ff_sigma_z(p, minus, plus, 1);
  CHECK(std::abs(z.value - cplx(1.0)) < 1e-12);
  CHECK(std::abs(z.printed - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(ff_sigma_minus(p, minus, minus, 1).value - cplx(-1.0)) < 1e-12);
}

TEST_CASE("all form factors against the dense oracle at N = 3") {
  ChainParams p = sample_generic_params(3, 31);
  auto recs = full_spectrum(p);
  GlobalOps g = global_operators(p);
  for (const auto& a : recs)
    for (const auto& b : recs)
      for (int s = 1; s <= 3; ++s) {
        double scale = a.sov_bra.norm() * b.sov_ket.norm();
        cplx dm = dense_matrix_element(a.sov_bra, g.sigma_minus[s - 1], b.sov_ket);
        cplx dz = dense_matrix_element(a.sov_bra, g.sigma_z[s - 1], b.sov_ket);
        cplx dp = dense_matrix_element(a.sov_bra, g.sigma_plus[s - 1], b.sov_ket);
        CHECK(std::abs(ff_sigma_minus(p, a, b, s).value - dm) < 1e-8 * std::max(std::abs(dm), 1e-3 * scale));
        CHECK(std::abs(ff_sigma_z(p, a, b, s).value - dz) < 1e-8 * std::max(std::abs(dz), 1e-3 * scale));
        CHECK(std::abs(ff_sigma_plus(p, a, b, s).value - dp) < 1e-8 * std::max(std::abs(dp), 1e-3 * scale));
      }
}

TEST_CASE("case selection") {
  CHECK(ff_case(3, 1, false) == FFCase::Far);
  CHECK(ff_case(2, 1, false) == FFCase::BraHigher);
  CHECK(ff_case(1, 2, false) == FFCase::KetHigher);
  CHECK(ff_case(2, 2, false) == FFCase::EqualDistinct);
  CHECK(ff_case(2, 2, true) == FFCase::EqualSame);
}

TEST_CASE("S^x eigenvalue") {
  ChainParams p = sample_generic_params(3, 2);
  for (const auto& r : full_spectrum(p)) {
    auto c = sx_eigenvalue_check(p, r);
    CHECK(c.derived == 2 * r.R - 3);
    CHECK(std::abs(c.dense - double(c.derived)) < 1e-9);
  }
}
