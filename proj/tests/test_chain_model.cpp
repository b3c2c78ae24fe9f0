#include "doctest.h"
#include "sovxxx/chain_model.hpp"
#include "sovxxx/rng.hpp"

using namespace sov;

TEST_CASE("a and d functions") {
  ChainParams p = fixture_params(2);  // xi = 0, 2
  CHECK(std::abs(a_of(p, 1.0) - cplx(2.0 * 0.0)) < 1e-15);  // (1 - 0 + 1)(1 - 2 + 1)
  CHECK(std::abs(d_of(p, 3.0) - cplx(3.0)) < 1e-15);
  // sites j <= n take the other factor
  CHECK(std::abs(a_n_of(p, 1, 3.0) - cplx(4.0 * 1.0)) < 1e-15);
  CHECK(std::abs(d_n_of(p, 1, 3.0) - cplx(3.0 * 2.0)) < 1e-15);
  CHECK(std::abs(a_n_of(p, 2, 3.0) - a_of(p, 3.0)) < 1e-15);
  CHECK(std::abs(d_n_of(p, 2, 3.0) - d_of(p, 3.0)) < 1e-15);
  CHECK(std::abs(d_of(p, p.xi[1])) == 0.0);
}

TEST_CASE("validation rejects degenerate inhomogeneities") {
  CHECK_THROWS_AS(validate_params(make_params(1.0, {0.0, 1.0})), Error);  // xi_2 = xi_1 + eta
  CHECK_THROWS_AS(validate_params(make_params(1.0, {0.0, 0.0})), Error);
  CHECK_THROWS_AS(validate_params(make_params(0.0, {0.0})), Error);
  CHECK_NOTHROW(validate_params(make_params(1.0, {0.0, 2.0})));
}

TEST_CASE("generic sampling is seeded and respects the margin") {
  ChainParams p = sample_generic_params(4, 3);
  ChainParams q = sample_generic_params(4, 3);
  for (int a = 0; a < 4; ++a) CHECK(p.xi[a] == q.xi[a]);
  CHECK(genericity_gap(p) > p.margin);
  ChainParams r = sample_generic_params(4, 4);
  CHECK(p.xi[0] != r.xi[0]);
}

TEST_CASE("vandermonde shift identity") {
  ChainParams p = sample_generic_params(4, 8);
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<int> h;
    for (int a = 0; a < 4; ++a) h.push_back((mask >> a) & 1);
    auto c = vandermonde_shift_check(p, h);
    CHECK(rel_diff(c.lhs, c.rhs) < 1e-12);
  }
}

TEST_CASE("near-homogeneous family") {
  ChainParams p = near_homogeneous_params(3, 1e-3);
  CHECK(std::abs(p.xi[2] - cplx(3e-3)) < 1e-18);
  CHECK(std::abs(vandermonde({1.0, 3.0, 4.0}) - cplx(6.0)) < 1e-14);
}
