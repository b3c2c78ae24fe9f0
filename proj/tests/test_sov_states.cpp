#include "doctest.h"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/rng.hpp"
#include "sovxxx/sov_states.hpp"

using namespace sov;

TEST_CASE("basis relations up to N = 4") {
  for (int n = 1; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 40 + n);
    SovBasis b(p);
    CHECK(b.d_eigen_residual(cplx(0.3, -0.8)) < 1e-10);
    auto g = b.gram_check();
    CHECK(g.gram_residual < 1e-10);
    CHECK(g.decomposition_residual < 1e-10);
  }
}

TEST_CASE("the state |1> is a product state") {
  ChainParams p = sample_generic_params(3, 9);
  SovBasis b(p);
  Vec one = b.right_state(spec_one(p, Side::Right));
  RowVec bra = b.left_state(spec_one(p, Side::Left));
  for (Eigen::Index i = 0; i < one.size(); ++i) {
    int downs = __builtin_popcountll(static_cast<unsigned long long>(i));
    double s = downs % 2 ? -1.0 : 1.0;
    CHECK(std::abs(one(i) - s) < 1e-11);
    CHECK(std::abs(bra(i) - s) < 1e-11);
  }
  Vec alt = b.right_state(spec_one_alt(p, Side::Right));
  for (Eigen::Index i = 0; i < alt.size(); ++i) CHECK(std::abs(alt(i) - cplx(1.0)) < 1e-11);
}

TEST_CASE("N = 1 pairing <1|1> = 2") {
  ChainParams p = fixture_params(1);
  SovBasis b(p);
  cplx v = pair(b.left_state(spec_one(p, Side::Left)), b.right_state(spec_one(p, Side::Right)));
  CHECK(std::abs(v - cplx(2.0)) < 1e-14);
}

TEST_CASE("separate states equal the D-product form") {
  ChainParams p = sample_generic_params(4, 12);
  CounterRng rng(4);
  CList roots = {rng.complex_normal(1, 1), rng.complex_normal(1, 1)};
  SovBasis b(p);
  Vec s = b.right_state(spec_from_roots(p, roots, Side::Right));
  Vec a = separate_state_aba_right(p, roots, BaseState::One);
  CHECK((s - a).norm() < 1e-10 * s.norm());
  RowVec sl = b.left_state(spec_from_roots(p, roots, Side::Left));
  RowVec al = separate_state_aba_left(p, roots, BaseState::One);
  CHECK((sl - al).norm() < 1e-10 * sl.norm());
  CHECK((separate_state_dense_right(p, spec_from_roots(p, roots, Side::Right)) - s).norm() < 1e-12 * s.norm());
}

TEST_CASE("bits are site ordered") {
  auto h = bits_of(0b101, 3);
  CHECK(h == std::vector<int>{1, 0, 1});
  ChainParams p = sample_generic_params(3, 1);
  Vec k = sov_basis_state_right(p, h);
  SovBasis b(p);
  CHECK((k - b.ket(h)).norm() < 1e-14);
}
