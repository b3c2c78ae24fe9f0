#include "doctest.h"
#include "sovxxx/dense_oracle.hpp"

using namespace sov;

TEST_CASE("N = 1 monodromy by hand") {
  ChainParams p = fixture_params(1);
  cplx l(0.3, 0.2);
  Monodromy T = monodromy(p, l);
  CHECK(std::abs(T.A(0, 0) - (l + 1.0)) < 1e-15);
  CHECK(std::abs(T.A(1, 1) - l) < 1e-15);
  CHECK(std::abs(T.D(1, 1) - (l + 1.0)) < 1e-15);
  Mat2 lo = lowering(), ra = raising();
  CHECK((T.B - Mat(lo)).norm() < 1e-15);
  CHECK((T.C - Mat(ra)).norm() < 1e-15);
  Mat t = transfer_antiperiodic(p, l);
  CHECK((t - Mat(pauli_x())).norm() < 1e-15);
  Mat tw = transfer_twisted(p, l);
  CHECK((tw - Mat(pauli_z())).norm() < 1e-15);
}

TEST_CASE("r-matrix is lambda + eta P") {
  Mat4 r = build_r_matrix(2.0, 0.5);
  CHECK(std::abs(r(0, 0) - cplx(2.5)) < 1e-15);
  CHECK(std::abs(r(1, 2) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(r(1, 1) - cplx(2.0)) < 1e-15);
}

TEST_CASE("commuting transfer matrices and quantum determinant") {
  for (int n = 1; n <= 4; ++n) {
    ChainParams p = sample_generic_params(n, 20 + n);
    Mat a = transfer_antiperiodic(p, cplx(0.3, 0.4)), b = transfer_antiperiodic(p, cplx(-1.1, 0.2));
    CHECK(op_norm(a * b - b * a) / (op_norm(a) * op_norm(b)) < 1e-12);
    CHECK(quantum_det_check(p, cplx(0.7, -0.3)) < 1e-12);
    GlobalOps g = global_operators(p);
    CHECK(op_norm(g.Sx * a - a * g.Sx) < 1e-10 * op_norm(a));
    CHECK(op_norm(g.Gx * a - a * g.Gx) < 1e-10 * op_norm(a));
  }
}

TEST_CASE("local operators follow the site ordering") {
  Mat op = local_op(lowering(), 1, 2);
  Vec up = ref_up(2);
  Vec out = op * up;
  CHECK(std::abs(out(2) - cplx(1.0)) < 1e-15);  // |down up>
  Mat m = Mat::Identity(4, 4);
  apply_local_left(lowering(), 1, 2, m);
  CHECK((m - op).norm() < 1e-15);
  Mat k = kron_all({pauli_z(), pauli_x()});
  CHECK((k - local_op(pauli_z(), 1, 2) * local_op(pauli_x(), 2, 2)).norm() < 1e-15);
}

TEST_CASE("derivative of the monodromy") {
  ChainParams p = sample_generic_params(3, 5);
  cplx l(0.2, 0.1);
  double h = 1e-6;
  auto [T, dT] = monodromy_with_derivative(p, l);
  Mat fd = (monodromy(p, l + h).A - monodromy(p, l - h).A) / (2 * h);
  CHECK((fd - dT.A).norm() < 1e-6 * (1 + dT.A.norm()));
}

TEST_CASE("diagonalization returns a biorthogonal simple spectrum") {
  ChainParams p = sample_generic_params(3, 2);
  auto eig = diagonalize_transfer(p);
  REQUIRE(eig.size() == 8);
  Mat t = transfer_antiperiodic(p, default_lambda0(p));
  for (const auto& e : eig) {
    CHECK(std::abs((e.left * e.right)(0) - cplx(1.0)) < 1e-10);
    CHECK((t * e.right - e.eigenvalue * e.right).norm() < 1e-9 * op_norm(t));
  }
}

TEST_CASE("hamiltonian from the logarithmic derivative") {
  CHECK(hamiltonian_limit_check(2, 0.0) < 1e-12);
  CHECK(hamiltonian_limit_check(3, 0.0) < 1e-12);
  double d1 = hamiltonian_limit_check(3, 1e-2), d2 = hamiltonian_limit_check(3, 1e-3);
  CHECK(d2 < 0.2 * d1);
}
