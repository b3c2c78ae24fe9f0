#pragma once

#include <vector>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/types.hpp"

namespace sov {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Basis convention: site 1 is the most significant tensor factor, spin up is index 0.
// |0> = e_0 (all up), |0'> = e_{2^N - 1} (all down).
inline Eigen::Index hilbert_dim(int n) { return Eigen::Index(1) << n; }

Vec ref_up(int n);
Vec ref_down(int n);

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 raising();   // [[0,1],[0,0]]
Mat2 lowering();  // [[0,0],[1,0]]

Mat local_op(const Mat2& op, int site, int n);
Mat kron_all(const std::vector<Mat2>& ops);
// (I x op_site x I) * m without materializing the Kronecker product
void apply_local_left(const Mat2& op, int site, int n, Mat& m);

Mat4 build_r_matrix(cplx lambda, cplx eta);

enum class Entry { A, B, C, D };

struct Monodromy {
  Mat A, B, C, D;
  const Mat& operator()(Entry e) const;
};

Monodromy monodromy(const ChainParams& p, cplx lambda);
// the monodromy and its exact lambda-derivative
std::pair<Monodromy, Monodromy> monodromy_with_derivative(const ChainParams& p, cplx lambda);
Mat monodromy_entry(const ChainParams& p, Entry which, cplx lambda);

Mat transfer_antiperiodic(const ChainParams& p, cplx lambda);
Mat transfer_twisted(const ChainParams& p, cplx lambda);

double op_norm(const Mat& m);  // spectral norm
double quantum_det_check(const ChainParams& p, cplx lambda);

struct GlobalOps {
  Mat Sx, Gx, GU;
  std::vector<Mat> sigma_minus, sigma_plus, sigma_z;  // index site-1
};
GlobalOps global_operators(const ChainParams& p);
Mat2 u_matrix();

struct EigenPair {
  cplx eigenvalue;
  Vec right;
  RowVec left;  // bilinear dual: left * right = 1
};

cplx default_lambda0(const ChainParams& p);
// throws Error(Retry) when the spectrum at lambda0 is not numerically simple
std::vector<EigenPair> diagonalize_transfer(const ChainParams& p, cplx lambda0);
std::vector<EigenPair> diagonalize_transfer(const ChainParams& p);

// Pauli-built antiperiodic XXX Hamiltonian with the -1 per bond shift
Mat pauli_hamiltonian(int n);
// || H - (2 eta T(0)^{-1} T'(0) - 2N) || at xi_a = eps * a
double hamiltonian_limit_check(int n_sites, double eps, cplx eta = 1.0);

}  // namespace sov
