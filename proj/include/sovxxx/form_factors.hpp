#pragma once

#include <string>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace sov {

// sigma^-_n = [prod_{j<n} T(xi_j)/a(xi_j)] D(xi_n)/a(xi_n) [prod_{j<=n} T(xi_j)/a(xi_j)]^{-1}
Mat reconstruct_sigma_minus(const ChainParams& p, int site);
// (-1)^N prod_{j<n} T/a * D(xi_n)/a(xi_n) * prod_{j>n} T/a, equal to (-1)^N sigma^-_n Gamma^x
Mat reconstruct_sigma_minus_printed(const ChainParams& p, int site);

enum class FFCase { Far, BraHigher, KetHigher, EqualDistinct, EqualSame };
const char* ff_case_name(FFCase c);
FFCase ff_case(int R, int Rp, bool same_state);

struct FormFactor {
  FFCase which;
  cplx value;    // derived convention, matches the dense oracle
  cplx printed;  // formula with printed prefactor signs
};

// bra roots lambda (deg R), ket roots lambda' (deg R'); site is 1-based
FormFactor ff_sigma_minus_roots(const ChainParams& p, const CList& bra_roots, const CList& ket_roots, int site,
                                bool same_state);
FormFactor ff_sigma_minus(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site);
FormFactor ff_sigma_z(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site);
FormFactor ff_sigma_plus(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site);

// F^- matrix: rows from `rows`, first |rows|-1 columns from `cols`, last column t(row - z)
Mat f_minus_matrix(const ChainParams& p, const CList& rows, const CList& cols, cplx z);
// R = R' matrices F and P; with same_state the diagonal uses the coinciding-root limit
std::pair<Mat, Mat> f_equal_matrices(const ChainParams& p, const CList& bra_roots, const CList& ket_roots, int site,
                                     bool same_state);

struct SxCheck {
  int derived;   // 2R - N
  int printed;   // N - 2R
  cplx dense;
};
SxCheck sx_eigenvalue_check(const ChainParams& p, const EigenRecord& rec);

cplx dense_matrix_element(const RowVec& bra, const Mat& op, const Vec& ket);

bool same_eigenstate(const EigenRecord& a, const EigenRecord& b);

}  // namespace sov
