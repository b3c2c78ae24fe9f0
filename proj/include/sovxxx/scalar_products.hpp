#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/sov_states.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace sov {

// det M / V(xi) with the two-Vandermonde weighted matrix
cplx sp_direct(const ChainParams& p, const SeparateStateSpec& left, const SeparateStateSpec& right);
Mat sp_direct_matrix(const ChainParams& p, const SeparateStateSpec& left, const SeparateStateSpec& right);

cplx sp_a_form(const ChainParams& p, const CList& alpha, const CList& beta);
// A^-_{alpha u beta}[-E+_xi] (the printed argument -E-_xi is available for reporting)
cplx sp_b_form(const ChainParams& p, const CList& alpha, const CList& beta);
cplx sp_b_form_printed(const ChainParams& p, const CList& alpha, const CList& beta);
cplx sp_izergin_form(const ChainParams& p, const CList& alpha, const CList& beta);
// same as sp_izergin_form through the divided-difference Izergin evaluation
cplx sp_izergin_form_stable(const ChainParams& p, const CList& alpha, const CList& beta);

enum class EigenCase { Vanishing, Equal, More };
const char* eigen_case_name(EigenCase c);

struct EigenScalarProduct {
  EigenCase which = EigenCase::Vanishing;
  cplx value;             // primary representation
  cplx izergin_value;     // M = R only
  cplx slavnov_value;     // M = R only
  cplx printed_value;     // the formula with printed prefactors
  double cross_residual = 0.0;
};

cplx with_lambda(const ChainParams& p, const CList& alpha, const EigenRecord& rec);
cplx with_lambda_hat(const ChainParams& p, const CList& alpha, const EigenRecord& rec);
cplx with_lambda_hat_printed(const ChainParams& p, const CList& alpha, const EigenRecord& rec);
// prod_a Q_tau(xi_a) / Q_{-tau}(xi_a)
cplx hat_constant(const ChainParams& p, const EigenRecord& rec);

EigenScalarProduct sp_with_eigenstate(const ChainParams& p, const CList& alpha, const EigenRecord& rec);

Mat gaudin_matrix(const ChainParams& p, const CList& roots);
Mat gaudin_matrix_fd(const ChainParams& p, const CList& roots, double h = 1e-6);
cplx gaudin_norm(const ChainParams& p, const EigenRecord& rec);
cplx gaudin_norm_roots(const ChainParams& p, const CList& roots);

// slavnov-form scalar product with ys = roots + eps * direction, extrapolated to eps -> 0
cplx gaudin_via_limit(const ChainParams& p, const EigenRecord& rec, double* err = nullptr);

// xi_a = eps * a sweep: the smooth forms against the raw two-Vandermonde determinant
struct HomogeneousRow {
  double eps = 0.0;
  cplx b_form, izergin_form, slavnov_form, direct_form;
  double direct_condition = 0.0;
  double bethe_residual = 0.0;
};

struct HomogeneousSweep {
  int n_sites = 0;
  int R = 0;
  std::vector<HomogeneousRow> rows;
  // largest ratio of successive differences above the noise floor, per form
  double b_ratio = 0.0, izergin_ratio = 0.0, slavnov_ratio = 0.0;
  // fitted p in cond ~ eps^{-p}, from the (eps, cond) samples below the roundoff plateau
  double condition_exponent = 0.0;
  std::vector<std::pair<double, double>> condition_fit;
};

HomogeneousSweep homogeneous_sweep(int n_sites, const std::vector<double>& eps_list, std::uint64_t seed,
                                   cplx eta = 1.0);
// max ratio |v_{k+2}-v_{k+1}| / |v_{k+1}-v_k| over differences above floor * |v|
double cauchy_ratio(const CList& values, double floor = 1e-11);

}  // namespace sov
