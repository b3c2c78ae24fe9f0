#pragma once

#include <cstdint>
#include <vector>

#include "sovxxx/types.hpp"

namespace sov {

struct ChainParams {
  int n_sites = 1;
  cplx eta{1.0, 0.0};
  CList xi{cplx(0.0)};
  double margin = 0.3;

  int N() const { return n_sites; }
};

double default_margin(cplx eta);

// smallest |xi_a - xi_b - h eta| over a != b, h in {-1,0,1}; +inf for N = 1
double genericity_gap(const ChainParams& p);
void validate_params(const ChainParams& p);

ChainParams make_params(cplx eta, const CList& xi, double margin = -1.0);
ChainParams sample_generic_params(int n_sites, std::uint64_t seed, double margin = -1.0);
// eta = 1, xi = (0), (0,2), (0,2,...): the hand-checked fixtures
ChainParams fixture_params(int n_sites);
ChainParams near_homogeneous_params(int n_sites, double eps, cplx eta = 1.0);

cplx a_of(const ChainParams& p, cplx lambda);
cplx d_of(const ChainParams& p, cplx lambda);
cplx a_n_of(const ChainParams& p, int site, cplx lambda);
cplx d_n_of(const ChainParams& p, int site, cplx lambda);
// d/dlambda log(a/d)
cplx log_ad_derivative(const ChainParams& p, cplx lambda);

cplx vandermonde(const CList& values);

struct ShiftCheck {
  cplx lhs, rhs;
};
ShiftCheck vandermonde_shift_check(const ChainParams& p, const std::vector<int>& h);
ShiftCheck vandermonde_shift_check_printed(const ChainParams& p, const std::vector<int>& h);

// scale used for relative tolerances: max(|eta|, |xi_a|)
double chain_scale(const ChainParams& p);

}  // namespace sov
