#pragma once

#include <cstdint>
#include <vector>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/complex_poly.hpp"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/rng.hpp"

namespace sov {

inline constexpr double kQDegreeTol = 1e-8;

struct TauFit {
  Poly tau;
  double heldout_residual = 0.0;
};

TauFit extract_tau(const ChainParams& p, const Vec& right, const RowVec& left);
// tau from bilinear Rayleigh quotients at arbitrary distinct points
Poly extract_tau_at(const ChainParams& p, const Vec& right, const RowVec& left, const CList& points);

double check_discrete_system(const ChainParams& p, const Poly& tau);

struct QSolve {
  Poly q;
  cplx aux_point;
  double condition = 0.0;
  int attempts = 0;
};

// Cramer / interpolation route with a seeded auxiliary point
QSolve solve_Q_from_tau(const ChainParams& p, const Poly& tau, CounterRng& rng);
QSolve solve_Q_from_tau(const ChainParams& p, const Poly& tau, std::uint64_t seed = 7);
// monic Q of given degree from the functional equation by least squares at sample points
Poly solve_Q_functional(const ChainParams& p, const Poly& tau, int degree, const CList& points);
int q_degree_from_tau(const ChainParams& p, const Poly& tau);

// residual of tau Q = -a Q(l-eta) + d Q(l+eta) at the given points, relative
double functional_tq_residual(const ChainParams& p, const Poly& tau, const Poly& q, const CList& points);
double bethe_residuals(const ChainParams& p, const CList& roots);
// generalized on-shell residual for twist mu: mu E+_xi(x_m) prod_{n!=m}(x_m-x_n-eta)/(x_m-x_n+eta) = 1
double bethe_residuals_mu(cplx mu, const CList& roots, const CList& xi, cplx eta);

struct PQ {
  Poly q, p;
  int sign = 1;
  cplx scale = 1.0;
  double wronskian_residual = 0.0;
  double reconstruction_residual = 0.0;
};
PQ pq_decomposition(const ChainParams& p, const Poly& tau, const Poly& q_tau, const Poly& q_minus_tau);

struct Residuals {
  double discrete_system = 0.0;
  double functional_tq = 0.0;
  double bethe = 0.0;
  double wronskian = 0.0;
  double pq_reconstruction = 0.0;
  double q_uniqueness = 0.0;
  double tau_heldout = 0.0;
  double eigenstate = 0.0;
};

struct EigenRecord {
  cplx eigenvalue_at_lambda0;
  Poly tau;
  Poly q_tau;
  Poly q_minus_tau;
  CList bethe_roots;
  CList hat_roots;
  int R = 0;
  int partner = -1;  // index of the -tau record
  PQ pq;
  Residuals residuals;
  Vec dense_right;
  RowVec dense_left;
  Vec sov_ket;    // |Q_tau> in SoV normalization
  RowVec sov_bra; // <Q_tau|
};

struct SpectrumOptions {
  std::uint64_t seed = 7;
  bool build_states = true;
};

std::vector<EigenRecord> full_spectrum(const ChainParams& p, const SpectrumOptions& opt = {});

double min_tau_gap(const std::vector<EigenRecord>& recs);

}  // namespace sov
