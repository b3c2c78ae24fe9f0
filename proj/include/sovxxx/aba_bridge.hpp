#pragma once

#include "sovxxx/chain_model.hpp"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace sov {

enum class Flavor { BOnUp, COnDown };

// prod B(l)|0> or prod C(l)|0'>
Vec bethe_state(const ChainParams& p, const CList& roots, Flavor flavor);
// <0'| prod B(l)
RowVec bethe_dual_state(const ChainParams& p, const CList& roots);

struct CorrespondenceCheck {
  cplx ratio;            // measured |Q> / Gamma_U^{-1} prod C |0'>
  cplx expected;         // (-1)^{N(R-1)} 2^{N/2-R}
  double spread = 0.0;   // ||ket - ratio * v|| / ||ket||
  cplx bra_ratio;        // <Q| / <0'| prod B Gamma_U
  double bra_spread = 0.0;
  double twisted_residual = 0.0;  // C-flavor state as eigenvector of A - D with eigenvalue tau
};
CorrespondenceCheck correspondence_check(const ChainParams& p, const EigenRecord& rec);

struct OneExplicitCheck {
  double ket_vs_product = 0.0;  // |1> against (x)(1,-1)
  double ket_vs_gamma = 0.0;    // |1> against (-sqrt 2)^N Gamma_U^{-1}|0'>
  double bra_vs_product = 0.0;  // <1| against row (x)(1,-1)
  double alt_ket = 0.0;         // |1_alt> against (x)(1,1)
  double alt_bra = 0.0;         // <1_alt| against row (x)(1,1)
};
OneExplicitCheck one_explicit_check(const ChainParams& p);

// column m (0-based) of H^{(mu)} replaced by its continuation to the point z
cplx column_substituted_slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta, int m, cplx z);

struct AbaSovCrosscheck {
  cplx sov_value;   // base + sum w_SoV S^(m)
  cplx aba_value;   // base + sum w_ABA S^(m)
  double diff = 0.0;
  cplx dense_sz;    // <0'| prod B(lambda) sigma^z_n prod C(lambda') |0'>
  cplx aba_predicted;  // normalized prediction of dense_sz
  double aba_vs_dense = 0.0;
  cplx naive_predicted;  // diagonal only: the direct limit with the printed weights
  double naive_vs_dense = 0.0;
  double sigma_minus_relation = 0.0;  // <Q|s-|Q'> vs 2^{N-2R-1} dense_sz
};
AbaSovCrosscheck aba_sov_crosscheck(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site);

// <0'| prod B(l) and prod C(l)|0'> for the roots of one record
struct BetheCache {
  RowVec dual;
  Vec c_state;
};
BetheCache bethe_cache(const ChainParams& p, const EigenRecord& rec);
AbaSovCrosscheck aba_sov_crosscheck(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site,
                                const GlobalOps& g, const BetheCache& bra_states, const BetheCache& ket_states);

// Gamma_U sigma^-_n Gamma_U^{-1} vs (sigma^z - sigma^+ + sigma^-)/2
double gamma_u_sigma_relation(const ChainParams& p, int site);
// sorted spectra of T and T_- agree
double isospectrality_check(const ChainParams& p, cplx lambda);
// || Gamma_U T Gamma_U^{-1} - (A - D) || / || A - D ||
double gamma_u_similarity_check(const ChainParams& p, cplx lambda);

}  // namespace sov
