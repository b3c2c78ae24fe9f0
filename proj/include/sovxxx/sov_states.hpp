#pragma once

#include <optional>
#include <vector>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/dense_oracle.hpp"

namespace sov {

enum class Side { Left, Right };
enum class BaseState { One, OneAlt };

// Values of a function at xi_a and xi_a - eta; defines a separate state up to scale.
struct SeparateStateSpec {
  CList values_at_xi;
  CList values_at_xi_minus_eta;
  Side side = Side::Left;
  std::optional<CList> roots;
};

SeparateStateSpec spec_from_roots(const ChainParams& p, const CList& roots, Side side);
SeparateStateSpec spec_one(const ChainParams& p, Side side);
SeparateStateSpec spec_one_alt(const ChainParams& p, Side side);

// h as a bit list over sites 1..N
std::vector<int> bits_of(unsigned mask, int n);

// All 2^N SoV basis vectors, built once per chain.
class SovBasis {
 public:
  explicit SovBasis(const ChainParams& p);

  const ChainParams& params() const { return p_; }
  // columns indexed by mask, bit a-1 = h_a
  const Mat& kets() const { return kets_; }
  const Mat& bras() const { return bras_; }  // rows indexed by mask
  Vec ket(const std::vector<int>& h) const;
  RowVec bra(const std::vector<int>& h) const;

  Vec right_state(const SeparateStateSpec& spec) const;
  RowVec left_state(const SeparateStateSpec& spec) const;

  // residual of D(lambda)|h> = d_h(lambda)|h> (and the left analogue) over all h
  double d_eigen_residual(cplx lambda) const;
  struct GramResult {
    double gram_residual;
    double decomposition_residual;
  };
  GramResult gram_check() const;

 private:
  ChainParams p_;
  Mat kets_, bras_;
};

Vec sov_basis_state_right(const ChainParams& p, const std::vector<int>& h);
RowVec sov_basis_state_left(const ChainParams& p, const std::vector<int>& h);
SovBasis::GramResult sov_gram_check(const ChainParams& p);

Vec separate_state_dense_right(const ChainParams& p, const SeparateStateSpec& spec);
RowVec separate_state_dense_left(const ChainParams& p, const SeparateStateSpec& spec);

// (-1)^{RN} prod D(root) on |1> (or <1|). With base OneAlt, companion holds the
// roots of the other Baxter polynomial and supplies the d-ratio prefactor.
Vec separate_state_aba_right(const ChainParams& p, const CList& roots, BaseState base,
                             const CList& companion = {});
RowVec separate_state_aba_left(const ChainParams& p, const CList& roots, BaseState base,
                               const CList& companion = {});

cplx pair(const RowVec& left, const Vec& right);

}  // namespace sov
