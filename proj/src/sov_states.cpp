#include "sovxxx/sov_states.hpp"

#include <algorithm>
#include <cmath>

#include "sovxxx/complex_poly.hpp"

namespace sov {

SeparateStateSpec spec_from_roots(const ChainParams& p, const CList& roots, Side side) {
  SeparateStateSpec s;
  s.side = side;
  s.roots = roots;
  for (cplx x : p.xi) {
    s.values_at_xi.push_back(eval_roots(roots, x));
    s.values_at_xi_minus_eta.push_back(eval_roots(roots, x - p.eta));
  }
  return s;
}

SeparateStateSpec spec_one(const ChainParams& p, Side side) { return spec_from_roots(p, {}, side); }

SeparateStateSpec spec_one_alt(const ChainParams& p, Side side) {
  SeparateStateSpec s;
  s.side = side;
  s.values_at_xi.assign(p.N(), 1.0);
  s.values_at_xi_minus_eta.assign(p.N(), -1.0);
  return s;
}

std::vector<int> bits_of(unsigned mask, int n) {
  std::vector<int> h(n);
  for (int a = 0; a < n; ++a) h[a] = (mask >> a) & 1u;
  return h;
}

static unsigned mask_of(const std::vector<int>& h) {
  unsigned m = 0;
  for (size_t a = 0; a < h.size(); ++a)
    if (h[a]) m |= 1u << a;
  return m;
}

SovBasis::SovBasis(const ChainParams& p) : p_(p) {
  const int n = p.N();
  const Eigen::Index dim = hilbert_dim(n);
  std::vector<Mat> Bx, Cx;
  for (int a = 0; a < n; ++a) {
    Monodromy T = monodromy(p, p.xi[a]);
    Bx.push_back(-T.B / a_of(p, p.xi[a]));
    Cx.push_back(T.C / d_of(p, p.xi[a] - p.eta));
  }
  cplx v = vandermonde(p.xi);
  kets_ = Mat::Zero(dim, dim);
  bras_ = Mat::Zero(dim, dim);
  kets_.col(0) = ref_up(n) / v;
  bras_.row(0) = ref_up(n).transpose() / v;
  for (unsigned mask = 1; mask < dim; ++mask) {
    int top = 31 - __builtin_clz(mask);
    unsigned rest = mask & ~(1u << top);
    kets_.col(mask) = Bx[top] * kets_.col(rest);
    bras_.row(mask) = bras_.row(rest) * Cx[top];
  }
}

Vec SovBasis::ket(const std::vector<int>& h) const { return kets_.col(mask_of(h)); }
RowVec SovBasis::bra(const std::vector<int>& h) const { return bras_.row(mask_of(h)); }

namespace {

// Neumaier-compensated accumulation of weighted vectors
template <class V>
struct CompensatedSum {
  V sum, comp;
  explicit CompensatedSum(Eigen::Index n) : sum(V::Zero(n)), comp(V::Zero(n)) {}
  static void add1(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(const V& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double sr = sum(i).real(), si = sum(i).imag();
      double cr = comp(i).real(), ci = comp(i).imag();
      add1(sr, cr, x(i).real());
      add1(si, ci, x(i).imag());
      sum(i) = {sr, si};
      comp(i) = {cr, ci};
    }
  }
  V result() const { return sum + comp; }
};

cplx weight(const SeparateStateSpec& s, const std::vector<int>& h) {
  cplx w = 1.0;
  for (size_t a = 0; a < h.size(); ++a) w *= h[a] ? s.values_at_xi_minus_eta[a] : s.values_at_xi[a];
  return w;
}

CList shifted(const ChainParams& p, const std::vector<int>& h, double sign) {
  CList out(p.N());
  for (int a = 0; a < p.N(); ++a) out[a] = p.xi[a] + sign * static_cast<double>(h[a]) * p.eta;
  return out;
}

void check_spec(const ChainParams& p, const SeparateStateSpec& s) {
  if (static_cast<int>(s.values_at_xi.size()) != p.N() ||
      static_cast<int>(s.values_at_xi_minus_eta.size()) != p.N())
    throw Error(ErrorKind::InvalidArgument, "separate-state spec length differs from N");
}

}  // namespace

Vec SovBasis::right_state(const SeparateStateSpec& spec) const {
  check_spec(p_, spec);
  const int n = p_.N();
  CompensatedSum<Vec> acc(kets_.rows());
  for (unsigned mask = 0; mask < kets_.cols(); ++mask) {
    auto h = bits_of(mask, n);
    acc.add((weight(spec, h) * vandermonde(shifted(p_, h, 1.0))) * kets_.col(mask));
  }
  return acc.result();
}

RowVec SovBasis::left_state(const SeparateStateSpec& spec) const {
  check_spec(p_, spec);
  const int n = p_.N();
  CompensatedSum<RowVec> acc(bras_.cols());
  for (unsigned mask = 0; mask < bras_.rows(); ++mask) {
    auto h = bits_of(mask, n);
    acc.add((weight(spec, h) * vandermonde(shifted(p_, h, -1.0))) * bras_.row(mask));
  }
  return acc.result();
}

double SovBasis::d_eigen_residual(cplx lambda) const {
  const int n = p_.N();
  Mat D = monodromy(p_, lambda).D;
  double worst = 0.0;
  for (unsigned mask = 0; mask < kets_.cols(); ++mask) {
    auto h = bits_of(mask, n);
    cplx dh = 1.0;
    for (int a = 0; a < n; ++a) dh *= lambda - p_.xi[a] + static_cast<double>(h[a]) * p_.eta;
    Vec k = kets_.col(mask);
    RowVec b = bras_.row(mask);
    double sk = std::max(std::abs(dh) * k.norm(), 1e-300);
    double sb = std::max(std::abs(dh) * b.norm(), 1e-300);
    worst = std::max(worst, (D * k - dh * k).norm() / sk);
    worst = std::max(worst, (b * D - dh * b).norm() / sb);
  }
  return worst;
}

SovBasis::GramResult SovBasis::gram_check() const {
  const int n = p_.N();
  const Eigen::Index dim = kets_.rows();
  Mat G = bras_ * kets_;
  cplx vxi = vandermonde(p_.xi);
  double gram = 0.0, scale = 0.0;
  Mat decomp = Mat::Zero(dim, dim);
  for (unsigned k = 0; k < dim; ++k) {
    auto h = bits_of(k, n);
    cplx vshift = vandermonde(shifted(p_, h, -1.0));
    scale = std::max(scale, std::abs(1.0 / (vxi * vshift)));
    decomp += (vxi * vshift) * kets_.col(k) * bras_.row(k);
  }
  for (unsigned k = 0; k < dim; ++k)
    for (unsigned h = 0; h < dim; ++h) {
      cplx expect = 0.0;
      if (k == h) expect = 1.0 / (vxi * vandermonde(shifted(p_, bits_of(h, n), -1.0)));
      gram = std::max(gram, std::abs(G(k, h) - expect) / scale);
    }
  double dec = op_norm(decomp - Mat::Identity(dim, dim));
  return {gram, dec};
}

Vec sov_basis_state_right(const ChainParams& p, const std::vector<int>& h) { return SovBasis(p).ket(h); }
RowVec sov_basis_state_left(const ChainParams& p, const std::vector<int>& h) { return SovBasis(p).bra(h); }
SovBasis::GramResult sov_gram_check(const ChainParams& p) { return SovBasis(p).gram_check(); }

Vec separate_state_dense_right(const ChainParams& p, const SeparateStateSpec& spec) {
  return SovBasis(p).right_state(spec);
}

RowVec separate_state_dense_left(const ChainParams& p, const SeparateStateSpec& spec) {
  return SovBasis(p).left_state(spec);
}

static cplx aba_prefactor(const ChainParams& p, const CList& roots, BaseState base, const CList& companion) {
  cplx pre = ((roots.size() * p.N()) % 2) ? -1.0 : 1.0;
  if (base == BaseState::OneAlt) {
    for (cplx l : companion) pre *= d_of(p, l);
    for (cplx l : roots) pre /= d_of(p, l);
  }
  return pre;
}

Vec separate_state_aba_right(const ChainParams& p, const CList& roots, BaseState base, const CList& companion) {
  SovBasis basis(p);
  Vec v = basis.right_state(base == BaseState::One ? spec_one(p, Side::Right) : spec_one_alt(p, Side::Right));
  for (cplx r : roots) v = monodromy(p, r).D * v;
  return aba_prefactor(p, roots, base, companion) * v;
}

RowVec separate_state_aba_left(const ChainParams& p, const CList& roots, BaseState base, const CList& companion) {
  SovBasis basis(p);
  RowVec v = basis.left_state(base == BaseState::One ? spec_one(p, Side::Left) : spec_one_alt(p, Side::Left));
  for (cplx r : roots) v = v * monodromy(p, r).D;
  return aba_prefactor(p, roots, base, companion) * v;
}

cplx pair(const RowVec& left, const Vec& right) { return (left * right)(0, 0); }

}  // namespace sov
