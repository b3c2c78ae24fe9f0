#include "sovxxx/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sovxxx/rng.hpp"

namespace sov {

double default_margin(cplx eta) { return 0.3 * std::abs(eta); }

double genericity_gap(const ChainParams& p) {
  double gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < p.N(); ++a)
    for (int b = 0; b < p.N(); ++b) {
      if (a == b) continue;
      for (int h = -1; h <= 1; ++h)
        gap = std::min(gap, std::abs(p.xi[a] - p.xi[b] - static_cast<double>(h) * p.eta));
    }
  return gap;
}

void validate_params(const ChainParams& p) {
  if (p.n_sites < 1) throw Error(ErrorKind::InvalidArgument, "n_sites must be >= 1");
  if (static_cast<int>(p.xi.size()) != p.n_sites)
    throw Error(ErrorKind::InvalidArgument, "xi length differs from n_sites");
  if (!(p.margin > 0)) throw Error(ErrorKind::InvalidArgument, "margin must be positive");
  if (p.eta == cplx(0.0) || std::abs(p.eta) < p.margin)
    throw Error(ErrorKind::InvalidArgument, "|eta| below the genericity margin");
  if (genericity_gap(p) < p.margin)
    throw Error(ErrorKind::InvalidArgument, "inhomogeneities violate the genericity margin");
}

ChainParams make_params(cplx eta, const CList& xi, double margin) {
  ChainParams p;
  p.n_sites = static_cast<int>(xi.size());
  p.eta = eta;
  p.xi = xi;
  p.margin = margin > 0 ? margin : default_margin(eta);
  return p;
}

ChainParams sample_generic_params(int n_sites, std::uint64_t seed, double margin) {
  if (n_sites < 1) throw Error(ErrorKind::InvalidArgument, "n_sites must be >= 1");
  if (margin <= 0) margin = default_margin(1.0);
  CounterRng rng(seed, 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CList xi(n_sites);
    for (auto& x : xi) x = rng.complex_normal(1.5, 0.7);
    ChainParams p = make_params(1.0, xi, margin);
    if (std::abs(p.eta) >= margin && genericity_gap(p) >= margin) return p;
  }
  throw Error(ErrorKind::SamplingFailure, "genericity margin unreachable");
}

ChainParams fixture_params(int n_sites) {
  CList xi(n_sites);
  for (int a = 0; a < n_sites; ++a) xi[a] = 2.0 * a;
  return make_params(1.0, xi, 0.3);
}

ChainParams near_homogeneous_params(int n_sites, double eps, cplx eta) {
  CList xi(n_sites);
  for (int a = 0; a < n_sites; ++a) xi[a] = eps * (a + 1);
  ChainParams p = make_params(eta, xi, 0.3 * std::abs(eta));
  return p;
}

cplx a_of(const ChainParams& p, cplx lambda) {
  cplx v = 1.0;
  for (cplx x : p.xi) v *= lambda - x + p.eta;
  return v;
}

cplx d_of(const ChainParams& p, cplx lambda) {
  cplx v = 1.0;
  for (cplx x : p.xi) v *= lambda - x;
  return v;
}

static void check_site(const ChainParams& p, int site) {
  if (site < 1 || site > p.N()) throw Error(ErrorKind::InvalidArgument, "site out of range");
}

cplx a_n_of(const ChainParams& p, int site, cplx lambda) {
  check_site(p, site);
  cplx v = 1.0;
  for (int j = 1; j <= p.N(); ++j) v *= j <= site ? lambda - p.xi[j - 1] + p.eta : lambda - p.xi[j - 1];
  return v;
}

cplx d_n_of(const ChainParams& p, int site, cplx lambda) {
  check_site(p, site);
  cplx v = 1.0;
  for (int j = 1; j <= p.N(); ++j) v *= j <= site ? lambda - p.xi[j - 1] : lambda - p.xi[j - 1] + p.eta;
  return v;
}

cplx log_ad_derivative(const ChainParams& p, cplx lambda) {
  cplx s = 0.0;
  for (cplx x : p.xi) s += 1.0 / (lambda - x + p.eta) - 1.0 / (lambda - x);
  return s;
}

cplx vandermonde(const CList& values) {
  cplx v = 1.0;
  for (size_t a = 0; a < values.size(); ++a)
    for (size_t b = 0; b < a; ++b) v *= values[a] - values[b];
  return v;
}

static CList shifted_xi(const ChainParams& p, const std::vector<int>& h, double sign) {
  if (static_cast<int>(h.size()) != p.N()) throw Error(ErrorKind::InvalidArgument, "h length");
  CList out(p.N());
  for (int a = 0; a < p.N(); ++a) out[a] = p.xi[a] + sign * static_cast<double>(h[a]) * p.eta;
  return out;
}

ShiftCheck vandermonde_shift_check(const ChainParams& p, const std::vector<int>& h) {
  cplx pre = 1.0;
  for (int n = 0; n < p.N(); ++n) {
    if (!h[n]) continue;
    for (int m = 0; m < p.N(); ++m)
      if (m != n) pre *= (p.xi[n] - p.xi[m] + p.eta) / (p.xi[n] - p.xi[m] - p.eta);
  }
  return {pre * vandermonde(shifted_xi(p, h, -1.0)), vandermonde(shifted_xi(p, h, 1.0))};
}

ShiftCheck vandermonde_shift_check_printed(const ChainParams& p, const std::vector<int>& h) {
  cplx pre = (p.N() % 2) ? -1.0 : 1.0;
  for (int n = 0; n < p.N(); ++n) {
    if (!h[n]) continue;
    for (int m = 0; m < p.N(); ++m) pre *= (p.xi[n] - p.xi[m] + p.eta) / (p.xi[n] - p.xi[m] - p.eta);
  }
  return {pre * vandermonde(shifted_xi(p, h, -1.0)), vandermonde(shifted_xi(p, h, 1.0))};
}

double chain_scale(const ChainParams& p) {
  double s = std::abs(p.eta);
  for (cplx x : p.xi) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace sov
