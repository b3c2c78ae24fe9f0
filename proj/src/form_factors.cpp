#include "sovxxx/form_factors.hpp"

#include <cmath>

#include "sovxxx/complex_poly.hpp"
#include "sovxxx/determinant_engine.hpp"

namespace sov {

namespace {

double sgn(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }
CList reversed(const CList& a) { return CList(a.rbegin(), a.rend()); }

Mat t_over_a(const ChainParams& p, int j) { return transfer_antiperiodic(p, p.xi[j]) / a_of(p, p.xi[j]); }

cplx site_products(const ChainParams& p, const CList& bra_roots, const CList& ket_roots, int site) {
  cplx v = 1.0;
  for (cplx l : bra_roots) v *= a_n_of(p, site, l);
  for (cplx l : ket_roots) v *= d_n_of(p, site, l);
  return v;
}

}  // namespace

Mat reconstruct_sigma_minus(const ChainParams& p, int site) {
  const Eigen::Index dim = hilbert_dim(p.N());
  Mat left = Mat::Identity(dim, dim);
  for (int j = 0; j < site - 1; ++j) left = left * t_over_a(p, j);
  Mat right = left * t_over_a(p, site - 1);
  Mat D = monodromy(p, p.xi[site - 1]).D / a_of(p, p.xi[site - 1]);
  return left * D * right.inverse();
}

Mat reconstruct_sigma_minus_printed(const ChainParams& p, int site) {
  const Eigen::Index dim = hilbert_dim(p.N());
  Mat out = Mat::Identity(dim, dim);
  for (int j = 0; j < site - 1; ++j) out = out * t_over_a(p, j);
  out = out * (monodromy(p, p.xi[site - 1]).D / a_of(p, p.xi[site - 1]));
  for (int j = site; j < p.N(); ++j) out = out * t_over_a(p, j);
  return sgn(p.N()) * out;
}

const char* ff_case_name(FFCase c) {
  switch (c) {
    case FFCase::Far: return "|R-R'|>1";
    case FFCase::BraHigher: return "R=R'+1";
    case FFCase::KetHigher: return "R'=R+1";
    case FFCase::EqualDistinct: return "R=R'";
    default: return "diagonal";
  }
}

FFCase ff_case(int R, int Rp, bool same_state) {
  if (std::abs(R - Rp) > 1) return FFCase::Far;
  if (R == Rp + 1) return FFCase::BraHigher;
  if (Rp == R + 1) return FFCase::KetHigher;
  return same_state ? FFCase::EqualSame : FFCase::EqualDistinct;
}

Mat f_minus_matrix(const ChainParams& p, const CList& rows, const CList& cols, cplx z) {
  const size_t L = rows.size();
  const cplx eta = p.eta;
  Mat F(L, L);
  for (size_t j = 0; j < L; ++j) {
    for (size_t k = 0; k + 1 < L; ++k) {
      cplx c = cols[k];
      F(j, k) = a_of(p, c) / d_of(p, c) * eval_roots(rows, c - eta) * t_fn(rows[j] - c, eta) +
                eval_roots(rows, c + eta) * t_fn(c - rows[j], eta);
    }
    if (L > 0) F(j, L - 1) = t_fn(rows[j] - z, eta);
  }
  return F;
}

std::pair<Mat, Mat> f_equal_matrices(const ChainParams& p, const CList& lam, const CList& lamp, int site,
                                     bool same_state) {
  const size_t R = lam.size();
  const cplx eta = p.eta;
  const cplx xn = p.xi[site - 1];
  Mat F(R, R), P(R, R);
  for (size_t j = 0; j < R; ++j)
    for (size_t k = 0; k < R; ++k) {
      cplx c = lamp[k];
      cplx w = a_of(p, c) / d_of(p, c);
      cplx qm = eval_roots(lam, c - eta), qp = eval_roots(lam, c + eta);
      if (same_state && j == k) {
        // limit of the removable singularity at c -> lambda_j
        cplx wp = w * log_ad_derivative(p, c);
        cplx g = eval_roots_derivative(lam, c + eta) - wp * qm - w * eval_roots_derivative(lam, c - eta);
        F(j, k) = g - 2.0 * qp / eta;
      } else {
        F(j, k) = w * qm * t_fn(lam[j] - c, eta) + qp * t_fn(c - lam[j], eta);
      }
      P(j, k) = (w * qm + qp) * t_fn(lam[j] - xn, eta);
    }
  return {F, P};
}

FormFactor ff_sigma_minus_roots(const ChainParams& p, const CList& lam, const CList& lamp, int site,
                                bool same_state) {
  const int N = p.N();
  const int R = static_cast<int>(lam.size()), Rp = static_cast<int>(lamp.size());
  const cplx eta = p.eta;
  const cplx xn = p.xi[site - 1];
  FormFactor out{ff_case(R, Rp, same_state), 0.0, 0.0};
  cplx prods = site_products(p, lam, lamp, site);
  switch (out.which) {
    case FFCase::Far:
      return out;
    case FFCase::BraHigher: {
      cplx pre = std::pow(2.0, N - 2 * R) * sgn(N - 1) * eval_roots(lam, xn) / eval_roots(lamp, xn) * prods /
                 (vandermonde(lam) * vandermonde(reversed(lamp)));
      out.printed = pre * det(f_minus_matrix(p, lam, lamp, xn));
      out.value = sgn(Rp + 1) * out.printed;
      return out;
    }
    case FFCase::KetHigher: {
      cplx pre = std::pow(2.0, N - 2 * Rp) * sgn(N - 1) * eval_roots(lamp, xn - eta) / eval_roots(lam, xn - eta) *
                 prods / (vandermonde(reversed(lam)) * vandermonde(lamp));
      out.printed = pre * det(f_minus_matrix(p, lamp, lam, xn));
      out.value = sgn(Rp + 1) * out.printed;
      return out;
    }
    default: {
      cplx pre = std::pow(2.0, N - 2 * R - 1) * sgn(N - R) * eval_roots(lam, xn) / eval_roots(lamp, xn) * prods /
                 (vandermonde(lam) * vandermonde(reversed(lamp)));
      auto [F, P] = f_equal_matrices(p, lam, lamp, site, same_state);
      out.printed = pre * det(F + P);
      if (same_state)
        out.value = -sgn(N + R) * pre * det(F - P);
      else
        out.value = sgn(N + R) * out.printed;
      return out;
    }
  }
}

bool same_eigenstate(const EigenRecord& a, const EigenRecord& b) {
  if (a.R != b.R) return false;
  size_t n = std::max(a.tau.c.size(), b.tau.c.size());
  double d = 0.0, s = 1.0;
  for (size_t i = 0; i < n; ++i) {
    cplx x = i < a.tau.c.size() ? a.tau.c[i] : cplx(0.0);
    cplx y = i < b.tau.c.size() ? b.tau.c[i] : cplx(0.0);
    d = std::max(d, std::abs(x - y));
    s = std::max(s, std::abs(x));
  }
  return d <= 1e-8 * s;
}

FormFactor ff_sigma_minus(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site) {
  return ff_sigma_minus_roots(p, bra.bethe_roots, ket.bethe_roots, site, same_eigenstate(bra, ket));
}

FormFactor ff_sigma_z(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site) {
  FormFactor m = ff_sigma_minus(p, bra, ket, site);
  return {m.which, 2.0 * (bra.R - ket.R) * m.value, 2.0 * (ket.R - bra.R) * m.value};
}

FormFactor ff_sigma_plus(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site) {
  FormFactor m = ff_sigma_minus(p, bra, ket, site);
  double s = sgn(std::abs(bra.R - ket.R));
  return {m.which, s * m.value, s * m.value};
}

SxCheck sx_eigenvalue_check(const ChainParams& p, const EigenRecord& rec) {
  GlobalOps g = global_operators(p);
  cplx num = (rec.sov_bra * g.Sx * rec.sov_ket)(0, 0);
  cplx den = (rec.sov_bra * rec.sov_ket)(0, 0);
  return {2 * rec.R - p.N(), p.N() - 2 * rec.R, num / den};
}

cplx dense_matrix_element(const RowVec& bra, const Mat& op, const Vec& ket) { return (bra * op * ket)(0, 0); }

}  // namespace sov
