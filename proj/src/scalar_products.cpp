#include "sovxxx/scalar_products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/determinant_engine.hpp"
#include "sovxxx/rng.hpp"

namespace sov {

namespace {

double sgn(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

CList concat(const CList& a, const CList& b) {
  CList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

cplx prod_d(const ChainParams& p, const CList& r) {
  cplx v = 1.0;
  for (cplx x : r) v *= d_of(p, x);
  return v;
}

}  // namespace

Mat sp_direct_matrix(const ChainParams& p, const SeparateStateSpec& left, const SeparateStateSpec& right) {
  const int n = p.N();
  Mat M(n, n);
  for (int a = 0; a < n; ++a) {
    cplx x = p.xi[a];
    cplx bbar0 = right.values_at_xi[a];
    cplx bbar1 = -a_of(p, x) / d_of(p, x - p.eta) * right.values_at_xi_minus_eta[a];
    cplx w0 = left.values_at_xi[a] * bbar0;
    cplx w1 = left.values_at_xi_minus_eta[a] * bbar1;
    for (int b = 0; b < n; ++b) M(a, b) = std::pow(x, b) * w0 + std::pow(x - p.eta, b) * w1;
  }
  return M;
}

cplx sp_direct(const ChainParams& p, const SeparateStateSpec& left, const SeparateStateSpec& right) {
  return det(sp_direct_matrix(p, left, right)) / vandermonde(p.xi);
}

cplx sp_a_form(const ChainParams& p, const CList& alpha, const CList& beta) {
  CList u = concat(alpha, beta);
  CList f(p.N());
  for (int a = 0; a < p.N(); ++a) f[a] = -e_pm(u, p.xi[a], p.eta, Sign::Minus);
  long k = static_cast<long>(p.N()) * static_cast<long>(u.size());
  return sgn(k) * prod_d(p, alpha) * prod_d(p, beta) * a_pm(p.xi, f, p.eta, Sign::Plus);
}

static cplx b_form(const ChainParams& p, const CList& alpha, const CList& beta, Sign inner) {
  CList u = concat(alpha, beta);
  CList f(u.size());
  for (size_t a = 0; a < u.size(); ++a) f[a] = -e_pm(p.xi, u[a], p.eta, inner);
  long k = static_cast<long>(p.N()) * static_cast<long>(u.size());
  double two = std::pow(2.0, p.N() - static_cast<int>(u.size()));
  return sgn(k) * two * prod_d(p, alpha) * prod_d(p, beta) * a_pm(u, f, p.eta, Sign::Minus);
}

cplx sp_b_form(const ChainParams& p, const CList& alpha, const CList& beta) {
  return b_form(p, alpha, beta, Sign::Plus);
}

cplx sp_b_form_printed(const ChainParams& p, const CList& alpha, const CList& beta) {
  return b_form(p, alpha, beta, Sign::Minus);
}

static void require_izergin_shape(const ChainParams& p, const CList& alpha, const CList& beta) {
  if (static_cast<int>(alpha.size() + beta.size()) != p.N())
    throw Error(ErrorKind::Shape, "Izergin form needs R + S = N");
}

cplx sp_izergin_form(const ChainParams& p, const CList& alpha, const CList& beta) {
  require_izergin_shape(p, alpha, beta);
  long k = static_cast<long>(p.N()) * static_cast<long>(alpha.size() + beta.size() + 1);
  return sgn(k) * prod_d(p, alpha) * prod_d(p, beta) * izergin(-1.0, concat(alpha, beta), p.xi, p.eta);
}

cplx sp_izergin_form_stable(const ChainParams& p, const CList& alpha, const CList& beta) {
  require_izergin_shape(p, alpha, beta);
  long k = static_cast<long>(p.N()) * static_cast<long>(alpha.size() + beta.size() + 1);
  return sgn(k) * prod_d(p, alpha) * prod_d(p, beta) * izergin_divided(-1.0, concat(alpha, beta), p.xi, p.eta);
}

const char* eigen_case_name(EigenCase c) {
  switch (c) {
    case EigenCase::Vanishing: return "M<R";
    case EigenCase::Equal: return "M=R";
    default: return "M>R";
  }
}

cplx with_lambda(const ChainParams& p, const CList& alpha, const EigenRecord& rec) {
  return sp_a_form(p, alpha, rec.bethe_roots);
}

cplx hat_constant(const ChainParams& p, const EigenRecord& rec) {
  cplx c = 1.0;
  for (cplx x : p.xi) c *= rec.q_tau(x) / rec.q_minus_tau(x);
  return c;
}

cplx with_lambda_hat_printed(const ChainParams& p, const CList& alpha, const EigenRecord& rec) {
  CList u = concat(rec.hat_roots, alpha);
  CList f(p.N());
  for (int a = 0; a < p.N(); ++a) f[a] = e_pm(u, p.xi[a], p.eta, Sign::Minus);
  long k = static_cast<long>(p.N()) * static_cast<long>(p.N() - rec.R + alpha.size());
  return sgn(k) * prod_d(p, alpha) * prod_d(p, rec.hat_roots) * a_pm(p.xi, f, p.eta, Sign::Plus);
}

cplx with_lambda_hat(const ChainParams& p, const CList& alpha, const EigenRecord& rec) {
  return hat_constant(p, rec) * with_lambda_hat_printed(p, alpha, rec);
}

EigenScalarProduct sp_with_eigenstate(const ChainParams& p, const CList& alpha, const EigenRecord& rec) {
  EigenScalarProduct out;
  const int M = static_cast<int>(alpha.size());
  const int R = rec.R;
  const int n = p.N();
  if (M < R) {
    out.which = EigenCase::Vanishing;
    out.value = 0.0;
    out.printed_value = 0.0;
    return out;
  }
  cplx dd = prod_d(p, alpha) * prod_d(p, rec.bethe_roots);
  if (M == R) {
    out.which = EigenCase::Equal;
    cplx iz = prod_d(p, alpha) * prod_d(p, rec.hat_roots) * izergin(1.0, concat(alpha, rec.hat_roots), p.xi, p.eta);
    out.izergin_value = hat_constant(p, rec) * iz;
    out.slavnov_value = sgn(M) * std::pow(2.0, n - 2 * M) * dd * slavnov(-1.0, rec.bethe_roots, alpha, p.xi, p.eta);
    out.value = out.slavnov_value;
    out.printed_value = iz;
    out.cross_residual = rel_diff(out.izergin_value, out.slavnov_value);
    return out;
  }
  out.which = EigenCase::More;
  const int S = M - R;
  cplx g = std::pow(2.0, n - M - R) * dd * gen_slavnov(-1.0, rec.bethe_roots, alpha, p.xi, p.eta);
  out.value = sgn(static_cast<long>(R) + static_cast<long>(n) * S + S * (S + 1) / 2) * g;
  out.printed_value = sgn(R) * g;
  return out;
}

Mat gaudin_matrix(const ChainParams& p, const CList& roots) {
  const size_t R = roots.size();
  const cplx eta = p.eta;
  Mat phi(R, R);
  for (size_t m = 0; m < R; ++m)
    for (size_t n = 0; n < R; ++n) {
      if (m == n) {
        cplx s = log_ad_derivative(p, roots[m]);
        for (size_t b = 0; b < R; ++b)
          if (b != m) s += 1.0 / (roots[m] - roots[b] - eta) - 1.0 / (roots[m] - roots[b] + eta);
        phi(m, n) = s;
      } else {
        cplx x = roots[m] - roots[n];
        phi(m, n) = -1.0 / (x - eta) + 1.0 / (x + eta);
      }
    }
  return phi;
}

Mat gaudin_matrix_fd(const ChainParams& p, const CList& roots, double h) {
  const size_t R = roots.size();
  auto g = [&](const CList& r, size_t m) {
    cplx v = a_of(p, r[m]) / d_of(p, r[m]);
    for (size_t b = 0; b < R; ++b) v *= (r[m] - r[b] - p.eta) / (r[m] - r[b] + p.eta);
    return v;
  };
  Mat phi(R, R);
  for (size_t n = 0; n < R; ++n) {
    CList up = roots, dn = roots;
    up[n] += h;
    dn[n] -= h;
    // log of the ratio stays on the principal branch for small h
    for (size_t m = 0; m < R; ++m) phi(m, n) = std::log(g(up, m) / g(dn, m)) / (2.0 * h);
  }
  return phi;
}

cplx gaudin_norm_roots(const ChainParams& p, const CList& roots) {
  const size_t R = roots.size();
  cplx pre = std::pow(2.0, p.N() - 2 * static_cast<int>(R));
  cplx dd = prod_d(p, roots);
  pre *= dd * dd;
  for (size_t m = 0; m < R; ++m)
    for (size_t n = 0; n < R; ++n) {
      pre *= roots[m] - roots[n] + p.eta;
      if (m != n) pre /= roots[m] - roots[n];
    }
  return pre * det(gaudin_matrix(p, roots));
}

cplx gaudin_norm(const ChainParams& p, const EigenRecord& rec) { return gaudin_norm_roots(p, rec.bethe_roots); }

cplx gaudin_via_limit(const ChainParams& p, const EigenRecord& rec, double* err) {
  const CList& x = rec.bethe_roots;
  const int R = rec.R;
  auto eval = [&](double eps) {
    CList y = x;
    for (int k = 0; k < R; ++k) y[k] += eps * cplx(0.6 + 0.1 * k, 0.8 - 0.05 * k) * std::abs(p.eta);
    cplx dd = prod_d(p, x) * prod_d(p, y);
    return sgn(R) * std::pow(2.0, p.N() - 2 * R) * dd * slavnov(-1.0, x, y, p.xi, p.eta);
  };
  LimitResult lim = coinciding_limit(eval, 1e-2, 0.5, 6, 1e-4);
  if (err) *err = lim.error_estimate;
  return lim.value;
}

double cauchy_ratio(const CList& values, double floor) {
  double scale = 0.0;
  for (cplx v : values) scale = std::max(scale, std::abs(v));
  std::vector<double> diffs;
  for (size_t k = 0; k + 1 < values.size(); ++k) {
    double d = std::abs(values[k + 1] - values[k]);
    if (d <= floor * scale) break;
    diffs.push_back(d);
  }
  double worst = 0.0;
  for (size_t k = 0; k + 1 < diffs.size(); ++k) worst = std::max(worst, diffs[k + 1] / diffs[k]);
  return worst;
}

HomogeneousSweep homogeneous_sweep(int n_sites, const std::vector<double>& eps_list, std::uint64_t seed, cplx eta) {
  if (n_sites < 2 || eps_list.size() < 3) throw Error(ErrorKind::InvalidArgument, "sweep needs N >= 2 and 3 steps");
  HomogeneousSweep out;
  out.n_sites = n_sites;
  const int M = n_sites / 2, S = n_sites - M;
  CounterRng rng(seed, 21);
  auto far_point = [&](double spread) {
    for (;;) {
      cplx z = rng.complex_normal(spread, spread);
      if (std::abs(z) > 0.5 && std::abs(z + eta) > 0.5 && std::abs(z - eta) > 0.5) return z;
    }
  };
  CList alpha, beta, tau_points, ls_points;
  for (int i = 0; i < M; ++i) alpha.push_back(far_point(1.5));
  for (int i = 0; i < S; ++i) beta.push_back(far_point(1.5));
  for (int i = 0; i < n_sites; ++i) tau_points.push_back(far_point(2.0));
  for (int i = 0; i < 2 * n_sites + 2; ++i) ls_points.push_back(far_point(2.0));

  out.R = M;
  CList ref;
  auto coeffs = [](const Poly& t) { return t.c; };
  auto dist = [](const CList& a, const CList& b) {
    double s = 0.0;
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
  };
  auto condition_at = [&](double eps) {
    ChainParams p = near_homogeneous_params(n_sites, eps, eta);
    Eigen::JacobiSVD<Mat> svd(
        sp_direct_matrix(p, spec_from_roots(p, alpha, Side::Left), spec_from_roots(p, beta, Side::Right)));
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
  };
  std::vector<double> log_eps, log_cond;
  for (double eps : eps_list) {
    ChainParams p = near_homogeneous_params(n_sites, eps, eta);
    std::vector<Poly> taus;
    for (const EigenPair& e : diagonalize_transfer(p)) taus.push_back(extract_tau_at(p, e.right, e.left, tau_points));
    int pick = -1;
    if (ref.empty()) {
      double best = -1.0;
      for (size_t i = 0; i < taus.size(); ++i) {
        if (q_degree_from_tau(p, taus[i]) != M) continue;
        double gap = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < taus.size(); ++j)
          if (j != i) gap = std::min(gap, dist(coeffs(taus[i]), coeffs(taus[j])));
        if (gap > best) best = gap, pick = static_cast<int>(i);
      }
      if (pick < 0) throw Error(ErrorKind::SpectrumPairing, "no eigenstate with R = N/2");
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < taus.size(); ++i) {
        double d = dist(coeffs(taus[i]), ref);
        if (d < best) best = d, pick = static_cast<int>(i);
      }
    }
    ref = coeffs(taus[pick]);
    Poly q = solve_Q_functional(p, taus[pick], M, ls_points);
    CList roots = poly_roots(q);

    HomogeneousRow row;
    row.eps = eps;
    row.b_form = sp_b_form(p, alpha, beta);
    row.izergin_form = sp_izergin_form_stable(p, alpha, beta);
    row.slavnov_form = sgn(M) * std::pow(2.0, n_sites - 2 * M) * prod_d(p, alpha) * prod_d(p, roots) *
                       slavnov(-1.0, roots, alpha, p.xi, p.eta);
    row.direct_form = sp_direct(p, spec_from_roots(p, alpha, Side::Left), spec_from_roots(p, beta, Side::Right));
    row.direct_condition = condition_at(eps);
    row.bethe_residual = bethe_residuals(p, roots);
    out.rows.push_back(row);
  }
  // fit on a quarter-decade grid; points near 1/machine-eps sit on the roundoff plateau
  const double plateau = 1e-3 / std::numeric_limits<double>::epsilon();
  for (double eps = eps_list.front(); eps >= eps_list.back() * 0.999; eps *= std::pow(10.0, -0.25)) {
    double cnd = condition_at(eps);
    if (cnd >= plateau) break;
    out.condition_fit.emplace_back(eps, cnd);
    log_eps.push_back(std::log(eps));
    log_cond.push_back(std::log(cnd));
  }
  CList b, iz, sl;
  for (const auto& r : out.rows) b.push_back(r.b_form), iz.push_back(r.izergin_form), sl.push_back(r.slavnov_form);
  out.b_ratio = cauchy_ratio(b);
  out.izergin_ratio = cauchy_ratio(iz);
  out.slavnov_ratio = cauchy_ratio(sl, 1e-9);
  if (log_eps.size() < 2) throw Error(ErrorKind::LimitFailure, "condition fit needs two points below the plateau");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < log_eps.size(); ++i) mx += log_eps[i], my += log_cond[i];
  mx /= log_eps.size();
  my /= log_eps.size();
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < log_eps.size(); ++i) {
    sxy += (log_eps[i] - mx) * (log_cond[i] - my);
    sxx += (log_eps[i] - mx) * (log_eps[i] - mx);
  }
  out.condition_exponent = -sxy / sxx;
  return out;
}

}  // namespace sov
