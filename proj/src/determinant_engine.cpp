#include "sovxxx/determinant_engine.hpp"

#include <algorithm>
#include <cmath>

#include "sovxxx/chain_model.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace sov {

namespace {

double set_scale(const CList& a, cplx eta) {
  double s = std::abs(eta);
  for (cplx x : a) s = std::max(s, std::abs(x));
  return s;
}

CList concat(const CList& a, const CList& b) {
  CList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

CList reversed(const CList& a) { return CList(a.rbegin(), a.rend()); }

double sgn(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

cplx e_pm(const CList& set, cplx y, cplx eta, Sign s) {
  const double sg = static_cast<double>(s);
  double sc = set_scale(set, eta);
  cplx v = 1.0;
  for (cplx x : set) {
    if (std::abs(y - x) <= 1e-14 * sc) throw Error(ErrorKind::PoleCollision, "E-function pole");
    v *= (y - x + sg * eta) / (y - x);
  }
  return v;
}

cplx e_ratio(const CList& set, cplx y, cplx eta) {
  double sc = set_scale(set, eta);
  cplx v = 1.0;
  for (cplx x : set) {
    if (std::abs(y - x) <= 1e-14 * sc)
      v *= -1.0;
    else
      v *= (y - x + eta) / (y - x - eta);
  }
  return v;
}

cplx a_pm(const CList& set, const CList& f, cplx eta, Sign s) {
  const size_t m = set.size();
  if (f.size() != m) throw Error(ErrorKind::Shape, "A-functional needs one value per point");
  if (m == 0) return 1.0;
  const double sg = static_cast<double>(s);
  Mat A(m, m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      A(a, b) = std::pow(set[a], static_cast<int>(b)) - f[a] * std::pow(set[a] + sg * eta, static_cast<int>(b));
  cplx v = vandermonde(set);
  if (std::abs(v) == 0.0) throw Error(ErrorKind::DegenerateSet, "Vandermonde of the point set vanishes");
  return det(A) / v;
}

cplx t_mu(cplx x, cplx mu, cplx eta) { return mu / x - 1.0 / (x + eta); }

cplx t_fn(cplx x, cplx eta) { return eta / (x * (x + eta)); }

static void guard_t(cplx x, cplx eta, double sc) {
  if (std::abs(x) <= 1e-8 * sc || std::abs(x + eta) <= 1e-8 * sc)
    throw Error(ErrorKind::PoleCollision, "t-function argument at a pole");
}

cplx izergin(cplx mu, const CList& xs, const CList& ys, cplx eta) {
  const size_t n = xs.size();
  if (ys.size() != n) throw Error(ErrorKind::Shape, "Izergin determinant needs |x| = |y|");
  if (n == 0) return 1.0;
  double sc = std::max(set_scale(xs, eta), set_scale(ys, eta));
  cplx pre = 1.0;
  Mat m(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      cplx x = xs[a] - ys[b];
      guard_t(x, eta, sc);
      pre *= x + eta;
      m(a, b) = t_mu(x, mu, eta);
    }
  return pre * det(m) / (vandermonde(xs) * vandermonde(reversed(ys)));
}

cplx izergin_divided(cplx mu, const CList& xs, const CList& ys, cplx eta) {
  const size_t n = xs.size();
  if (ys.size() != n) throw Error(ErrorKind::Shape, "Izergin determinant needs |x| = |y|");
  if (n == 0) return 1.0;
  double sc = std::max(set_scale(xs, eta), set_scale(ys, eta));
  // divided differences in y of 1/(c - y) over y_1..y_b equal 1/prod_{j<=b}(c - y_j)
  cplx pre = 1.0;
  Mat m(n, n);
  for (size_t a = 0; a < n; ++a) {
    cplx p0 = 1.0, p1 = 1.0;
    for (size_t b = 0; b < n; ++b) {
      cplx x = xs[a] - ys[b];
      guard_t(x, eta, sc);
      pre *= x + eta;
      p0 *= x;
      p1 *= x + eta;
      m(a, b) = mu / p0 - 1.0 / p1;
    }
  }
  // det[f(y_b)] = V(y) det[divided differences]; V(y)/V(reverse y) = (-1)^{n(n-1)/2}
  return sgn(static_cast<int>(n * (n - 1) / 2)) * pre * det(m) / vandermonde(xs);
}

Mat slavnov_matrix(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta) {
  const size_t M = xs.size(), L = ys.size();
  if (L < M) throw Error(ErrorKind::Shape, "generalized Slavnov needs |y| >= |x|");
  double sc = std::max(set_scale(xs, eta), set_scale(ys, eta));
  Mat H(L, L);
  for (size_t k = 0; k < L; ++k) {
    cplx y = ys[k];
    cplx e = mu * e_pm(xi, y, eta, Sign::Plus);
    cplx r = e_pm(xs, y, eta, Sign::Plus) / e_pm(xs, y, eta, Sign::Minus);
    for (size_t j = 0; j < L; ++j) {
      if (j < M) {
        guard_t(xs[j] - y, eta, sc);
        guard_t(y - xs[j], eta, sc);
        H(j, k) = e * t_fn(xs[j] - y, eta) - r * t_fn(y - xs[j], eta);
      } else {
        int pw = static_cast<int>(j - M);
        H(j, k) = e * std::pow(y, pw) - r * std::pow(y + eta, pw);
      }
    }
  }
  return H;
}

cplx slavnov_prefactor(const CList& xs, const CList& ys, cplx eta) {
  cplx pre = 1.0;
  for (cplx x : xs)
    for (cplx y : ys) pre *= x - y + eta;
  return pre / (vandermonde(xs) * vandermonde(reversed(ys)));
}

cplx gen_slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta) {
  return slavnov_prefactor(xs, ys, eta) * det(slavnov_matrix(mu, xs, ys, xi, eta));
}

cplx slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Shape, "Slavnov determinant needs |x| = |y|");
  return gen_slavnov(mu, xs, ys, xi, eta);
}

cplx gen_slavnov_checked(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta, double gate) {
  if (bethe_residuals_mu(mu, xs, xi, eta) > gate)
    throw Error(ErrorKind::NotOnShell, "x-set does not satisfy the Bethe equations");
  return gen_slavnov(mu, xs, ys, xi, eta);
}

cplx slavnov_checked(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta, double gate) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Shape, "Slavnov determinant needs |x| = |y|");
  return gen_slavnov_checked(mu, xs, ys, xi, eta, gate);
}

int slavnov_identity_sign(int M, int S) { return (M + S * (S + 1) / 2) % 2 ? -1 : 1; }

double IdentityCheck::residual() const { return rel_diff(lhs, rhs, 1e-300); }

IdentityCheck a_pm_duality_check(const CList& xs, const CList& f, cplx eta) {
  CList g(xs.size());
  for (size_t a = 0; a < xs.size(); ++a) g[a] = -e_ratio(xs, xs[a], eta) * f[a];
  return {a_pm(xs, f, eta, Sign::Plus), a_pm(xs, g, eta, Sign::Minus)};
}

std::pair<IdentityCheck, IdentityCheck> izergin_a_form_check(cplx mu, const CList& xs, const CList& ys, cplx eta) {
  const size_t n = xs.size();
  cplx I = izergin(mu, xs, ys, eta);
  CList f1(n), f2(n);
  for (size_t a = 0; a < n; ++a) {
    f1[a] = mu * e_pm(ys, xs[a], eta, Sign::Plus);
    f2[a] = mu * e_pm(xs, ys[a], eta, Sign::Minus);
  }
  double s = sgn(static_cast<int>(n));
  return {{I, s * a_pm(xs, f1, eta, Sign::Minus)}, {I, s * a_pm(ys, f2, eta, Sign::Plus)}};
}

IdentityCheck a_pm_unbalanced_check(cplx mu, const CList& xs, const CList& ys, cplx eta) {
  CList f1(ys.size()), f2(xs.size());
  for (size_t a = 0; a < ys.size(); ++a) f1[a] = mu * e_pm(xs, ys[a], eta, Sign::Minus);
  for (size_t a = 0; a < xs.size(); ++a) f2[a] = mu * e_pm(ys, xs[a], eta, Sign::Plus);
  int k = static_cast<int>(ys.size()) - static_cast<int>(xs.size());
  cplx pre = std::pow(1.0 - mu, k);
  return {a_pm(ys, f1, eta, Sign::Plus), pre * a_pm(xs, f2, eta, Sign::Minus)};
}

IdentityCheck zero_overlap_check(const CList& xs, const CList& ys, cplx eta, Sign s) {
  CList f(ys.size());
  Sign other = s == Sign::Plus ? Sign::Minus : Sign::Plus;
  for (size_t a = 0; a < ys.size(); ++a) f[a] = e_pm(xs, ys[a], eta, other);
  return {a_pm(ys, f, eta, s), 0.0};
}

SlavnovIdentity slavnov_a_form_check(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta) {
  cplx S = gen_slavnov(mu, xs, ys, xi, eta);
  CList u = concat(xs, ys);
  CList f(u.size());
  for (size_t a = 0; a < u.size(); ++a) f[a] = mu * e_pm(xi, u[a], eta, Sign::Plus);
  cplx A = a_pm(u, f, eta, Sign::Minus);
  int sg = slavnov_identity_sign(static_cast<int>(xs.size()), static_cast<int>(ys.size() - xs.size()));
  return {{S, static_cast<double>(sg) * A}, {S, A}};
}

SlavnovIdentity slavnov_izergin_check(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta) {
  cplx S = slavnov(mu, xs, ys, xi, eta);
  cplx I = izergin(mu, concat(xs, ys), xi, eta);
  return {{S, sgn(static_cast<int>(xs.size())) * I}, {S, I}};
}

LimitResult coinciding_limit(const std::function<cplx(double)>& evaluator, double eps0, double ratio, int levels,
                             double tol) {
  LimitResult out;
  std::vector<std::vector<cplx>> table(levels);
  for (int k = 0; k < levels; ++k) {
    double eps = eps0 * std::pow(ratio, k);
    cplx v = evaluator(eps);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::LimitFailure, "evaluator not finite along the schedule");
    out.samples.push_back(v);
    table[k].push_back(v);
    for (int j = 1; j <= k; ++j) {
      double f = std::pow(ratio, -j);  // error ~ eps^j
      table[k].push_back((f * table[k][j - 1] - table[k - 1][j - 1]) / (f - 1.0));
    }
  }
  out.value = table[levels - 1][levels - 1];
  out.error_estimate = std::abs(out.value - table[levels - 1][levels - 2]);
  double s = std::max(std::abs(out.value), 1.0);
  if (out.error_estimate > tol * s)
    throw Error(ErrorKind::LimitFailure, "Richardson table did not settle");
  return out;
}

}  // namespace sov
