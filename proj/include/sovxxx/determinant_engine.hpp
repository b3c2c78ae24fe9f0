#pragma once

#include <functional>
#include <vector>

#include "sovxxx/types.hpp"

namespace sov {

enum class Sign { Plus = 1, Minus = -1 };

cplx e_pm(const CList& set, cplx y, cplx eta, Sign s);
// E+_x(y) / E-_x(y); at y = x_m the coinciding factor contributes -1
cplx e_ratio(const CList& set, cplx y, cplx eta);
cplx a_pm(const CList& set, const CList& f_values, cplx eta, Sign s);

cplx t_mu(cplx x, cplx mu, cplx eta);
cplx t_fn(cplx x, cplx eta);  // eta / (x (x + eta))

cplx izergin(cplx mu, const CList& xs, const CList& ys, cplx eta);
// same value with the ys-columns replaced by divided differences, finite as ys coalesce
cplx izergin_divided(cplx mu, const CList& xs, const CList& ys, cplx eta);

// Slavnov matrix H^{(mu)} (|ys| = |xs|) and its normalized determinant
Mat slavnov_matrix(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta);
cplx slavnov_prefactor(const CList& xs, const CList& ys, cplx eta);
cplx slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta);
// |ys| = |xs| + S rows j > M are polynomial rows
cplx gen_slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta);
// on-shell gated versions throw NotOnShell above the residual gate
cplx slavnov_checked(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta, double gate = 1e-7);
cplx gen_slavnov_checked(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta,
                         double gate = 1e-7);

// sign relating the (generalized) Slavnov determinant to A^-_{x u y}[mu E+_xi]
int slavnov_identity_sign(int M, int S);

struct IdentityCheck {
  cplx lhs, rhs;
  double residual() const;
};

IdentityCheck a_pm_duality_check(const CList& xs, const CList& f, cplx eta);
// I = (-1)^N A^-_x[mu E+_y] and I = (-1)^N A^+_y[mu E-_x]
std::pair<IdentityCheck, IdentityCheck> izergin_a_form_check(cplx mu, const CList& xs, const CList& ys, cplx eta);
IdentityCheck a_pm_unbalanced_check(cplx mu, const CList& xs, const CList& ys, cplx eta);
IdentityCheck zero_overlap_check(const CList& xs, const CList& ys, cplx eta, Sign s);
// S_{M,M+S} vs the A^- form; corrected = with the sign above, printed = without
struct SlavnovIdentity {
  IdentityCheck corrected, printed;
};
SlavnovIdentity slavnov_a_form_check(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta);
// N = 2M: S_M(x, y) against the Izergin determinant of x u y
SlavnovIdentity slavnov_izergin_check(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta);

struct LimitResult {
  cplx value;
  double error_estimate;
  std::vector<cplx> samples;
};
// Richardson extrapolation of evaluator(eps) along a geometric schedule eps_k = eps0 * ratio^k
LimitResult coinciding_limit(const std::function<cplx(double)>& evaluator, double eps0 = 1e-2,
                             double ratio = 0.5, int levels = 6, double tol = 1e-4);

}  // namespace sov
