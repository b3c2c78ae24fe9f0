#include "sovxxx/aba_bridge.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sovxxx/complex_poly.hpp"
#include "sovxxx/determinant_engine.hpp"
#include "sovxxx/form_factors.hpp"
#include "sovxxx/sov_states.hpp"

namespace sov {

namespace {
double sgn(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

cplx best_ratio(const Eigen::Ref<const Vec>& target, const Eigen::Ref<const Vec>& v, double* spread) {
  Eigen::Index i;
  v.cwiseAbs().maxCoeff(&i);
  cplx c = target(i) / v(i);
  *spread = (target - c * v).norm() / std::max(target.norm(), 1e-300);
  return c;
}
}  // namespace

Vec bethe_state(const ChainParams& p, const CList& roots, Flavor flavor) {
  Vec v = flavor == Flavor::BOnUp ? ref_up(p.N()) : ref_down(p.N());
  for (cplx l : roots) {
    Monodromy T = monodromy(p, l);
    v = (flavor == Flavor::BOnUp ? T.B : T.C) * v;
  }
  return v;
}

RowVec bethe_dual_state(const ChainParams& p, const CList& roots) {
  RowVec v = ref_down(p.N()).transpose();
  for (cplx l : roots) v = v * monodromy(p, l).B;
  return v;
}

CorrespondenceCheck correspondence_check(const ChainParams& p, const EigenRecord& rec) {
  const int N = p.N(), R = rec.R;
  CorrespondenceCheck out;
  GlobalOps g = global_operators(p);
  Vec psi = bethe_state(p, rec.bethe_roots, Flavor::COnDown);
  Vec v = g.GU.adjoint() * psi;  // Gamma_U is real orthogonal
  out.ratio = best_ratio(rec.sov_ket, v, &out.spread);
  out.expected = sgn(static_cast<long>(N) * (R - 1)) * std::pow(2.0, 0.5 * N - R);
  RowVec w = bethe_dual_state(p, rec.bethe_roots) * g.GU;
  out.bra_ratio = best_ratio(rec.sov_bra.transpose(), w.transpose(), &out.bra_spread);
  cplx lam(0.31, -0.27);
  Mat Tt = transfer_twisted(p, lam);
  cplx t = rec.tau(lam);
  out.twisted_residual = (Tt * psi - t * psi).norm() / std::max(std::max(std::abs(t), 1.0) * psi.norm(), 1e-300);
  return out;
}

OneExplicitCheck one_explicit_check(const ChainParams& p) {
  const int N = p.N();
  SovBasis basis(p);
  Eigen::Vector2cd m1(1.0, -1.0), p1(1.0, 1.0);
  Vec prod_m = Vec::Ones(1), prod_p = Vec::Ones(1);
  for (int s = 0; s < N; ++s) {
    Vec a(prod_m.size() * 2), b(prod_p.size() * 2);
    for (Eigen::Index i = 0; i < prod_m.size(); ++i) {
      a.segment<2>(2 * i) = prod_m(i) * m1;
      b.segment<2>(2 * i) = prod_p(i) * p1;
    }
    prod_m = a;
    prod_p = b;
  }
  Vec one = basis.right_state(spec_one(p, Side::Right));
  RowVec one_l = basis.left_state(spec_one(p, Side::Left));
  Vec alt = basis.right_state(spec_one_alt(p, Side::Right));
  RowVec alt_l = basis.left_state(spec_one_alt(p, Side::Left));
  GlobalOps g = global_operators(p);
  Vec via_gamma = std::pow(-std::sqrt(2.0), N) * (g.GU.adjoint() * ref_down(N));
  OneExplicitCheck out;
  double s = prod_m.norm();
  out.ket_vs_product = (one - prod_m).norm() / s;
  out.ket_vs_gamma = (one - via_gamma).norm() / s;
  out.bra_vs_product = (one_l.transpose() - prod_m).norm() / s;
  out.alt_ket = (alt - prod_p).norm() / s;
  out.alt_bra = (alt_l.transpose() - prod_p).norm() / s;
  return out;
}

cplx column_substituted_slavnov(cplx mu, const CList& xs, const CList& ys, const CList& xi, cplx eta, int m, cplx z) {
  Mat H = slavnov_matrix(mu, xs, ys, xi, eta);
  cplx e_y = e_pm(xi, ys[m], eta, Sign::Plus);
  cplx d_over_a = 1.0;
  for (cplx x : xi) d_over_a *= (z - x) / (z - x + eta);
  cplx r = e_ratio(xs, z, eta);
  for (size_t j = 0; j < xs.size(); ++j)
    H(j, m) = e_y * (mu * t_fn(xs[j] - z, eta) - r * t_fn(z - xs[j], eta) * d_over_a);
  return slavnov_prefactor(xs, ys, eta) * det(H);
}

BetheCache bethe_cache(const ChainParams& p, const EigenRecord& rec) {
  return {bethe_dual_state(p, rec.bethe_roots), bethe_state(p, rec.bethe_roots, Flavor::COnDown)};
}

AbaSovCrosscheck aba_sov_crosscheck(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site) {
  return aba_sov_crosscheck(p, bra, ket, site, global_operators(p), bethe_cache(p, bra), bethe_cache(p, ket));
}

AbaSovCrosscheck aba_sov_crosscheck(const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site,
                                const GlobalOps& g, const BetheCache& bra_states, const BetheCache& ket_states) {
  if (bra.R != ket.R) throw Error(ErrorKind::Shape, "ABA/SoV comparison needs equal Q-degrees");
  const int N = p.N(), R = bra.R;
  const cplx eta = p.eta;
  const cplx xn = p.xi[site - 1];
  const CList& lam = bra.bethe_roots;
  const CList& lamp = ket.bethe_roots;
  const bool same = same_eigenstate(bra, ket);
  AbaSovCrosscheck out;

  Mat H;
  if (same) {
    auto [F, P] = f_equal_matrices(p, lam, lam, site, true);
    H = Mat(R, R);
    for (int j = 0; j < R; ++j)
      for (int k = 0; k < R; ++k) H(j, k) = -F(j, k) / eval_roots(lam, lam[k] - eta);
  } else {
    H = slavnov_matrix(-1.0, lam, lamp, p.xi, eta);
  }
  cplx pre = slavnov_prefactor(lam, lamp, eta);
  cplx base = pre * det(H);
  cplx sum_sov = 0.0, sum_aba = 0.0, sum_plain = 0.0;
  for (int m = 0; m < R; ++m) {
    cplx c = lamp[m];
    Mat Hm = H;
    for (int j = 0; j < R; ++j) Hm(j, m) = -a_of(p, c) / d_of(p, c) * t_fn(lam[j] - xn, eta);
    cplx Sm = pre * det(Hm);
    cplx qm = eval_roots(lam, c - eta);
    cplx wS = (a_of(p, c) * qm + d_of(p, c) * eval_roots(lam, c + eta)) / (a_of(p, c) * qm);
    cplx wA = 2.0 * eval_roots(lamp, c - eta) / qm;
    sum_sov += wS * Sm;
    sum_aba += wA * Sm;
    sum_plain += Sm;
  }
  out.sov_value = base + sum_sov;
  out.aba_value = base + sum_aba;
  out.diff = std::abs(out.sov_value - out.aba_value) / std::max({std::abs(out.sov_value), std::abs(out.aba_value), 1e-300});

  out.dense_sz = dense_matrix_element(bra_states.dual, g.sigma_z[site - 1], ket_states.c_state);
  cplx f = eval_roots(lam, xn) / eval_roots(lamp, xn);
  for (cplx l : lam) f *= a_n_of(p, site, l);
  for (cplx l : lamp) f *= d_n_of(p, site, l);
  if (same) {
    out.naive_predicted = f * out.aba_value;
    out.aba_predicted = -f * (base - 2.0 * sum_plain);
  } else {
    out.naive_predicted = f * out.aba_value;
    out.aba_predicted = f * out.aba_value;
  }
  double ds = std::max(std::abs(out.dense_sz), 1e-300);
  out.aba_vs_dense = std::abs(out.aba_predicted - out.dense_sz) / ds;
  out.naive_vs_dense = std::abs(out.naive_predicted - out.dense_sz) / ds;

  cplx sm = dense_matrix_element(bra.sov_bra, g.sigma_minus[site - 1], ket.sov_ket);
  cplx rel = std::pow(2.0, N - 2 * R - 1) * out.dense_sz;
  out.sigma_minus_relation = std::abs(sm - rel) / std::max({std::abs(sm), std::abs(rel), 1e-300});
  return out;
}

double gamma_u_sigma_relation(const ChainParams& p, int site) {
  GlobalOps g = global_operators(p);
  Mat lhs = g.GU * g.sigma_minus[site - 1] * g.GU.adjoint();
  Mat rhs = 0.5 * (g.sigma_z[site - 1] - g.sigma_plus[site - 1] + g.sigma_minus[site - 1]);
  return op_norm(lhs - rhs);
}

double isospectrality_check(const ChainParams& p, cplx lambda) {
  auto sorted_eigs = [](const Mat& m) {
    Eigen::ComplexEigenSolver<Mat> es(m, false);
    CList v(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
      return std::abs(a.real() - b.real()) > 1e-7 ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
  };
  CList a = sorted_eigs(transfer_antiperiodic(p, lambda));
  CList b = sorted_eigs(transfer_twisted(p, lambda));
  double worst = 0.0, s = 1.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(a[i]));
  }
  return worst / s;
}


double gamma_u_similarity_check(const ChainParams& p, cplx lambda) {
  GlobalOps g = global_operators(p);
  Mat tm = transfer_twisted(p, lambda);
  Mat lhs = g.GU * transfer_antiperiodic(p, lambda) * g.GU.adjoint();
  return op_norm(lhs - tm) / std::max(op_norm(tm), 1e-300);
}

}  // namespace sov
