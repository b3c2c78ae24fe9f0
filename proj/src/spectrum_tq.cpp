#include "sovxxx/spectrum_tq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "sovxxx/sov_states.hpp"

namespace sov {

namespace {

CList random_points(const ChainParams& p, CounterRng& rng, int count) {
  double s = chain_scale(p);
  CList pts;
  while (static_cast<int>(pts.size()) < count) {
    cplx z(rng.uniform(-1.5, 1.5) * s, rng.uniform(-1.5, 1.5) * s);
    bool ok = true;
    for (cplx x : p.xi)
      if (std::abs(z - x) < 0.05 * s || std::abs(z - x + p.eta) < 0.05 * s) ok = false;
    if (ok) pts.push_back(z);
  }
  return pts;
}

cplx rayleigh(const Mat& T, const Vec& right, const RowVec& left) {
  return (left * T * right)(0, 0) / (left * right)(0, 0);
}

void check_biorthogonal(const Vec& right, const RowVec& left) {
  cplx ov = (left * right)(0, 0);
  if (std::abs(ov) < 1e-12 * right.norm() * left.norm())
    throw Error(ErrorKind::Biorthogonality, "left/right eigenvectors have vanishing overlap");
}

Poly extract_tau_cached(const std::vector<Mat>& Txi, const ChainParams& p, const Vec& right,
                        const RowVec& left) {
  CList vals;
  for (const Mat& T : Txi) vals.push_back(rayleigh(T, right, left));
  return lagrange_interpolate(p.xi, vals);
}

}  // namespace

Poly extract_tau_at(const ChainParams& p, const Vec& right, const RowVec& left, const CList& points) {
  check_biorthogonal(right, left);
  CList vals;
  for (cplx z : points) vals.push_back(rayleigh(transfer_antiperiodic(p, z), right, left));
  return lagrange_interpolate(points, vals);
}

TauFit extract_tau(const ChainParams& p, const Vec& right, const RowVec& left) {
  check_biorthogonal(right, left);
  TauFit out;
  out.tau = extract_tau_at(p, right, left, p.xi);
  CounterRng rng(0x7a0, 3);
  cplx z = random_points(p, rng, 1)[0];
  cplx direct = rayleigh(transfer_antiperiodic(p, z), right, left);
  out.heldout_residual = std::abs(out.tau(z) - direct) / std::max(std::abs(direct), 1.0);
  return out;
}

double check_discrete_system(const ChainParams& p, const Poly& tau) {
  double worst = 0.0;
  for (cplx x : p.xi) {
    cplx ad = a_of(p, x) * d_of(p, x - p.eta);
    worst = std::max(worst, std::abs(tau(x) * tau(x - p.eta) + ad) / std::max(std::abs(ad), 1e-300));
  }
  return worst;
}

double functional_tq_residual(const ChainParams& p, const Poly& tau, const Poly& q, const CList& points) {
  double worst = 0.0;
  for (cplx z : points) {
    cplx t1 = a_of(p, z) * q(z - p.eta);
    cplx t2 = d_of(p, z) * q(z + p.eta);
    cplx lhs = tau(z) * q(z);
    double s = std::max({std::abs(t1), std::abs(t2), std::abs(lhs), 1e-300});
    worst = std::max(worst, std::abs(lhs + t1 - t2) / s);
  }
  return worst;
}

QSolve solve_Q_from_tau(const ChainParams& p, const Poly& tau, CounterRng& rng) {
  const int n = p.N();
  cplx center = 0.0;
  for (cplx x : p.xi) center += x;
  center /= static_cast<double>(n);
  double radius = 2.0 * std::abs(p.eta);
  for (cplx x : p.xi) radius = std::max(radius, std::abs(x - center) + 2.0 * std::abs(p.eta));

  for (int attempt = 1; attempt <= 20; ++attempt) {
    double r = radius * std::sqrt(rng.uniform());
    double th = rng.uniform(0.0, 2.0 * M_PI);
    cplx aux = center + std::polar(r, th);
    bool close = false;
    for (cplx x : p.xi)
      for (int h = -1; h <= 1; ++h)
        if (std::abs(aux - x - static_cast<double>(h) * p.eta) < p.margin) close = true;
    if (close) continue;

    CList pts = p.xi;
    pts.push_back(aux);
    Mat C(n, n);
    Vec rhs(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        cplx prod = 1.0;
        for (int c = 0; c <= n; ++c)
          if (c != b) prod *= (p.xi[a] - pts[c] - p.eta) / (p.xi[b] - pts[c]);
        C(a, b) = prod + (a == b ? tau(p.xi[a]) / a_of(p, p.xi[a]) : cplx(0.0));
      }
      cplx prod = 1.0;
      for (int l = 0; l < n; ++l) prod *= (p.xi[a] - p.xi[l] - p.eta) / (aux - p.xi[l]);
      rhs(a) = -prod;
    }
    Eigen::JacobiSVD<Mat> svd(C);
    const auto& sv = svd.singularValues();
    double cond = sv(n - 1) > 0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) continue;
    Vec qv = C.fullPivLu().solve(rhs);
    CList vals(qv.data(), qv.data() + n);
    vals.push_back(1.0);
    double mx = 0.0;
    for (cplx v : vals) mx = std::max(mx, std::abs(v));
    bool vanishing = false;
    for (int a = 0; a < n; ++a)
      if (std::abs(vals[a]) < 1e-8 * mx) vanishing = true;
    if (vanishing) continue;

    Poly q = lagrange_interpolate(pts, vals);
    int deg = effective_degree(q, kQDegreeTol);
    if (deg < 0) continue;
    q = make_monic(Poly(CList(q.c.begin(), q.c.begin() + deg + 1)));
    return {q, aux, cond, attempt};
  }
  throw Error(ErrorKind::Retry, "no admissible auxiliary point for the T-Q system");
}

QSolve solve_Q_from_tau(const ChainParams& p, const Poly& tau, std::uint64_t seed) {
  CounterRng rng(seed, 11);
  return solve_Q_from_tau(p, tau, rng);
}

int q_degree_from_tau(const ChainParams& p, const Poly& tau) {
  const int n = p.N();
  cplx lead = n - 1 < static_cast<int>(tau.c.size()) ? tau.c[n - 1] : cplx(0.0);
  double r = 0.5 * ((lead / p.eta).real() + n);
  return static_cast<int>(std::lround(r));
}

Poly solve_Q_functional(const ChainParams& p, const Poly& tau, int degree, const CList& points) {
  if (degree == 0) return Poly::constant(1.0);
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Mat A(m, degree);
  Vec rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    cplx z = points[i];
    cplx t = tau(z), a = a_of(p, z), d = d_of(p, z);
    double s = std::max({std::abs(t), std::abs(a), std::abs(d), 1e-300});
    auto row_val = [&](int k) {
      return (t * std::pow(z, k) + a * std::pow(z - p.eta, k) - d * std::pow(z + p.eta, k)) / s;
    };
    for (int k = 0; k < degree; ++k) A(i, k) = row_val(k);
    rhs(i) = -row_val(degree);
  }
  Vec c = A.colPivHouseholderQr().solve(rhs);
  CList coeffs(c.data(), c.data() + degree);
  coeffs.push_back(1.0);
  return Poly(coeffs);
}

double bethe_residuals(const ChainParams& p, const CList& roots) {
  double s = chain_scale(p);
  double worst = 0.0;
  for (cplx l : roots) {
    for (cplx x : p.xi)
      if (std::abs(l - x) <= 1e-8 * s) throw Error(ErrorKind::PoleCollision, "Bethe root on an inhomogeneity");
  }
  for (size_t a = 0; a < roots.size(); ++a) {
    cplx v = a_of(p, roots[a]) / d_of(p, roots[a]);
    for (size_t b = 0; b < roots.size(); ++b)
      v *= (roots[a] - roots[b] - p.eta) / (roots[a] - roots[b] + p.eta);
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return worst;
}

double bethe_residuals_mu(cplx mu, const CList& roots, const CList& xi, cplx eta) {
  double worst = 0.0;
  for (size_t m = 0; m < roots.size(); ++m) {
    cplx v = mu;
    for (cplx x : xi) v *= (roots[m] - x + eta) / (roots[m] - x);
    for (size_t n = 0; n < roots.size(); ++n)
      if (n != m) v *= (roots[m] - roots[n] - eta) / (roots[m] - roots[n] + eta);
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return worst;
}

PQ pq_decomposition(const ChainParams& p, const Poly& tau, const Poly& q_tau, const Poly& q_minus_tau) {
  PQ out;
  bool swap = q_minus_tau.degree() < q_tau.degree();
  out.q = swap ? q_minus_tau : q_tau;
  Poly pp = swap ? q_tau : q_minus_tau;
  if (out.q.degree() + pp.degree() != p.N())
    throw Error(ErrorKind::SpectrumPairing, "deg q + deg p differs from N");
  const cplx eta = p.eta;
  auto w_hat = [&](const Poly& P, cplx z) { return 0.5 * (P(z) * out.q(z - eta) + out.q(z) * P(z - eta)); };
  cplx z0 = p.xi[0] - eta;
  out.scale = d_of(p, z0) / w_hat(pp, z0);
  out.p = out.scale * pp;

  CounterRng rng(0x9a, 5);
  CList pts = random_points(p, rng, 2 * p.N());
  double wr = 0.0;
  for (cplx z : pts) {
    cplx d = d_of(p, z);
    wr = std::max(wr, std::abs(w_hat(out.p, z) - d) / std::max(std::abs(d), 1e-300));
  }
  double dscale = std::abs(d_of(p, z0));
  wr = std::max(wr, std::abs(w_hat(out.p, p.xi[0])) / std::max(dscale, 1e-300));
  out.wronskian_residual = wr;

  auto rec = [&](cplx z) { return 0.5 * (out.p(z - eta) * out.q(z + eta) - out.q(z - eta) * out.p(z + eta)); };
  cplx t0 = tau(pts[0]);
  out.sign = std::abs(rec(pts[0]) - t0) <= std::abs(rec(pts[0]) + t0) ? 1 : -1;
  double rr = 0.0;
  for (cplx z : pts) {
    cplx t = tau(z);
    rr = std::max(rr, std::abs(static_cast<double>(out.sign) * rec(z) - t) / std::max(std::abs(t), 1.0));
  }
  out.reconstruction_residual = rr;
  return out;
}

static double coeff_distance(const Poly& a, const Poly& b) {
  size_t n = std::max(a.c.size(), b.c.size());
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cplx x = i < a.c.size() ? a.c[i] : cplx(0.0);
    cplx y = i < b.c.size() ? b.c[i] : cplx(0.0);
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

double min_tau_gap(const std::vector<EigenRecord>& recs) {
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < recs.size(); ++i)
    for (size_t j = 0; j < i; ++j) gap = std::min(gap, coeff_distance(recs[i].tau, recs[j].tau));
  return gap;
}

std::vector<EigenRecord> full_spectrum(const ChainParams& p, const SpectrumOptions& opt) {
  validate_params(p);
  auto pairs = diagonalize_transfer(p);
  std::vector<Mat> Txi;
  for (cplx x : p.xi) Txi.push_back(transfer_antiperiodic(p, x));

  CounterRng rng(opt.seed, 17);
  CounterRng rng2(opt.seed, 19);
  CounterRng prng(opt.seed, 23);
  CList test_pts = random_points(p, prng, 2 * p.N() + 2);

  std::vector<EigenRecord> recs;
  for (const auto& ep : pairs) {
    EigenRecord r;
    r.eigenvalue_at_lambda0 = ep.eigenvalue;
    r.dense_right = ep.right;
    r.dense_left = ep.left;
    check_biorthogonal(ep.right, ep.left);
    r.tau = extract_tau_cached(Txi, p, ep.right, ep.left);
    {
      cplx z = test_pts[0];
      cplx direct = rayleigh(transfer_antiperiodic(p, z), ep.right, ep.left);
      r.residuals.tau_heldout = std::abs(r.tau(z) - direct) / std::max(std::abs(direct), 1.0);
    }
    r.residuals.discrete_system = check_discrete_system(p, r.tau);
    QSolve s1 = solve_Q_from_tau(p, r.tau, rng);
    QSolve s2 = solve_Q_from_tau(p, r.tau, rng2);
    r.q_tau = s1.q;
    r.R = r.q_tau.degree();
    r.residuals.q_uniqueness = coeff_distance(s1.q, s2.q);
    r.residuals.functional_tq = functional_tq_residual(p, r.tau, r.q_tau, test_pts);
    r.bethe_roots = poly_roots(r.q_tau);
    r.residuals.bethe = bethe_residuals(p, r.bethe_roots);
    recs.push_back(std::move(r));
  }

  // pair tau with -tau by nearest match
  for (size_t i = 0; i < recs.size(); ++i) {
    Poly neg = cplx(-1.0) * recs[i].tau;
    double best = std::numeric_limits<double>::infinity(), second = best;
    int idx = -1;
    for (size_t j = 0; j < recs.size(); ++j) {
      double d = coeff_distance(neg, recs[j].tau);
      if (d < best) {
        second = best;
        best = d;
        idx = static_cast<int>(j);
      } else if (d < second) {
        second = d;
      }
    }
    double tscale = 1.0;
    for (cplx c : recs[i].tau.c) tscale = std::max(tscale, std::abs(c));
    if (idx < 0 || best > 1e-6 * tscale || (recs.size() > 1 && second < 1e3 * best && second < 1e-3 * tscale))
      throw Error(ErrorKind::SpectrumPairing, "-tau not found in the extracted spectrum");
    recs[i].partner = idx;
  }
  for (auto& r : recs) {
    const EigenRecord& partner = recs[r.partner];
    r.q_minus_tau = partner.q_tau;
    r.hat_roots = partner.bethe_roots;
  }
  for (auto& r : recs) {
    r.pq = pq_decomposition(p, r.tau, r.q_tau, r.q_minus_tau);
    r.residuals.wronskian = r.pq.wronskian_residual;
    r.residuals.pq_reconstruction = r.pq.reconstruction_residual;
  }

  if (opt.build_states) {
    SovBasis basis(p);
    CounterRng lrng(opt.seed, 29);
    CList lpts = random_points(p, lrng, 2);
    for (auto& r : recs) {
      r.sov_ket = basis.right_state(spec_from_roots(p, r.bethe_roots, Side::Right));
      r.sov_bra = basis.left_state(spec_from_roots(p, r.bethe_roots, Side::Left));
      double worst = 0.0;
      for (cplx z : lpts) {
        Mat T = transfer_antiperiodic(p, z);
        cplx t = r.tau(z);
        double s = std::max(r.sov_ket.norm() * std::max(std::abs(t), 1.0), 1e-300);
        worst = std::max(worst, (T * r.sov_ket - t * r.sov_ket).norm() / s);
        double sb = std::max(r.sov_bra.norm() * std::max(std::abs(t), 1.0), 1e-300);
        worst = std::max(worst, (r.sov_bra * T - t * r.sov_bra).norm() / sb);
      }
      r.residuals.eigenstate = worst;
    }
  }
  return recs;
}

}  // namespace sov
