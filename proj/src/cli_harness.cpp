#include "sovxxx/cli_harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sovxxx/aba_bridge.hpp"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/determinant_engine.hpp"
#include "sovxxx/form_factors.hpp"
#include "sovxxx/rng.hpp"
#include "sovxxx/scalar_products.hpp"
#include "sovxxx/sov_states.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace sov {

using json = nlohmann::ordered_json;

namespace {

constexpr int kMaxSites = 8;

bool is_known_suite(const std::string& s) {
  const auto& all = all_suites();
  return std::find(all.begin(), all.end(), s) != all.end();
}

double rel_to(cplx v, cplx ref, double floor) { return std::abs(v - ref) / std::max(std::abs(ref), floor); }

struct Context {
  const RunConfig& cfg;
  ChainParams p;
  std::vector<ReportRow> rows;
  json summaries = json::object();
  std::optional<std::vector<EigenRecord>> spectrum;
  std::optional<GlobalOps> ops;

  double tol(const std::string& suite, double fallback) const {
    auto it = cfg.tolerances.find(suite);
    return it == cfg.tolerances.end() ? fallback : it->second;
  }

  const GlobalOps& global() {
    if (!ops) ops = global_operators(p);
    return *ops;
  }

  const std::vector<EigenRecord>& records() {
    if (!spectrum) {
      SpectrumOptions opt;
      opt.seed = cfg.seed;
      spectrum = full_spectrum(p, opt);
    }
    return *spectrum;
  }

  CounterRng rng(std::uint64_t stream) const { return CounterRng(cfg.seed, 0x5100 + stream); }

  void residual(const std::string& suite, const std::string& name, const std::string& formula, double r,
                double tolerance, bool diagnostic = false) {
    ReportRow row{suite, name, formula, cplx(r), cplx(0.0), r, tolerance, r <= tolerance, diagnostic};
    rows.push_back(row);
  }

  void compare(const std::string& suite, const std::string& name, const std::string& formula, cplx value,
               cplx reference, double tolerance, bool diagnostic = false, double floor = 1e-300) {
    double e = rel_to(value, reference, floor);
    rows.push_back({suite, name, formula, value, reference, e, tolerance, e <= tolerance, diagnostic});
  }

  void at_least(const std::string& suite, const std::string& name, const std::string& formula, double value,
                double bound) {
    double e = value >= bound ? 0.0 : bound - value;
    rows.push_back({suite, name, formula, cplx(value), cplx(bound), e, 0.0, value >= bound, false});
  }
};

CList random_points(CounterRng& rng, int count, double spread) {
  CList out;
  for (int i = 0; i < count; ++i) out.push_back(rng.complex_normal(spread, spread));
  return out;
}

cplx random_lambda(const Context& c, CounterRng& rng) {
  double s = chain_scale(c.p);
  return rng.complex_normal(s, s);
}

double commutator_norm(const Mat& a, const Mat& b) {
  return op_norm(a * b - b * a) / std::max(op_norm(a) * op_norm(b), 1e-300);
}

// |<bra|op|ket>| error against a dense value, scaled by the vector norms when the element is tiny
double element_error(cplx value, cplx dense, double norm_scale) {
  return std::abs(value - dense) / std::max(std::abs(dense), 1e-3 * norm_scale);
}

const EigenRecord* find_tau(const std::vector<EigenRecord>& recs, cplx tau_at_zero) {
  const EigenRecord* best = nullptr;
  double d = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    double e = std::abs(r.tau(0.0) - tau_at_zero);
    if (e < d) d = e, best = &r;
  }
  return best;
}

// ---------------------------------------------------------------------------------------------

void suite_oracle(Context& c) {
  const std::string S = "oracle";
  const double tol = c.tol(S, 1e-9);
  CounterRng rng = c.rng(1);
  const GlobalOps& g = c.global();
  double comm = 0, qdet = 0, sx = 0, gx = 0, sim = 0, iso = 0;
  for (int k = 0; k < 3; ++k) {
    cplx l = random_lambda(c, rng), m = random_lambda(c, rng);
    Mat tl = transfer_antiperiodic(c.p, l), tm = transfer_antiperiodic(c.p, m);
    comm = std::max(comm, commutator_norm(tl, tm));
    comm = std::max(comm, commutator_norm(transfer_twisted(c.p, l), transfer_twisted(c.p, m)));
    qdet = std::max(qdet, quantum_det_check(c.p, l));
    sx = std::max(sx, commutator_norm(g.Sx, tl));
    gx = std::max(gx, commutator_norm(g.Gx, tl));
    sim = std::max(sim, gamma_u_similarity_check(c.p, l));
    iso = std::max(iso, isospectrality_check(c.p, l));
  }
  c.residual(S, "transfer_commutativity", "[T(l),T(m)] = 0 for both twists", comm, tol);
  c.residual(S, "quantum_determinant", "A(l)D(l-eta) - B(l)C(l-eta) = a(l)d(l-eta)", qdet, tol);
  c.residual(S, "sx_symmetry", "[S^x, T(l)] = 0", sx, tol);
  c.residual(S, "gx_symmetry", "[Gamma^x, T(l)] = 0", gx, tol);
  c.residual(S, "gamma_u_similarity", "Gamma_U T(l) Gamma_U^{-1} = A(l) - D(l)", sim, tol);
  c.residual(S, "isospectrality", "spec T(l) = spec (A(l) - D(l))", iso, tol);

  // Gamma^x = (-i)^N exp(i pi S^x / 2)
  Eigen::SelfAdjointEigenSolver<Mat> es(g.Sx);
  Vec phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, M_PI / 2.0)).array().exp();
  Mat ex = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  Mat rhs = std::pow(cplx(0.0, -1.0), c.p.N()) * ex;
  c.residual(S, "gx_exponential", "Gamma^x = (-i)^N exp(i pi S^x/2)", op_norm(g.Gx - rhs), tol);
  Mat id = Mat::Identity(g.GU.rows(), g.GU.cols());
  c.residual(S, "gamma_u_unitary", "Gamma_U Gamma_U^+ = 1", op_norm(g.GU * g.GU.adjoint() - id), 1e-12);
}

void suite_sov(Context& c) {
  const std::string S = "sov";
  const double tol = c.tol(S, 1e-9);
  CounterRng rng = c.rng(2);
  SovBasis basis(c.p);
  double d_res = 0.0;
  for (int k = 0; k < 3; ++k) d_res = std::max(d_res, basis.d_eigen_residual(random_lambda(c, rng)));
  c.residual(S, "d_eigenrelations", "D(l)|h> = d_h(l)|h>, <h|D(l) = d_h(l)<h|", d_res, tol);
  auto gram = basis.gram_check();
  c.residual(S, "gram_matrix", "<h|k> diagonal, Vandermonde-ratio weights", gram.gram_residual, tol);
  c.residual(S, "identity_decomposition", "sum_h |h><h| / <h|h> = 1", gram.decomposition_residual, tol);

  double shift = 0.0, shift_printed = 0.0;
  const unsigned dim = 1u << c.p.N();
  for (unsigned mask = 0; mask < dim; ++mask) {
    auto h = bits_of(mask, c.p.N());
    auto a = vandermonde_shift_check(c.p, h);
    auto b = vandermonde_shift_check_printed(c.p, h);
    shift = std::max(shift, rel_diff(a.lhs, a.rhs));
    shift_printed = std::max(shift_printed, rel_diff(b.lhs, b.rhs));
  }
  c.residual(S, "vandermonde_shift", "V(xi - h eta) prod ratios = V(xi + h eta)", shift, tol);
  c.residual(S, "vandermonde_shift_printed_sign", "same with the (-1)^N prefactor", shift_printed, tol, true);

  auto one = one_explicit_check(c.p);
  c.residual(S, "one_ket_product", "|1> = (x)(1,-1)", one.ket_vs_product, 1e-12);
  c.residual(S, "one_bra_product", "<1| = row (x)(1,-1)", one.bra_vs_product, 1e-12);
  c.residual(S, "one_alt_ket_product", "|1_alt> = (x)(1,1)", one.alt_ket, 1e-12);
  c.residual(S, "one_alt_bra_product", "<1_alt| = row (x)(1,1)", one.alt_bra, 1e-12);

  // separate states of random polynomials: SoV sum against prod D(root) on |1>
  double aba = 0.0;
  for (int k = 0; k < 4; ++k) {
    int R = k % (c.p.N() + 1);
    CList roots = random_points(rng, R, 1.5);
    Vec sov_r = basis.right_state(spec_from_roots(c.p, roots, Side::Right));
    Vec aba_r = separate_state_aba_right(c.p, roots, BaseState::One);
    RowVec sov_l = basis.left_state(spec_from_roots(c.p, roots, Side::Left));
    RowVec aba_l = separate_state_aba_left(c.p, roots, BaseState::One);
    aba = std::max(aba, (sov_r - aba_r).norm() / sov_r.norm());
    aba = std::max(aba, (sov_l - aba_l).norm() / sov_l.norm());
  }
  c.residual(S, "separate_state_d_form", "|Q> = (-1)^{RN} prod D(l_j)|1>", aba, tol);
}

void suite_spectrum(Context& c) {
  const std::string S = "spectrum";
  const auto& recs = c.records();
  const int n = c.p.N();
  const double dim = std::ldexp(1.0, n);
  Residuals worst;
  double pairing = 0.0, ortho = 0.0;
  for (const auto& r : recs) {
    const Residuals& x = r.residuals;
    worst.discrete_system = std::max(worst.discrete_system, x.discrete_system);
    worst.functional_tq = std::max(worst.functional_tq, x.functional_tq);
    worst.bethe = std::max(worst.bethe, x.bethe);
    worst.wronskian = std::max(worst.wronskian, x.wronskian);
    worst.pq_reconstruction = std::max(worst.pq_reconstruction, x.pq_reconstruction);
    worst.q_uniqueness = std::max(worst.q_uniqueness, x.q_uniqueness);
    worst.tau_heldout = std::max(worst.tau_heldout, x.tau_heldout);
    worst.eigenstate = std::max(worst.eigenstate, x.eigenstate);
    if (r.partner < 0) {
      pairing = std::numeric_limits<double>::infinity();
    } else {
      const Poly& t2 = recs[r.partner].tau;
      double s = 0.0, m = 0.0;
      for (size_t i = 0; i < std::max(r.tau.c.size(), t2.c.size()); ++i) {
        cplx a = i < r.tau.c.size() ? r.tau.c[i] : 0.0;
        cplx b = i < t2.c.size() ? t2.c[i] : 0.0;
        s = std::max(s, std::abs(a + b));
        m = std::max(m, std::abs(a));
      }
      pairing = std::max(pairing, s / std::max(m, 1e-300));
    }
  }
  for (size_t i = 0; i < recs.size(); ++i)
    for (size_t j = 0; j < recs.size(); ++j) {
      if (i == j) continue;
      double nrm = recs[i].sov_bra.norm() * recs[j].sov_ket.norm();
      ortho = std::max(ortho, std::abs(pair(recs[i].sov_bra, recs[j].sov_ket)) / nrm);
    }
  double gap = min_tau_gap(recs);
  c.compare(S, "eigenstate_count", "2^N eigenvalues", cplx(double(recs.size())), cplx(dim), 0.0);
  c.at_least(S, "distinct_tau_gap", "min ||tau - tau'|| > 1e-8", gap, 1e-8);
  c.residual(S, "discrete_system", "tau(xi)tau(xi-eta) = -a(xi)d(xi-eta)", worst.discrete_system, c.tol(S, 1e-8));
  c.residual(S, "functional_tq", "tau Q = -a Q(l-eta) + d Q(l+eta)", worst.functional_tq, c.tol(S, 1e-8));
  c.residual(S, "bethe_equations", "a/d (l_a) prod (l_a-l_b-eta)/(l_a-l_b+eta) = 1", worst.bethe, c.tol(S, 1e-7));
  c.residual(S, "q_uniqueness", "Q independent of the auxiliary point", worst.q_uniqueness, c.tol(S, 1e-9));
  c.residual(S, "tau_pairing", "tau in spectrum => -tau in spectrum", pairing, c.tol(S, 1e-9));
  c.residual(S, "pq_wronskian", "P(l)Q(l-eta) + P(l-eta)Q(l) ~ d(l)", worst.wronskian, c.tol(S, 1e-8));
  c.residual(S, "pq_reconstruction", "Q_{+-tau} from P, Q", worst.pq_reconstruction, c.tol(S, 1e-8));
  c.residual(S, "tau_heldout", "interpolated tau at a held-out point", worst.tau_heldout, c.tol(S, 1e-9));
  c.residual(S, "sov_eigenstate", "T(l)|Q_tau> = tau(l)|Q_tau>", worst.eigenstate, c.tol(S, 1e-9));
  c.residual(S, "orthogonality", "<Q_tau'|Q_tau> = 0, tau != tau'", ortho, c.tol(S, 1e-8));

  double sx = 0.0, sx_printed = 0.0;
  for (const auto& r : recs) {
    auto chk = sx_eigenvalue_check(c.p, r);
    sx = std::max(sx, std::abs(chk.dense - double(chk.derived)));
    sx_printed = std::max(sx_printed, std::abs(chk.dense - double(chk.printed)));
  }
  c.residual(S, "sx_eigenvalue", "S^x |Q_tau> = (2R - N)|Q_tau>", sx, c.tol(S, 1e-9));
  c.residual(S, "sx_eigenvalue_printed", "S^x |Q_tau> = (N - 2R)|Q_tau>", sx_printed, c.tol(S, 1e-9), true);

  if (c.cfg.fixture && n == 1) {
    const EigenRecord* plus = find_tau(recs, 1.0);
    const EigenRecord* minus = find_tau(recs, -1.0);
    c.compare(S, "fixture_tau_plus", "tau = +1", plus->tau(0.37), 1.0, 1e-10);
    c.compare(S, "fixture_tau_minus", "tau = -1", minus->tau(0.37), -1.0, 1e-10);
    Poly qp = plus->q_tau;
    c.compare(S, "fixture_q_plus_const", "Q_{+1} = l + 1/2", qp.c.size() > 0 ? qp.c[0] : 0.0, 0.5, 1e-10);
    c.compare(S, "fixture_q_plus_lead", "Q_{+1} = l + 1/2", qp.c.size() > 1 ? qp.c[1] : 0.0, 1.0, 1e-10);
    c.compare(S, "fixture_q_minus", "Q_{-1} = 1", minus->q_tau(0.37), 1.0, 1e-10);
  }
}

void suite_identities(Context& c) {
  const std::string S = "identities";
  const double tol = c.tol(S, 1e-10);
  const double tol_onshell = c.tol(S, 1e-9);
  CounterRng rng = c.rng(3);
  const cplx eta = c.p.eta;
  const int count = c.cfg.identity_instances;
  const cplx mus[] = {cplx(-1.0), cplx(2.0), cplx(0.5, 0.5)};

  double duality = 0, iz_minus = 0, iz_plus = 0, unbal = 0, zero = 0;
  for (int k = 0; k < count; ++k) {
    int m = 1 + k % 5;
    CList xs = random_points(rng, m, 1.5), f = random_points(rng, m, 1.0);
    duality = std::max(duality, a_pm_duality_check(xs, f, eta).residual());

    cplx mu = mus[k % 3];
    CList ys = random_points(rng, m, 1.5);
    auto [a, b] = izergin_a_form_check(mu, xs, ys, eta);
    iz_minus = std::max(iz_minus, a.residual());
    iz_plus = std::max(iz_plus, b.residual());

    int mx = k % 5, ny = (k / 5) % 5;
    CList x2 = random_points(rng, mx, 1.5), y2 = random_points(rng, ny, 1.5);
    unbal = std::max(unbal, a_pm_unbalanced_check(mu, x2, y2, eta).residual());

    int zx = k % 4, zy = zx + 1 + (k / 4) % (5 - zx);
    CList x3 = random_points(rng, zx, 1.5), y3 = random_points(rng, zy, 1.5);
    Sign s = k % 2 ? Sign::Plus : Sign::Minus;
    zero = std::max(zero, std::abs(zero_overlap_check(x3, y3, eta, s).lhs));
  }
  c.residual(S, "a_pm_duality", "A+_x[f] = A-_x[-(E+_x/E-_x) f]", duality, tol);
  c.residual(S, "izergin_a_minus", "I_mu(x,y) = (-1)^N A-_x[mu E+_y]", iz_minus, tol);
  c.residual(S, "izergin_a_plus", "I_mu(x,y) = (-1)^N A+_y[mu E-_x]", iz_plus, tol);
  c.residual(S, "a_pm_unbalanced", "A+_y[mu E-_x] = (1-mu)^{|y|-|x|} A-_x[mu E+_y]", unbal, tol);
  c.residual(S, "zero_overlap", "A+-_y[E-+_x] = 0 for |y| > |x|", zero, c.tol(S, 1e-11));

  const auto& recs = c.records();
  const int n = c.p.N();
  double slav = 0.0, slav_printed = 0.0, cor = 0.0, cor_printed = 0.0, glimit = 0.0;
  int onshell_sets = 0;
  for (const auto& r : recs) {
    if (r.R == 0) continue;
    ++onshell_sets;
    for (int k = 0; k < 10; ++k) {
      int extra = k % (n - r.R + 1);
      CList ys = random_points(rng, r.R + extra, 1.5);
      auto chk = slavnov_a_form_check(-1.0, r.bethe_roots, ys, c.p.xi, eta);
      slav = std::max(slav, chk.corrected.residual());
      slav_printed = std::max(slav_printed, chk.printed.residual());
      if (2 * r.R == n) {
        CList yc = random_points(rng, r.R, 1.5);
        auto ci = slavnov_izergin_check(-1.0, r.bethe_roots, yc, c.p.xi, eta);
        cor = std::max(cor, ci.corrected.residual());
        cor_printed = std::max(cor_printed, ci.printed.residual());
      }
    }
    double err = 0.0;
    glimit = std::max(glimit, rel_diff(gaudin_via_limit(c.p, r, &err), gaudin_norm(c.p, r)));
  }
  c.residual(S, "slavnov_a_form", "S_{M,M+S} = (-1)^{M+S(S+1)/2} A-_{x u y}[mu E+_xi]", slav, tol_onshell);
  c.residual(S, "slavnov_a_form_printed_sign", "S_{M,M+S} = A-_{x u y}[mu E+_xi]", slav_printed, tol_onshell, true);
  if (n % 2 == 0) {
    c.residual(S, "slavnov_izergin_corollary", "N = 2M: S_M(x,y) = (-1)^M I_N(x u y, xi)", cor, tol_onshell);
    c.residual(S, "slavnov_izergin_corollary_printed", "N = 2M: S_M(x,y) = I_N(x u y, xi)", cor_printed,
               tol_onshell, true);
  }
  if (onshell_sets > 0)
    c.residual(S, "gaudin_limit", "Slavnov form at y -> x equals the Gaudin norm", glimit, c.tol(S, 1e-6));
}

void suite_scalar_products(Context& c) {
  const std::string S = "scalar-products";
  const double tol = c.tol(S, 1e-9);
  CounterRng rng = c.rng(4);
  const int n = c.p.N();
  SovBasis basis(c.p);

  double direct = 0, aform = 0, bform = 0, bprinted = 0, iz = 0;
  for (int k = 0; k < c.cfg.random_pairs; ++k) {
    int M = k % (n + 1), Sd = (k / (n + 1)) % (n + 1);
    if (k % 3 == 0) Sd = n - M;  // exercise the Izergin form
    CList al = random_points(rng, M, 1.5), be = random_points(rng, Sd, 1.5);
    auto L = spec_from_roots(c.p, al, Side::Left);
    auto R = spec_from_roots(c.p, be, Side::Right);
    cplx dense = pair(basis.left_state(L), basis.right_state(R));
    direct = std::max(direct, rel_diff(sp_direct(c.p, L, R), dense));
    aform = std::max(aform, rel_diff(sp_a_form(c.p, al, be), dense));
    bform = std::max(bform, rel_diff(sp_b_form(c.p, al, be), dense));
    bprinted = std::max(bprinted, rel_diff(sp_b_form_printed(c.p, al, be), dense));
    if (M + Sd == n) iz = std::max(iz, rel_diff(sp_izergin_form(c.p, al, be), dense));
  }
  c.residual(S, "direct_vs_dense", "det(two-Vandermonde matrix) / V(xi)", direct, tol);
  c.residual(S, "a_form_vs_dense", "(-1)^{N(R+S)} prod d A+_xi[-E-_{a u b}]", aform, tol);
  c.residual(S, "b_form_vs_dense", "(-1)^{N(R+S)} 2^{N-R-S} prod d A-_{a u b}[-E+_xi]", bform, tol);
  c.residual(S, "b_form_printed_vs_dense", "same with argument -E-_xi", bprinted, tol, true);
  c.residual(S, "izergin_form_vs_dense", "R + S = N: Izergin form", iz, tol);

  const auto& recs = c.records();
  double equal = 0, more = 0, vanish = 0, cross = 0, gaudin = 0;
  for (const auto& r : recs) {
    for (int M = 0; M <= n + 1; ++M) {
      CList al = random_points(rng, M, 1.5);
      RowVec lv = basis.left_state(spec_from_roots(c.p, al, Side::Left));
      cplx dense = pair(lv, r.sov_ket);
      auto e = sp_with_eigenstate(c.p, al, r);
      switch (e.which) {
        case EigenCase::Vanishing:
          vanish = std::max(vanish, std::abs(dense) / (lv.norm() * r.sov_ket.norm()));
          break;
        case EigenCase::Equal:
          equal = std::max(equal, rel_diff(e.value, dense));
          cross = std::max(cross, e.cross_residual);
          break;
        case EigenCase::More:
          more = std::max(more, rel_diff(e.value, dense));
          break;
      }
    }
    gaudin = std::max(gaudin, rel_diff(gaudin_norm(c.p, r), pair(r.sov_bra, r.sov_ket)));
  }
  c.residual(S, "eigen_vanishing", "M < R: <alpha|Q_tau> = 0", vanish, tol);
  c.residual(S, "eigen_equal_slavnov", "M = R: (-1)^M 2^{N-2M} prod d S_M", equal, tol);
  c.residual(S, "eigen_equal_izergin", "M = R: Izergin form with hat roots", cross, tol);
  c.residual(S, "eigen_more", "M > R: generalized Slavnov form", more, tol);
  c.residual(S, "gaudin_norm", "<Q|Q> = Gaudin determinant formula", gaudin, tol);

  if (c.cfg.fixture && n == 1) {
    SovBasis b1(c.p);
    cplx one = pair(b1.left_state(spec_one(c.p, Side::Left)), b1.right_state(spec_one(c.p, Side::Right)));
    c.compare(S, "fixture_one_norm", "<1|1> = 2", one, 2.0, 1e-10);
    c.compare(S, "fixture_one_norm_b_form", "<1|1> = 2 (B form)", sp_b_form(c.p, {}, {}), 2.0, 1e-10);
    c.compare(S, "fixture_gaudin_minus", "Gaudin norm, tau = -1", gaudin_norm(c.p, *find_tau(recs, -1.0)), 2.0,
              1e-10);
    c.compare(S, "fixture_gaudin_plus", "Gaudin norm, tau = +1", gaudin_norm(c.p, *find_tau(recs, 1.0)), 0.5, 1e-10);
  }
}

void suite_form_factors(Context& c) {
  const std::string S = "form-factors";
  const double tol = c.tol(S, 1e-8);
  const auto& recs = c.records();
  const GlobalOps& g = c.global();
  const int n = c.p.N();
  std::map<FFCase, double> by_case;
  double zmax = 0, pmax = 0, zprinted = 0;
  for (const auto& bra : recs)
    for (const auto& ket : recs) {
      double scale = bra.sov_bra.norm() * ket.sov_ket.norm();
      for (int s = 1; s <= n; ++s) {
        auto fm = ff_sigma_minus(c.p, bra, ket, s);
        auto fz = ff_sigma_z(c.p, bra, ket, s);
        auto fp = ff_sigma_plus(c.p, bra, ket, s);
        cplx dm = dense_matrix_element(bra.sov_bra, g.sigma_minus[s - 1], ket.sov_ket);
        cplx dz = dense_matrix_element(bra.sov_bra, g.sigma_z[s - 1], ket.sov_ket);
        cplx dp = dense_matrix_element(bra.sov_bra, g.sigma_plus[s - 1], ket.sov_ket);
        double& slot = by_case[fm.which];
        slot = std::max(slot, element_error(fm.value, dm, scale));
        zmax = std::max(zmax, element_error(fz.value, dz, scale));
        zprinted = std::max(zprinted, element_error(fz.printed, dz, scale));
        pmax = std::max(pmax, element_error(fp.value, dp, scale));
      }
    }
  for (FFCase k : {FFCase::Far, FFCase::BraHigher, FFCase::KetHigher, FFCase::EqualDistinct, FFCase::EqualSame}) {
    if (!by_case.count(k)) continue;
    c.residual(S, std::string("sigma_minus_") + ff_case_name(k), "sigma^- form factor determinant", by_case[k], tol);
  }
  c.residual(S, "sigma_z", "sigma^z = 2(R - R') sigma^-", zmax, tol);
  c.residual(S, "sigma_z_printed_sign", "sigma^z = 2(R' - R) sigma^-", zprinted, tol, true);
  c.residual(S, "sigma_plus", "sigma^+ = (-1)^{R-R'} sigma^-", pmax, tol);

  double rec = 0.0, rec_printed = 0.0;
  for (int s = 1; s <= n; ++s) {
    rec = std::max(rec, op_norm(reconstruct_sigma_minus(c.p, s) - g.sigma_minus[s - 1]));
    rec_printed = std::max(rec_printed, op_norm(reconstruct_sigma_minus_printed(c.p, s) - g.sigma_minus[s - 1]));
  }
  c.residual(S, "sigma_minus_reconstruction", "sigma^-_n from D(xi_n) and T(xi_j)", rec, c.tol(S, 1e-9));
  c.residual(S, "sigma_minus_reconstruction_printed", "prod_{j<n} T/a D(xi_n)/a prod_{j>n} T/a", rec_printed,
             c.tol(S, 1e-9), true);

  if (c.cfg.fixture && n == 1) {
    const EigenRecord& m = *find_tau(recs, -1.0);
    const EigenRecord& p = *find_tau(recs, 1.0);
    c.compare(S, "fixture_sigma_minus", "<Q_-1|s^-|Q_+1> = -1/2", ff_sigma_minus(c.p, m, p, 1).value, -0.5, 1e-10);
    c.compare(S, "fixture_sigma_plus", "<Q_-1|s^+|Q_+1> = +1/2", ff_sigma_plus(c.p, m, p, 1).value, 0.5, 1e-10);
    c.compare(S, "fixture_sigma_z", "<Q_-1|s^z|Q_+1> = +1", ff_sigma_z(c.p, m, p, 1).value, 1.0, 1e-10);
    c.compare(S, "fixture_sigma_z_printed_sign", "<Q_-1|s^z|Q_+1> with 2(R'-R)", ff_sigma_z(c.p, m, p, 1).printed, 1.0,
              1e-10, true);
  }
}

void suite_aba(Context& c) {
  const std::string S = "aba-check";
  const double tol = c.tol(S, 1e-9);
  const auto& recs = c.records();
  const int n = c.p.N();
  double const_err = 0, spread = 0, bra_spread = 0, bra_err = 0, twisted = 0;
  json per_r = json::array();
  std::set<int> seen_R;
  for (const auto& r : recs) {
    auto cc = correspondence_check(c.p, r);
    const_err = std::max(const_err, rel_diff(cc.ratio, cc.expected));
    bra_err = std::max(bra_err, rel_diff(cc.bra_ratio, cc.expected));
    spread = std::max(spread, cc.spread);
    bra_spread = std::max(bra_spread, cc.bra_spread);
    twisted = std::max(twisted, cc.twisted_residual);
    if (seen_R.insert(r.R).second)
      per_r.push_back({{"R", r.R},
                       {"constant_expected", {cc.expected.real(), cc.expected.imag()}},
                       {"constant_measured", {cc.ratio.real(), cc.ratio.imag()}}});
  }
  c.residual(S, "correspondence_constant", "|Q> = (-1)^{N(R-1)} 2^{N/2-R} Gamma_U^{-1} prod C|0'>", const_err, tol);
  c.residual(S, "correspondence_spread", "componentwise ratio constant", spread, tol);
  c.residual(S, "correspondence_bra", "<Q| = same constant <0'| prod B Gamma_U", bra_err, tol);
  c.residual(S, "correspondence_bra_spread", "componentwise ratio constant", bra_spread, tol);
  c.residual(S, "twisted_eigenstate", "(A - D)(l) prod C|0'> = tau(l) prod C|0'>", twisted, tol);

  auto one = one_explicit_check(c.p);
  c.residual(S, "one_explicit", "|1> = (-sqrt 2)^N Gamma_U^{-1}|0'> = (x)(1,-1)",
             std::max(one.ket_vs_gamma, one.ket_vs_product), 1e-12);

  double gus = 0.0;
  for (int s = 1; s <= n; ++s) gus = std::max(gus, gamma_u_sigma_relation(c.p, s));
  c.residual(S, "gamma_u_sigma_minus", "Gamma_U s^- Gamma_U^{-1} = (s^z - s^+ + s^-)/2", gus, 1e-12);

  double diff = 0, diff_same = 0, dense = 0, rel = 0;
  int pairs = 0;
  std::vector<BetheCache> cache;
  for (const auto& r : recs) cache.push_back(bethe_cache(c.p, r));
  for (size_t i = 0; i < recs.size(); ++i)
    for (size_t j = 0; j < recs.size(); ++j) {
      const EigenRecord &a = recs[i], &b = recs[j];
      if (a.R != b.R || a.R == 0) continue;
      bool same = same_eigenstate(a, b);
      for (int s = 1; s <= n; ++s) {
        auto ab = aba_sov_crosscheck(c.p, a, b, s, c.global(), cache[i], cache[j]);
        ++pairs;
        double& slot = same ? diff_same : diff;
        slot = std::max(slot, ab.diff);
        dense = std::max(dense, ab.aba_vs_dense);
        rel = std::max(rel, ab.sigma_minus_relation);
      }
    }
  if (pairs > 0) {
    c.residual(S, "aba_sov_equality", "ABA sigma^z expression = SoV sigma^- expression", diff, tol);
    c.residual(S, "aba_sov_equality_same_state", "same, tau = tau'", diff_same, tol);
    c.residual(S, "aba_sov_vs_dense", "normalized ABA expression vs <0'|prod B s^z prod C|0'>", dense, tol);
    c.residual(S, "sigma_minus_vs_aba_sigma_z", "<Q|s^-|Q'> = 2^{N-2R-1} <0'|prod B s^z prod C|0'>", rel, tol);
  }

  double max_spread = std::max(spread, bra_spread);
  c.summaries["aba-check"] = {{"N", n},
                              {"seed", c.cfg.seed},
                              {"constant_per_R", per_r},
                              {"max_constant_rel_err", const_err},
                              {"max_ratio_spread", max_spread},
                              {"aba_sov_max_diff", std::max(diff, diff_same)}};
}

void suite_homogeneous(Context& c) {
  const std::string S = "homogeneous-stress";
  const int n = c.p.N();
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  auto sw = homogeneous_sweep(n, eps, c.cfg.seed, c.p.eta);
  const double tol = c.tol(S, 0.5);
  c.residual(S, "b_form_cauchy", "successive-difference ratio of the B form", sw.b_ratio, tol);
  c.residual(S, "izergin_form_cauchy", "successive-difference ratio of the Izergin form", sw.izergin_ratio, tol);
  c.residual(S, "slavnov_form_cauchy", "successive-difference ratio of the Slavnov form", sw.slavnov_ratio, tol);
  c.at_least(S, "direct_condition_exponent", "cond(two-Vandermonde matrix) ~ eps^{-p}, p >= N-1",
             sw.condition_exponent, (n - 1) - 0.25);
  json rows = json::array();
  double bethe = 0.0;
  for (const auto& r : sw.rows) {
    bethe = std::max(bethe, r.bethe_residual);
    rows.push_back({{"eps", r.eps},
                    {"b_form", {r.b_form.real(), r.b_form.imag()}},
                    {"izergin_form", {r.izergin_form.real(), r.izergin_form.imag()}},
                    {"slavnov_form", {r.slavnov_form.real(), r.slavnov_form.imag()}},
                    {"direct_form", {r.direct_form.real(), r.direct_form.imag()}},
                    {"direct_condition", r.direct_condition},
                    {"bethe_residual", r.bethe_residual}});
  }
  c.residual(S, "tracked_state_bethe", "Bethe residual of the tracked R = N/2 state", bethe, 1e-7);
  json fit = json::array();
  for (const auto& [e, cnd] : sw.condition_fit) fit.push_back({e, cnd});
  c.summaries["homogeneous-stress"] = {{"N", n},
                                       {"R", sw.R},
                                       {"condition_exponent", sw.condition_exponent},
                                       {"condition_fit", fit},
                                       {"cauchy_ratios", {sw.b_ratio, sw.izergin_ratio, sw.slavnov_ratio}},
                                       {"rows", rows}};
}

void suite_hamiltonian(Context& c) {
  const std::string S = "hamiltonian";
  const int n = c.p.N();
  double d0 = hamiltonian_limit_check(n, 0.0, c.p.eta);
  double d1 = hamiltonian_limit_check(n, 1e-2, c.p.eta);
  double d2 = hamiltonian_limit_check(n, 1e-3, c.p.eta);
  c.residual(S, "homogeneous_point", "H = 2 eta T(0)^{-1} T'(0) - 2N at xi = 0", d0, c.tol(S, 1e-9));
  c.residual(S, "decay_ratio", "deviation(1e-3) / deviation(1e-2), linear decay", d1 > 0 ? d2 / d1 : 0.0, 0.7);
}

using SuiteFn = std::function<void(Context&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t = {
      {"oracle", suite_oracle},
      {"spectrum", suite_spectrum},
      {"sov", suite_sov},
      {"identities", suite_identities},
      {"scalar-products", suite_scalar_products},
      {"form-factors", suite_form_factors},
      {"aba-check", suite_aba},
      {"homogeneous-stress", suite_homogeneous},
      {"hamiltonian", suite_hamiltonian},
  };
  return t;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.n_sites < 1 || cfg.n_sites > kMaxSites)
    throw Error(ErrorKind::InvalidArgument, "n_sites must lie in [1, " + std::to_string(kMaxSites) + "]");
  for (const auto& [suite, t] : cfg.tolerances) {
    if (!is_known_suite(suite)) throw Error(ErrorKind::InvalidArgument, "unknown suite in tolerance: " + suite);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive: " + suite);
  }
  for (const auto& s : cfg.suites)
    if (!is_known_suite(s)) throw Error(ErrorKind::InvalidArgument, "unknown suite: " + s);
  if (cfg.identity_instances < 1 || cfg.random_pairs < 1)
    throw Error(ErrorKind::InvalidArgument, "instance counts must be positive");
}

ChainParams params_for(const RunConfig& cfg) {
  if (cfg.fixture) {
    ChainParams p = fixture_params(cfg.n_sites);
    if (cfg.margin > 0) p.margin = cfg.margin;
    return p;
  }
  return sample_generic_params(cfg.n_sites, cfg.seed, cfg.margin);
}

bool Report::all_pass() const {
  for (const auto& n : notes)
    if (n.status == "aborted") return false;
  for (const auto& r : rows)
    if (!r.diagnostic && !r.pass) return false;
  return true;
}

const ReportRow* Report::find(const std::string& key) const {
  for (const auto& r : rows)
    if (r.key() == key) return &r;
  return nullptr;
}

Report run(const RunConfig& cfg) {
  validate_config(cfg);
  Report rep;
  rep.config = cfg;
  rep.params = params_for(cfg);
  Context ctx{cfg, rep.params, {}, json::object(), std::nullopt, std::nullopt};
  std::set<std::string> wanted(cfg.suites.begin(), cfg.suites.end());
  for (const auto& [name, fn] : suite_table()) {
    if (!wanted.count(name)) continue;
    if ((name == "homogeneous-stress" || name == "hamiltonian") && cfg.n_sites < 2) {
      rep.notes.push_back({name, "skipped", "needs at least two sites"});
      continue;
    }
    if (name == "homogeneous-stress" && cfg.n_sites % 2 != 0) {
      rep.notes.push_back({name, "skipped", "tracks an R = N/2 eigenstate, needs even N"});
      continue;
    }
    size_t before = ctx.rows.size();
    try {
      fn(ctx);
    } catch (const std::exception& e) {
      ctx.rows.resize(before);
      rep.notes.push_back({name, "aborted", e.what()});
    }
  }
  rep.rows = std::move(ctx.rows);
  rep.summaries = std::move(ctx.summaries);
  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.key() < b.key(); });
  return rep;
}

json params_to_json(const ChainParams& p) {
  json xi = json::array();
  for (cplx x : p.xi) xi.push_back(cplx_json(x));
  return {{"n_sites", p.n_sites}, {"eta", cplx_json(p.eta)}, {"xi", xi}, {"margin", p.margin}};
}

ChainParams params_from_json(const json& j) {
  auto z = [](const json& v) { return cplx(v.at(0).get<double>(), v.at(1).get<double>()); };
  CList xi;
  for (const auto& v : j.at("xi")) xi.push_back(z(v));
  ChainParams p = make_params(z(j.at("eta")), xi, j.value("margin", -1.0));
  if (p.n_sites != j.at("n_sites").get<int>()) throw Error(ErrorKind::Shape, "n_sites does not match xi");
  return p;
}

json report_to_json(const Report& r) {
  json cfg = {{"n_sites", r.config.n_sites},
              {"seed", r.config.seed},
              {"margin", r.config.margin},
              {"fixture", r.config.fixture},
              {"suites", r.config.suites},
              {"tolerances", r.config.tolerances}};
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"suite", row.suite},
                    {"name", row.name},
                    {"formula", row.formula},
                    {"value", cplx_json(row.value)},
                    {"reference", cplx_json(row.reference)},
                    {"rel_err", row.rel_err},
                    {"tol", row.tol},
                    {"pass", row.pass},
                    {"diagnostic", row.diagnostic}});
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back({{"suite", n.suite}, {"status", n.status}, {"reason", n.reason}});
  return {{"config", cfg},
          {"params", params_to_json(r.params)},
          {"all_pass", r.all_pass()},
          {"rows", rows},
          {"notes", notes},
          {"summaries", r.summaries}};
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << "suite,name,formula,value_re,value_im,reference_re,reference_im,rel_err,tol,pass,diagnostic\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.suite) << ',' << csv_field(row.name) << ',' << csv_field(row.formula) << ','
       << fmt(row.value.real()) << ',' << fmt(row.value.imag()) << ',' << fmt(row.reference.real()) << ','
       << fmt(row.reference.imag()) << ',' << fmt(row.rel_err) << ',' << fmt(row.tol) << ','
       << (row.pass ? "true" : "false") << ',' << (row.diagnostic ? "true" : "false") << '\n';
  }
  for (const auto& n : r.notes)
    os << csv_field(n.suite) << ',' << csv_field(n.status) << ',' << csv_field(n.reason) << ",,,,,,,false,true\n";
  return os.str();
}

}  // namespace sov
