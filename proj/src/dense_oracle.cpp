#include "sovxxx/dense_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sov {

Vec ref_up(int n) {
  Vec v = Vec::Zero(hilbert_dim(n));
  v(0) = 1.0;
  return v;
}

Vec ref_down(int n) {
  Vec v = Vec::Zero(hilbert_dim(n));
  v(hilbert_dim(n) - 1) = 1.0;
  return v;
}

Mat2 pauli_x() { Mat2 m; m << 0, 1, 1, 0; return m; }
Mat2 pauli_y() { Mat2 m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
Mat2 pauli_z() { Mat2 m; m << 1, 0, 0, -1; return m; }
Mat2 raising() { Mat2 m; m << 0, 1, 0, 0; return m; }
Mat2 lowering() { Mat2 m; m << 0, 0, 1, 0; return m; }

Mat2 u_matrix() {
  Mat2 m;
  m << 1, 1, -1, 1;
  return m / std::sqrt(2.0);
}

Mat kron_all(const std::vector<Mat2>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& op : ops) {
    Mat next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block<2, 2>(2 * i, 2 * j) = out(i, j) * op;
    out = std::move(next);
  }
  return out;
}

Mat local_op(const Mat2& op, int site, int n) {
  std::vector<Mat2> ops(n, Mat2::Identity());
  ops[site - 1] = op;
  return kron_all(ops);
}

void apply_local_left(const Mat2& op, int site, int n, Mat& m) {
  const Eigen::Index bit = Eigen::Index(1) << (n - site);
  const Eigen::Index dim = hilbert_dim(n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) continue;
    RowVec r0 = m.row(i), r1 = m.row(i | bit);
    m.row(i) = op(0, 0) * r0 + op(0, 1) * r1;
    m.row(i | bit) = op(1, 0) * r0 + op(1, 1) * r1;
  }
}

Mat4 build_r_matrix(cplx lambda, cplx eta) {
  Mat4 r = Mat4::Zero();
  r(0, 0) = r(3, 3) = lambda + eta;
  r(1, 1) = r(2, 2) = lambda;
  r(1, 2) = r(2, 1) = eta;
  return r;
}

const Mat& Monodromy::operator()(Entry e) const {
  switch (e) {
    case Entry::A: return A;
    case Entry::B: return B;
    case Entry::C: return C;
    default: return D;
  }
}

namespace {

// L_n = [[u + eta e11, eta s-], [eta s+, u + eta e22]] acting on the auxiliary row index
struct LocalL {
  Mat2 l00, l01, l10, l11;
};

LocalL lax(cplx u, cplx eta) {
  LocalL L;
  L.l00 << u + eta, 0, 0, u;
  L.l11 << u, 0, 0, u + eta;
  L.l01 = eta * lowering();
  L.l10 = eta * raising();
  return L;
}

void step(const LocalL& L, int site, int n, Mat& top, Mat& bottom) {
  Mat t0 = top, t1 = bottom, x = bottom;
  apply_local_left(L.l00, site, n, t0);
  apply_local_left(L.l01, site, n, t1);
  apply_local_left(L.l10, site, n, top);
  apply_local_left(L.l11, site, n, x);
  bottom = top + x;
  top = t0 + t1;
}

}  // namespace

std::pair<Monodromy, Monodromy> monodromy_with_derivative(const ChainParams& p, cplx lambda) {
  const int n = p.N();
  const Eigen::Index dim = hilbert_dim(n);
  // columns of the auxiliary space: (A, C) and (B, D)
  Mat A = Mat::Identity(dim, dim), C = Mat::Zero(dim, dim);
  Mat B = Mat::Zero(dim, dim), D = Mat::Identity(dim, dim);
  Mat dA = Mat::Zero(dim, dim), dC = dA, dB = dA, dD = dA;
  for (int site = 1; site <= n; ++site) {
    LocalL L = lax(lambda - p.xi[site - 1], p.eta);
    // derivative of L is the identity on the diagonal blocks
    Mat nA = A, nC = C, nB = B, nD = D;
    step(L, site, n, dA, dC);
    step(L, site, n, dB, dD);
    dA += nA;
    dC += nC;
    dB += nB;
    dD += nD;
    step(L, site, n, A, C);
    step(L, site, n, B, D);
  }
  return {Monodromy{A, B, C, D}, Monodromy{dA, dB, dC, dD}};
}

Monodromy monodromy(const ChainParams& p, cplx lambda) {
  const int n = p.N();
  const Eigen::Index dim = hilbert_dim(n);
  Mat A = Mat::Identity(dim, dim), C = Mat::Zero(dim, dim);
  Mat B = Mat::Zero(dim, dim), D = Mat::Identity(dim, dim);
  for (int site = 1; site <= n; ++site) {
    LocalL L = lax(lambda - p.xi[site - 1], p.eta);
    step(L, site, n, A, C);
    step(L, site, n, B, D);
  }
  return {A, B, C, D};
}

Mat monodromy_entry(const ChainParams& p, Entry which, cplx lambda) { return monodromy(p, lambda)(which); }

Mat transfer_antiperiodic(const ChainParams& p, cplx lambda) {
  Monodromy T = monodromy(p, lambda);
  return T.B + T.C;
}

Mat transfer_twisted(const ChainParams& p, cplx lambda) {
  Monodromy T = monodromy(p, lambda);
  return T.A - T.D;
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double quantum_det_check(const ChainParams& p, cplx lambda) {
  Monodromy T = monodromy(p, lambda);
  Monodromy S = monodromy(p, lambda - p.eta);
  Mat r = T.B * S.C - T.A * S.D;
  cplx c = a_of(p, lambda) * d_of(p, lambda - p.eta);
  r.diagonal().array() += c;
  double scale = std::max({op_norm(T.B * S.C), op_norm(T.A * S.D), std::abs(c), 1e-300});
  return op_norm(r) / scale;
}

GlobalOps global_operators(const ChainParams& p) {
  const int n = p.N();
  GlobalOps g;
  const Eigen::Index dim = hilbert_dim(n);
  g.Sx = Mat::Zero(dim, dim);
  for (int s = 1; s <= n; ++s) {
    g.Sx += local_op(pauli_x(), s, n);
    g.sigma_minus.push_back(local_op(lowering(), s, n));
    g.sigma_plus.push_back(local_op(raising(), s, n));
    g.sigma_z.push_back(local_op(pauli_z(), s, n));
  }
  g.Gx = kron_all(std::vector<Mat2>(n, pauli_x()));
  g.GU = kron_all(std::vector<Mat2>(n, u_matrix()));
  return g;
}

cplx default_lambda0(const ChainParams& p) {
  double spread = 0.0;
  for (cplx x : p.xi) spread = std::max(spread, std::abs(x));
  spread = std::max(spread, std::abs(p.eta));
  return cplx(0.37, 0.41) * spread;
}

std::vector<EigenPair> diagonalize_transfer(const ChainParams& p, cplx lambda0) {
  Mat T = transfer_antiperiodic(p, lambda0);
  Eigen::ComplexEigenSolver<Mat> es(T);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Retry, "eigensolver failed");
  const Eigen::Index dim = T.rows();
  const Vec& w = es.eigenvalues();
  double scale = std::max(op_norm(T), 1e-300);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(w(i) - w(j)) < 1e-6 * scale)
        throw Error(ErrorKind::Retry, "near-degenerate transfer spectrum at lambda0");
  Mat V = es.eigenvectors();
  Mat W = V.inverse();
  std::vector<EigenPair> out;
  for (Eigen::Index i = 0; i < dim; ++i) {
    Vec v = V.col(i);
    double res = (T * v - w(i) * v).norm() / v.norm();
    if (res > 1e-9 * scale) throw Error(ErrorKind::Retry, "eigenpair residual too large");
    out.push_back({w(i), v, W.row(i)});
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.eigenvalue.real() != b.eigenvalue.real() ? a.eigenvalue.real() < b.eigenvalue.real()
                                                      : a.eigenvalue.imag() < b.eigenvalue.imag();
  });
  return out;
}

std::vector<EigenPair> diagonalize_transfer(const ChainParams& p) {
  cplx l0 = default_lambda0(p);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return diagonalize_transfer(p, l0);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Retry) throw;
      l0 = l0 * cplx(1.13, 0.07) + cplx(0.05, 0.11);
    }
  }
  throw Error(ErrorKind::Retry, "no lambda0 with simple spectrum found");
}

Mat pauli_hamiltonian(int n) {
  const Eigen::Index dim = hilbert_dim(n);
  Mat H = Mat::Zero(dim, dim);
  const Mat2 sx = pauli_x();
  const Mat2 ops[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (int s = 1; s <= n; ++s) {
    for (const Mat2& o : ops) {
      if (s < n) {
        H += local_op(o, s, n) * local_op(o, s + 1, n);
      } else {
        // antiperiodic closure: sigma_{N+1} = sigma^x sigma_1 sigma^x
        Mat2 twisted = sx * o * sx;
        if (n == 1)
          H += local_op(o * twisted, 1, 1);
        else
          H += local_op(o, n, n) * local_op(twisted, 1, n);
      }
    }
    H -= Mat::Identity(dim, dim);
  }
  return H;
}

double hamiltonian_limit_check(int n_sites, double eps, cplx eta) {
  ChainParams p = near_homogeneous_params(n_sites, eps, eta);
  auto [T, dT] = monodromy_with_derivative(p, 0.0);
  Mat T0 = T.B + T.C;
  Mat T1 = dT.B + dT.C;
  Eigen::FullPivLU<Mat> lu(T0);
  if (!lu.isInvertible()) throw Error(ErrorKind::Retry, "T(0) singular");
  const Eigen::Index dim = T0.rows();
  Mat rhs = 2.0 * eta * lu.solve(T1) - 2.0 * n_sites * Mat::Identity(dim, dim);
  return op_norm(pauli_hamiltonian(n_sites) - rhs);
}

}  // namespace sov
