#include "sovxxx/complex_poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sov {

int Poly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != cplx(0.0)) return i;
  return -1;
}

cplx Poly::lead() const {
  int d = degree();
  return d < 0 ? cplx(0.0) : c[d];
}

cplx Poly::operator()(cplx z) const { return poly_eval(*this, z); }

Poly Poly::derivative() const {
  if (c.size() <= 1) return Poly();
  CList out(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) out[i - 1] = static_cast<double>(i) * c[i];
  return Poly(out);
}

Poly Poly::shifted(cplx s) const {
  // Horner in polynomial arithmetic: p(z+s) = (...(c_n (z+s) + c_{n-1})(z+s) ...)
  Poly lin(CList{s, 1.0});
  Poly out;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) out = out * lin + Poly::constant(c[i]);
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  CList out(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) out[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out[i] += b.c[i];
  return Poly(out);
}

Poly operator-(const Poly& a, const Poly& b) { return a + cplx(-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return Poly();
  CList out(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  return Poly(out);
}

Poly operator*(cplx s, const Poly& a) {
  Poly out = a;
  for (auto& v : out.c) v *= s;
  return out;
}

static void require_finite(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidArgument, "non-finite value");
}

Poly poly_from_roots(const CList& roots) {
  CList c{1.0};
  for (cplx r : roots) {
    require_finite(r);
    CList next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Poly(c);
}

cplx poly_eval(const Poly& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly lagrange_interpolate(const CList& nodes, const CList& values) {
  if (nodes.size() != values.size())
    throw Error(ErrorKind::InvalidArgument, "nodes/values size mismatch");
  const size_t n = nodes.size();
  if (n == 0) return Poly();
  double scale = 0.0;
  for (cplx z : nodes) scale = std::max(scale, std::abs(z));
  scale = std::max(scale, 1.0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < a; ++b)
      if (std::abs(nodes[a] - nodes[b]) <= 1e-8 * scale)
        throw Error(ErrorKind::DegenerateNodes, "interpolation nodes coincide");

  Poly out(CList(n, 0.0));
  for (size_t a = 0; a < n; ++a) {
    Poly basis = Poly::constant(1.0);
    cplx den = 1.0;
    for (size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      basis = basis * Poly(CList{-nodes[b], 1.0});
      den *= nodes[a] - nodes[b];
    }
    out = out + (values[a] / den) * basis;
  }
  return out;
}

int effective_degree(const Poly& p, double tol) {
  double mx = 0.0;
  for (cplx v : p.c) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return -1;
  for (int i = static_cast<int>(p.c.size()) - 1; i >= 0; --i)
    if (std::abs(p.c[i]) > tol * mx) return i;
  return -1;
}

Poly trim(const Poly& p, double tol) {
  int d = effective_degree(p, tol);
  if (d < 0) return Poly();
  return Poly(CList(p.c.begin(), p.c.begin() + d + 1));
}

Poly make_monic(const Poly& p) {
  Poly t = trim(p, 0.0);
  if (t.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial");
  cplx l = t.lead();
  for (auto& v : t.c) v /= l;
  t.c.back() = 1.0;
  return t;
}

CList poly_roots(const Poly& p) {
  Poly m = trim(p);
  if (m.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no root list");
  m = make_monic(m);
  const int d = m.degree();
  if (d == 0) return {};
  Mat comp = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -m.c[i];
  Eigen::ComplexEigenSolver<Mat> es(comp, false);
  CList roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  // one Newton polish step per root against the monic polynomial
  Poly dm = m.derivative();
  for (auto& r : roots) {
    cplx f = m(r), fp = dm(r);
    if (std::abs(fp) > 0.0) {
      cplx step = f / fp;
      if (std::abs(step) < 1e-3 * (1.0 + std::abs(r))) r -= step;
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

cplx eval_roots(const CList& roots, cplx z) {
  cplx v = 1.0;
  for (cplx r : roots) v *= z - r;
  return v;
}

cplx eval_roots_derivative(const CList& roots, cplx z) {
  cplx s = 0.0;
  for (size_t k = 0; k < roots.size(); ++k) {
    cplx t = 1.0;
    for (size_t i = 0; i < roots.size(); ++i)
      if (i != k) t *= z - roots[i];
    s += t;
  }
  return s;
}

}  // namespace sov
