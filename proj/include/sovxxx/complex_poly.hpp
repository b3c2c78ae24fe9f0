#pragma once

#include "sovxxx/types.hpp"

namespace sov {

inline constexpr double kTrimTol = 1e-10;

// Coefficients ascending; an empty coefficient list is the zero polynomial.
struct Poly {
  CList c;

  Poly() = default;
  explicit Poly(CList coeffs) : c(std::move(coeffs)) {}
  static Poly constant(cplx v) { return Poly(CList{v}); }

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  cplx lead() const;
  cplx operator()(cplx z) const;

  Poly derivative() const;
  Poly shifted(cplx s) const;  // p(z + s)
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx s, const Poly& a);

Poly poly_from_roots(const CList& roots);
cplx poly_eval(const Poly& p, cplx z);
Poly lagrange_interpolate(const CList& nodes, const CList& values);
CList poly_roots(const Poly& p);
int effective_degree(const Poly& p, double tol);
Poly trim(const Poly& p, double tol = kTrimTol);
Poly make_monic(const Poly& p);

// product over a root list, with the empty product equal to 1
cplx eval_roots(const CList& roots, cplx z);
cplx eval_roots_derivative(const CList& roots, cplx z);

}  // namespace sov
