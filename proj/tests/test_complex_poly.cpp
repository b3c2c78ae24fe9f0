#include "doctest.h"
#include "sovxxx/complex_poly.hpp"
#include "sovxxx/rng.hpp"
#include "sovxxx/types.hpp"

using namespace sov;

TEST_CASE("evaluation and arithmetic") {
  Poly p(CList{1.0, -3.0, 2.0});  // 2z^2 - 3z + 1
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(cplx(2.0)) - cplx(3.0)) < 1e-15);
  CHECK(std::abs(p.derivative()(cplx(1.0)) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(p.shifted(1.0)(0.0) - p(1.0)) < 1e-15);
  Poly q = p * Poly(CList{0.0, 1.0});
  CHECK(q.degree() == 3);
  CHECK(std::abs(q(cplx(0.5, 1.0)) - cplx(0.5, 1.0) * p(cplx(0.5, 1.0))) < 1e-14);
  CHECK((p - p).is_zero());
  CHECK(Poly().degree() == -1);
}

TEST_CASE("roots round trip") {
  CounterRng rng(11);
  for (int deg = 1; deg <= 6; ++deg) {
    CList r;
    for (int i = 0; i < deg; ++i) r.push_back(rng.complex_normal(1.0, 1.0));
    Poly p = poly_from_roots(r);
    CHECK(p.degree() == deg);
    CHECK(std::abs(p.lead() - cplx(1.0)) < 1e-15);
    CList found = poly_roots(p);
    REQUIRE(found.size() == r.size());
    for (cplx z : r) {
      double best = 1e300;
      for (cplx w : found) best = std::min(best, std::abs(z - w));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("lagrange interpolation") {
  Poly p(CList{cplx(1, 2), cplx(-0.5, 0), cplx(0, 3)});
  CList nodes = {0.0, 1.0, cplx(0, 1)}, vals;
  for (cplx z : nodes) vals.push_back(p(z));
  Poly q = lagrange_interpolate(nodes, vals);
  CHECK(std::abs(q(cplx(0.3, -0.7)) - p(cplx(0.3, -0.7))) < 1e-13);
  CHECK_THROWS_AS(lagrange_interpolate(CList{1.0, 1.0}, CList{1.0, 2.0}), Error);
}

TEST_CASE("trim, monic and effective degree") {
  Poly p(CList{2.0, 4.0, 1e-14});
  CHECK(effective_degree(p, 1e-10) == 1);
  CHECK(trim(p).degree() == 1);
  Poly m = make_monic(trim(p));
  CHECK(std::abs(m.lead() - cplx(1.0)) < 1e-15);
  CHECK(std::abs(m(0.0) - cplx(0.5)) < 1e-15);
}

TEST_CASE("root products") {
  CList r = {1.0, cplx(0, 2)};
  CHECK(std::abs(eval_roots(r, 3.0) - cplx(2.0) * cplx(3, -2)) < 1e-15);
  CHECK(std::abs(eval_roots({}, 3.0) - cplx(1.0)) == 0.0);
  Poly p = poly_from_roots(r);
  CHECK(std::abs(eval_roots_derivative(r, cplx(0.4, 0.1)) - p.derivative()(cplx(0.4, 0.1))) < 1e-14);
}

TEST_CASE("counter rng is reproducible and stream separated") {
  CounterRng a(5, 1), b(5, 1), c(5, 2);
  for (int i = 0; i < 10; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng u(9);
  double mean = 0;
  for (int i = 0; i < 20000; ++i) mean += u.uniform();
  CHECK(std::abs(mean / 20000 - 0.5) < 0.01);
}
