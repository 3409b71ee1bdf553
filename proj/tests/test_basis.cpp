#include "doctest.h"
#include "hve/basis.hpp"

using namespace hve;

TEST_CASE("rodrigues polynomials") {
  CHECK(rodrigues_P(1) == QPoly(1));
  CHECK(rodrigues_P(2) == QPoly({Rational(0), Rational(4)}));
  CHECK(rodrigues_P(3) == QPoly({Rational(-6), Rational(0), Rational(30)}));
  CHECK_THROWS_AS(rodrigues_P(0), BasisError);
}

TEST_CASE("epsilon") {
  CHECK(epsilon(2) == Rational(3, 32));
  CHECK(epsilon(0) == 0);
  CHECK(epsilon(1) == Rational(1, 2));
  CHECK(epsilon(2) * 4 == Rational(3, 8));
}

TEST_CASE("Q2 and the n = 0 pair") {
  const BasisPair& b2 = basis_pair(2);
  TowerElement A = TowerElement::arctanh();
  TowerElement expect = A * RatFunc(UPoly(QPoly({Rational(0), Rational(3, 8)}))) +
                        TowerElement(RatFunc(UPoly(QPoly({Rational(1, 4), Rational(0), Rational(-3, 8)})), 1, 1, 0));
  CHECK(b2.Q == expect);
  const BasisPair& b0 = basis_pair(0);
  CHECK(b0.P == RatFunc(UPoly(QPoly({Rational(0), Rational(1)})), 1, 1, 0));
  CHECK(b0.Q == TowerElement(RatFunc::inv_t2m1()));
  CHECK(b0.eps == 0);
  CHECK(b0.Q.is_rational());
}

TEST_CASE("Q1 normalization") {
  const BasisPair& b1 = basis_pair(1);
  // arctanh coefficient eps_1 P_1 = 1/2, rational part proportional to t/(t^2-1)
  CHECK(b1.Qa.c.size() == 2);
  CHECK(b1.Qa.c[1] == RatFunc(ParamPoly(Rational(1, 2))));
  RatFunc r = b1.Qa.c[0];
  CHECK(r.exp(Root::Plus1) == 1);
  CHECK(r.exp(Root::Minus1) == 1);
  CHECK(r.num().degree() == 1);
  CHECK(r.num()[0].is_zero());
  CHECK(r.num()[1] == ParamPoly(Rational(-1, 2)));
  // reduction of order: (Q/P)' = w/((t^2-1)^2 P^2)
  TowerElement d = differentiate(b1.Q);
  CHECK(d == TowerElement(RatFunc(UPoly(ParamPoly(b1.wronskian)), 2, 2, 0)));
}

TEST_CASE("basis invariants for n = 0..12") {
  for (unsigned n = 0; n <= 12; ++n) {
    const BasisPair& b = basis_pair(n);
    CHECK(b.certified);
    CHECK(first_order_operator(TowerElement(b.P), b.lambda).is_zero());
    CHECK(first_order_operator(b.Q, b.lambda).is_zero());
    CHECK(b.lambda == lambda_of(n));
    if (n >= 1) {
      CHECK(b.P.num().degree() == static_cast<int>(n) - 1);
      CHECK(sgn(b.wronskian) != 0);
      CHECK(b.Qa.c[1] == b.P * ParamPoly(b.eps));
    }
  }
  CHECK(lambda_of(0) == -1);
  CHECK(lambda_of(3) == 5);
  CHECK(lambda_of(4) == 9);
  CHECK(lambda_of(6) == 20);
  CHECK(lambda_of(7) == 27);
}
