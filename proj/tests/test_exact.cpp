#include <random>

#include "doctest.h"
#include "hve/laurent.hpp"

using namespace hve;

namespace {
UPoly tq(std::vector<long> c) {
  std::vector<ParamPoly> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}

RatFunc random_ratfunc(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 5), ex(0, 3);
  std::vector<ParamPoly> v;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i) {
    Rational q(coef(rng), 1 + (coef(rng) + 5) % 3);
    q.canonicalize();
    v.emplace_back(q);
  }
  return RatFunc(UPoly(v), ex(rng), ex(rng), ex(rng));
}
}  // namespace

TEST_CASE("poly arithmetic") {
  UPoly a = tq({-1, 0, 1});
  CHECK(a * a == tq({1, 0, -2, 0, 1}));
  UPoly c = a.pow(3).diff();
  CHECK(c == tq({0, 6}) * a.pow(2));
  ParamPoly b = ParamPoly::var("b");
  UPoly p1(std::vector<ParamPoly>{ParamPoly(1), b}), p2(std::vector<ParamPoly>{ParamPoly(-1), b});
  UPoly prod = p1 * p2;
  CHECK(prod.text() == "b^2*t^2 - 1");
  CHECK(prod[2] == b * b);
}

TEST_CASE("param poly canonical text") {
  ParamPoly b = ParamPoly::var("b"), u = ParamPoly::var("u4");
  ParamPoly p = u * b + b * b * Scalar(Rational(3, 2)) - ParamPoly(1);
  CHECK(p.text() == "3/2*b^2 + b*u4 - 1");
  CHECK((p - p).is_zero());
  CHECK(p.subs(intern("b"), ParamPoly(2)) == u * Scalar(2) + ParamPoly(5));
  Scalar i = Scalar::I();
  CHECK(i * i == Scalar(-1));
  CHECK((Scalar(1) / Scalar(Rational(1), Rational(1))) == Scalar(Rational(1, 2), Rational(-1, 2)));
}

TEST_CASE("rational normalization and from_polys") {
  RatFunc f = RatFunc::from_polys(tq({0, 1}), QPoly({Rational(-1), Rational(0), Rational(1)}));
  CHECK(f.exp(Root::Plus1) == 1);
  CHECK(f.exp(Root::Minus1) == 1);
  RatFunc g = RatFunc::from_polys(tq({-1, 1}), QPoly({Rational(-1), Rational(0), Rational(1)}));
  CHECK(g == RatFunc(UPoly(1), 0, 1, 0));
  CHECK_THROWS_AS(RatFunc::from_polys(tq({1}), QPoly({Rational(1), Rational(0), Rational(1)})), UnsupportedDenominator);
  CHECK_THROWS_AS(RatFunc::from_polys(tq({1}), QPoly({Rational(-2), Rational(1)})), UnsupportedDenominator);
}

TEST_CASE("partial fractions examples") {
  auto pf = partial_fractions(RatFunc(tq({0, 1}), 1, 1, 0));
  CHECK(pf.poly.is_zero());
  CHECK(pf.parts.size() == 2);
  CHECK(pf.parts[{Root::Plus1, 1}] == ParamPoly(Rational(1, 2)));
  CHECK(pf.parts[{Root::Minus1, 1}] == ParamPoly(Rational(1, 2)));

  // 1/(t^2-1)^2, recombined independently
  auto pf2 = partial_fractions(RatFunc::inv_t2m1(2));
  CHECK(pf2.parts[{Root::Plus1, 2}] == ParamPoly(Rational(1, 4)));
  CHECK(pf2.parts[{Root::Plus1, 1}] == ParamPoly(Rational(-1, 4)));
  CHECK(pf2.parts[{Root::Minus1, 2}] == ParamPoly(Rational(1, 4)));
  CHECK(pf2.parts[{Root::Minus1, 1}] == ParamPoly(Rational(1, 4)));
  // oracle: common-denominator numerator over (t-1)^2 (t+1)^2
  UPoly num = tq({1, 1}).pow(2) * ParamPoly(Rational(1, 4)) - tq({-1, 1}) * tq({1, 1}).pow(2) * ParamPoly(Rational(1, 4)) +
              tq({-1, 1}).pow(2) * ParamPoly(Rational(1, 4)) + tq({1, 1}) * tq({-1, 1}).pow(2) * ParamPoly(Rational(1, 4));
  CHECK(num == UPoly(1));

  auto pf3 = partial_fractions(RatFunc(tq({1, 0, 1}), 0, 0, 1));
  CHECK(pf3.poly == tq({0, 1}));
  CHECK(pf3.parts[{Root::Zero, 1}] == ParamPoly(1));
}

TEST_CASE("partial fractions recombine on random inputs") {
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    RatFunc f = random_ratfunc(rng);
    CHECK(partial_fractions(f).recombine() == f);
  }
}

TEST_CASE("rational integration") {
  std::mt19937 rng(11);
  for (int it = 0; it < 100; ++it) {
    RatFunc f = random_ratfunc(rng);
    RationalIntegral ri = rational_integrate(f);
    RatFunc back = ri.F.diff();
    back += RatFunc(UPoly(ri.residue[0]), 1, 0, 0);
    back += RatFunc(UPoly(ri.residue[1]), 0, 1, 0);
    back += RatFunc(UPoly(ri.residue[2]), 0, 0, 1);
    CHECK(back == f);
  }
}

TEST_CASE("laurent expansions") {
  LaurentSeries A = arctanh_series(5);
  CHECK(A.coeff(-1) == ParamPoly(1));
  CHECK(A.coeff(-2).is_zero());
  CHECK(A.coeff(-3) == ParamPoly(Rational(1, 3)));
  CHECK(A.coeff(-5) == ParamPoly(Rational(1, 5)));
  LaurentSeries g = laurent_expand_at_infinity(RatFunc::inv_t2m1(), 4);
  CHECK(g.coeff(-2) == ParamPoly(1));
  CHECK(g.coeff(-4) == ParamPoly(1));
  CHECK(g.coeff(-3).is_zero());
  CHECK(g.coeff(0).is_zero());
  LaurentSeries h = laurent_expand_at_infinity(RatFunc(tq({0, 1}), 1, 1, 0), 3);
  CHECK(h.coeff(-1) == ParamPoly(1));
  CHECK(h.coeff(-3) == ParamPoly(1));
  CHECK(h.coeff(-2).is_zero());
  CHECK_THROWS(h.coeff(-4));
}

TEST_CASE("laurent expansion commutes with product and derivative") {
  std::mt19937 rng(3);
  for (int it = 0; it < 60; ++it) {
    RatFunc f = random_ratfunc(rng), g = random_ratfunc(rng);
    int N = 8;
    LaurentSeries sf = laurent_expand_at_infinity(f, N + 12), sg = laurent_expand_at_infinity(g, N + 12);
    LaurentSeries prod = (sf * sg);
    CHECK(prod.low() <= -N);
    CHECK(prod.truncate(-N) == laurent_expand_at_infinity(f * g, N));
    CHECK(sf.diff().truncate(-N) == laurent_expand_at_infinity(f.diff(), N));
  }
}
