#include "hve/basis.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hve {

Rational lambda_of(unsigned n) {
  Rational l(static_cast<long>((static_cast<long>(n) - 1) * (static_cast<long>(n) + 2)), 2);
  l.canonicalize();
  return l;
}

EigenIndex::EigenIndex(unsigned n_) : n(n_), lambda(lambda_of(n_)) {}

QPoly rodrigues_P(unsigned n) {
  if (n == 0) throw BasisError("n = 0 has no Rodrigues polynomial; use basis_pair(0)");
  QPoly d = QPoly::t2m1().pow(n);
  for (unsigned i = 0; i + 1 < n; ++i) d = d.diff();
  QPoly q, r;
  QPoly::divmod(d, QPoly::t2m1(), q, r);
  if (!r.is_zero()) throw BasisError("Rodrigues numerator not divisible by t^2-1");
  return q;
}

Rational epsilon(unsigned n) {
  mpz_class four;
  mpz_ui_pow_ui(four.get_mpz_t(), 4, n);
  Rational f = factorial(n);
  return Rational(static_cast<long>(n) * static_cast<long>(n + 1)) / (Rational(four) * f * f);
}

TowerElement first_order_operator(const TowerElement& y, const Rational& lambda) {
  TowerElement d1 = differentiate(y), d2 = differentiate(d1);
  RatFunc half_t2m1(UPoly(QPoly({Rational(-1, 2), Rational(0), Rational(1, 2)})));
  return d2 * half_t2m1 + d1 * RatFunc(UPoly(QPoly({Rational(0), Rational(2)}))) - y * RatFunc(ParamPoly(lambda));
}

namespace {

BasisPair build(unsigned n) {
  BasisPair b;
  b.n = n;
  b.lambda = lambda_of(n);
  b.eps = epsilon(n);
  if (n == 0) {
    b.P = RatFunc(UPoly(QPoly({Rational(0), Rational(1)})), 1, 1, 0);
    b.W = QPoly(1);
    b.Qa.c = {RatFunc::inv_t2m1()};
  } else {
    QPoly P = rodrigues_P(n);
    b.P = RatFunc(P);
    // Hermite reduction of 1/V^2, V = (t^2-1) P squarefree
    QPoly V = QPoly::t2m1() * P, sig, tau;
    QPoly g = QPoly::ext_gcd(V, V.diff(), sig, tau);
    if (g.degree() != 0) throw BasisError("t^2-1 and P_n not coprime or P_n not squarefree");
    // int 1/V^2 = -tau/V + int (sig + tau')/V
    QPoly C = sig + tau.diff(), E, rem;
    QPoly::divmod(C, P, E, rem);
    if (!rem.is_zero() || E.degree() > 1 || sgn(E[1]) != 0)
      throw BasisError("reduction of order left logarithms outside arctanh");
    Rational e0 = E[0];
    // P * int = -tau/(t^2-1) - e0 P A; rescale so the A coefficient is eps P
    Rational kappa = b.eps / (-e0);
    b.W = tau * (-kappa);
    b.Qa.c = {RatFunc(UPoly(b.W), 1, 1, 0), RatFunc(P * b.eps)};
  }
  b.Q = b.Qa.to_tower();
  // certification
  TowerElement Pt(b.P);
  if (!first_order_operator(Pt, b.lambda).is_zero() || !first_order_operator(b.Q, b.lambda).is_zero())
    throw BasisError("basis pair fails the first order equation at n = " + std::to_string(n));
  TowerElement wr = Pt * differentiate(b.Q) - differentiate(Pt) * b.Q;
  if (!wr.is_rational()) throw BasisError("Wronskian is not rational");
  RatFunc w = wr.rational_part() * RatFunc(QPoly::t2m1().pow(2));
  if (!w.is_constant() || w.is_zero()) throw BasisError("Wronskian is not c/(t^2-1)^2");
  b.wronskian = w.constant().as_scalar().re();
  if (n >= 1 && b.P.num().degree() != static_cast<int>(n) - 1) throw BasisError("deg P_n != n - 1");
  b.certified = true;
  return b;
}

std::mutex cache_mu;
std::map<unsigned, std::unique_ptr<BasisPair>> cache;

}  // namespace

const BasisPair& basis_pair(unsigned n) {
  std::lock_guard<std::mutex> lk(cache_mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto p = std::make_unique<BasisPair>(build(n));
  const BasisPair& ref = *p;
  cache.emplace(n, std::move(p));
  return ref;
}

}  // namespace hve
