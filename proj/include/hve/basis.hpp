#pragma once
#include "hve/tower.hpp"

namespace hve {

struct EigenIndex {
  unsigned n = 0;
  Rational lambda;
  explicit EigenIndex(unsigned n_);
};

Rational lambda_of(unsigned n);

struct BasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (t^2-1)^-1 d^(n-1)/dt^(n-1) (t^2-1)^n, n >= 1
QPoly rodrigues_P(unsigned n);
// 4^-n n(n+1)/n!^2
Rational epsilon(unsigned n);

struct BasisPair {
  unsigned n = 0;
  Rational lambda;
  RatFunc P;           // polynomial for n >= 1
  Rational eps;
  QPoly W;             // Q = eps P atanh(1/t) + W/(t^2-1)
  ArctanhPoly Qa;      // Q as polynomial in A
  TowerElement Q;
  Rational wronskian;  // P Q' - P' Q = wronskian / (t^2-1)^2
  bool certified = false;
};

// cached, certified on construction; throws BasisError if certification fails
const BasisPair& basis_pair(unsigned n);

// 1/2 (t^2-1) y'' + 2 t y' - lambda y
TowerElement first_order_operator(const TowerElement& y, const Rational& lambda);

}  // namespace hve
