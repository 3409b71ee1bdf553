#pragma once
#include <string>
#include <vector>

#include "hve/param_poly.hpp"

namespace hve {

// dense polynomial in t over Q, used by the basis construction
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c) { if (c) c_.push_back(Rational(c)); }
  explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static QPoly t_pow(unsigned e, const Rational& c = 1);
  static QPoly t2m1() { return QPoly({Rational(-1), Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const Rational& s);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  QPoly pow(unsigned e) const;
  QPoly diff() const;
  QPoly integral() const;  // zero constant
  Rational eval(const Rational& x) const;
  Rational integrate(const Rational& a, const Rational& b) const;
  // quotient and remainder, b != 0
  static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
  static QPoly gcd(const QPoly& a, const QPoly& b);  // monic
  // s*a + t*b = g (monic gcd)
  static QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
  QPoly monic() const;
  std::string text(const std::string& var = "t") const;

 private:
  std::vector<Rational> c_;
  void trim();
};

// dense polynomial in t with ParamPoly coefficients
class UPoly {
 public:
  UPoly() = default;
  UPoly(long c) { if (c) c_.emplace_back(c); }
  UPoly(const ParamPoly& c) { if (!c.is_zero()) c_.push_back(c); }
  explicit UPoly(std::vector<ParamPoly> c) : c_(std::move(c)) { trim(); }
  UPoly(const QPoly& q);
  static UPoly t_pow(unsigned e, const ParamPoly& c = ParamPoly(1));
  static UPoly linear(const Rational& root);  // t - root

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const ParamPoly& operator[](std::size_t i) const;
  const std::vector<ParamPoly>& coeffs() const { return c_; }
  bool param_free() const;
  QPoly to_qpoly() const;  // requires real constant coefficients

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const ParamPoly& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const ParamPoly& s) { return a *= s; }
  friend UPoly operator*(const ParamPoly& s, UPoly a) { return a *= s; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }
  UPoly pow(unsigned e) const;
  UPoly diff() const;
  UPoly integral() const;
  ParamPoly eval(const Rational& x) const;
  UPoly shift(const Rational& r) const;  // p(t + r)
  // exact division by (t - r); returns false (and leaves q unspecified) if remainder nonzero
  bool div_linear(const Rational& r, UPoly& q) const;
  // divide by monic rational polynomial
  static void divmod(const UPoly& a, const QPoly& b, UPoly& q, UPoly& r);
  UPoly subs_param(SymId s, const ParamPoly& v) const;
  unsigned param_degree(SymId s) const;
  UPoly param_coeff(SymId s, unsigned e) const;
  std::string text(const std::string& var = "t") const;

 private:
  std::vector<ParamPoly> c_;
  void trim();
};

}  // namespace hve
