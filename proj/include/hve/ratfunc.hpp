#pragma once
#include <map>
#include <stdexcept>
#include <string>

#include "hve/upoly.hpp"

namespace hve {

struct UnsupportedDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// the three admissible poles
enum class Root { Plus1 = 0, Minus1 = 1, Zero = 2 };
Rational root_value(Root r);
const char* root_text(Root r);  // "t-1", "t+1", "t"

// num / ((t-1)^a (t+1)^b t^c), with num not vanishing at any root carrying a positive exponent
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long c) : num_(c) {}
  RatFunc(const ParamPoly& c) : num_(c) {}
  RatFunc(const UPoly& p) : num_(p) {}
  RatFunc(const QPoly& p) : num_(p) {}
  RatFunc(UPoly num, unsigned a, unsigned b, unsigned c);
  // general denominator; roots must lie in {1,-1,0}
  static RatFunc from_polys(const UPoly& num, const QPoly& den);
  static RatFunc t() { return RatFunc(UPoly::t_pow(1)); }
  static RatFunc inv_t2m1(unsigned e = 1) { return RatFunc(UPoly(1), e, e, 0); }

  const UPoly& num() const { return num_; }
  unsigned exp(Root r) const { return e_[static_cast<int>(r)]; }
  QPoly den() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return e_[0] == 0 && e_[1] == 0 && e_[2] == 0; }
  bool is_constant() const { return is_poly() && num_.degree() <= 0; }
  ParamPoly constant() const { return num_[0]; }  // for is_constant()
  bool param_free() const { return num_.param_free(); }
  // degree at infinity: deg num - deg den
  int degree() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const ParamPoly& s);
  friend RatFunc operator*(const ParamPoly& s, const RatFunc& a) { return a * s; }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.e_[0] == b.e_[0] && a.e_[1] == b.e_[1] && a.e_[2] == b.e_[2]; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  RatFunc pow(unsigned e) const;
  RatFunc diff() const;
  // divide by (t - root)^e
  RatFunc div_root(Root r, unsigned e = 1) const;
  RatFunc div_scalar(const Scalar& s) const;
  RatFunc subs_param(SymId s, const ParamPoly& v) const;
  unsigned param_degree(SymId s) const { return num_.param_degree(s); }
  RatFunc param_coeff(SymId s, unsigned e) const;
  // value at a rational point that is not a pole
  ParamPoly eval(const Rational& x) const;

  std::string text() const;

 private:
  UPoly num_;
  unsigned e_[3] = {0, 0, 0};
  void normalize();
};

struct PartialFractions {
  UPoly poly;
  // (root, m) -> coefficient of 1/(t-root)^m
  std::map<std::pair<Root, unsigned>, ParamPoly> parts;
  RatFunc recombine() const;
};

PartialFractions partial_fractions(const RatFunc& f);

// f = F' + sum_r residue[r]/(t - r); F has zero polynomial constant term
struct RationalIntegral {
  RatFunc F;
  ParamPoly residue[3];
};
RationalIntegral rational_integrate(const RatFunc& f);

}  // namespace hve
