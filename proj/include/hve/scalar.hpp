#pragma once
#include <gmpxx.h>

#include <string>

namespace hve {

using Rational = mpq_class;

std::string rat_str(const Rational& q);   // "p/q", always with denominator
std::string rat_text(const Rational& q);  // "p" or "p/q"
Rational rat_parse(const std::string& s);

// Gaussian rational re + im*I
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}
  Scalar(const Rational& r) : re_(r) {}
  Scalar(const Rational& r, const Rational& i) : re_(r), im_(i) {}
  static Scalar I() { return Scalar(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // arbitrary total order, used for canonical sorting only
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar pow(unsigned e) const;

  std::string text() const;  // 3/4, -2, (1/2+3*I)
  bool needs_parens() const;  // true when text is a sum

 private:
  Rational re_, im_;
};

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

}  // namespace hve
