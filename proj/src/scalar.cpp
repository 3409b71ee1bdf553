#include "hve/scalar.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace hve {

std::string rat_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rat_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Rational rat_parse(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero scalar");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool Scalar::needs_parens() const { return sgn(re_) != 0 && sgn(im_) != 0; }

std::string Scalar::text() const {
  if (sgn(im_) == 0) return rat_text(re_);
  std::string ims;
  if (im_ == 1) ims = "I";
  else if (im_ == -1) ims = "-I";
  else ims = rat_text(im_) + "*I";
  if (sgn(re_) == 0) return ims;
  std::string s = "(" + rat_text(re_);
  if (sgn(im_) > 0) s += "+";
  return s + ims + ")";
}

namespace {
std::mutex fact_mu;
std::vector<Rational> fact_cache{Rational(1)};
}  // namespace

Rational factorial(unsigned n) {
  std::lock_guard<std::mutex> lk(fact_mu);
  while (fact_cache.size() <= n) {
    Rational next = fact_cache.back() * Rational(static_cast<unsigned long>(fact_cache.size()));
    fact_cache.push_back(next);
  }
  return fact_cache[n];
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

}  // namespace hve
