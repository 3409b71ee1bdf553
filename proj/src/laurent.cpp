#include "hve/laurent.hpp"

#include <stdexcept>

namespace hve {

LaurentSeries::LaurentSeries(int top, int low, std::vector<ParamPoly> c) : top_(top), low_(low), c_(std::move(c)) {
  int n = top_ - low_ + 1;
  c_.resize(n > 0 ? n : 0);
}

ParamPoly LaurentSeries::coeff(int e) const {
  if (e < low_) throw std::logic_error("Laurent coefficient below guaranteed order");
  if (e > top_) return ParamPoly();
  return c_[top_ - e];
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  int top = std::max(a.top_, b.top_), low = std::max(a.low_, b.low_);
  std::vector<ParamPoly> c;
  for (int e = top; e >= low; --e) c.push_back(a.coeff(e) + b.coeff(e));
  return LaurentSeries(top, low, std::move(c));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  int top = a.top_ + b.top_;
  int low = std::max(a.low_ + b.top_, b.low_ + a.top_);
  std::vector<ParamPoly> c(top >= low ? top - low + 1 : 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size() && i + j < c.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j].add_mul(a.c_[i], b.c_[j]);
  }
  return LaurentSeries(top, low, std::move(c));
}

LaurentSeries LaurentSeries::scaled(const ParamPoly& s) const {
  LaurentSeries r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

LaurentSeries LaurentSeries::truncate(int low) const {
  if (low < low_) throw std::logic_error("cannot extend a truncated series");
  std::vector<ParamPoly> c;
  for (int e = top_; e >= low; --e) c.push_back(coeff(e));
  return LaurentSeries(top_, low, std::move(c));
}

LaurentSeries LaurentSeries::diff() const {
  std::vector<ParamPoly> c;
  for (int e = top_; e >= low_; --e) c.push_back(coeff(e) * Scalar(static_cast<long>(e)));
  // derivative of the unknown tail starts one order lower
  return LaurentSeries(top_ - 1, low_ - 1, std::move(c));
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  int low = std::max(low_, o.low_);
  int top = std::max(top_, o.top_);
  for (int e = top; e >= low; --e)
    if (coeff(e) != o.coeff(e)) return false;
  return true;
}

LaurentSeries laurent_expand_at_infinity(const RatFunc& f, int N) {
  if (N < 0) throw std::invalid_argument("truncation order must be >= 0");
  if (f.is_zero()) return LaurentSeries(-N - 1, -N, {});
  const UPoly& num = f.num();
  int dN = num.degree();
  int ddeg = static_cast<int>(f.exp(Root::Plus1) + f.exp(Root::Minus1) + f.exp(Root::Zero));
  int top = dN - ddeg;
  int len = top + N + 1;
  if (len <= 0) return LaurentSeries(-N - 1, -N, {});
  // Dt(x) = (1-x)^a (1+x)^b
  QPoly Dt = QPoly({Rational(1), Rational(-1)}).pow(f.exp(Root::Plus1)) *
             QPoly({Rational(1), Rational(1)}).pow(f.exp(Root::Minus1));
  // inverse series of Dt
  std::vector<Rational> inv(len);
  inv[0] = 1;
  for (int j = 1; j < len; ++j) {
    Rational acc = 0;
    for (int l = 1; l <= j && l <= Dt.degree(); ++l) acc -= Dt[l] * inv[j - l];
    inv[j] = acc;
  }
  // reversed numerator: coefficient of x^i is num[dN - i]
  std::vector<ParamPoly> c(len);
  for (int i = 0; i <= dN && i < len; ++i) {
    const ParamPoly& ni = num[dN - i];
    if (ni.is_zero()) continue;
    for (int j = 0; i + j < len; ++j)
      if (sgn(inv[j]) != 0) c[i + j].add_scaled(ni, Scalar(inv[j]));
  }
  return LaurentSeries(top, -N, std::move(c));
}

LaurentSeries arctanh_series(int N, unsigned p) {
  if (N < 0) throw std::invalid_argument("truncation order must be >= 0");
  if (p == 0) return LaurentSeries(0, -N, {ParamPoly(1)});
  std::vector<ParamPoly> c;
  for (int e = -1; e >= -N; --e) c.push_back((-e) % 2 == 1 ? ParamPoly(Rational(1, -e)) : ParamPoly());
  LaurentSeries A(-1, -N, c), r = A;
  for (unsigned i = 1; i < p; ++i) r = (r * A).truncate(-N);
  return r;
}

}  // namespace hve
