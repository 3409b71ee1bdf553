#include "hve/upoly.hpp"

#include <stdexcept>

namespace hve {

// ---- QPoly

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::t_pow(unsigned e, const Rational& c) {
  std::vector<Rational> v(e + 1);
  v[e] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const Rational& s) {
  QPoly r = a;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

QPoly QPoly::pow(unsigned e) const {
  QPoly r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

QPoly QPoly::diff() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return QPoly(std::move(v));
}

QPoly QPoly::integral() const {
  if (c_.empty()) return QPoly();
  std::vector<Rational> v(c_.size() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
  return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Rational QPoly::integrate(const Rational& a, const Rational& b) const {
  QPoly I = integral();
  return I.eval(b) - I.eval(a);
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  std::vector<Rational> quo(a.degree() >= db ? a.degree() - db + 1 : 0);
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[i] / b.c_[db];
    quo[i - db] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = QPoly(std::move(quo));
  r = QPoly(std::move(rem));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / lead());
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b, q, r;
  while (!y.is_zero()) {
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

QPoly QPoly::ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0(1), s1, t0, t1(1), q, r;
  while (!r1.is_zero()) {
    divmod(r0, r1, q, r);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1, r1 = r;
    s0 = s1, s1 = s2;
    t0 = t1, t1 = t2;
  }
  Rational l = r0.lead();
  if (sgn(l) == 0) throw std::domain_error("ext_gcd of zero polynomials");
  s = s0 * (Rational(1) / l);
  t = t0 * (Rational(1) / l);
  return r0.monic();
}

static std::string term_text(const std::string& coef, bool coef_parens, bool coef_one, unsigned e,
                             const std::string& var) {
  std::string vs = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
  if (e == 0) return coef;
  if (coef_one) return vs;
  return (coef_parens ? "(" + coef + ")" : coef) + "*" + vs;
}

std::string QPoly::text(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (sgn(c_[i]) == 0) continue;
    bool neg = sgn(c_[i]) < 0;
    Rational a = neg ? Rational(-c_[i]) : c_[i];
    std::string t = term_text(rat_text(a), false, a == 1, static_cast<unsigned>(i), var);
    if (s.empty()) s = neg ? "-" + t : t;
    else s += (neg ? " - " : " + ") + t;
  }
  return s;
}

// ---- UPoly

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const ParamPoly& UPoly::operator[](std::size_t i) const {
  static const ParamPoly zero;
  return i < c_.size() ? c_[i] : zero;
}

UPoly::UPoly(const QPoly& q) {
  for (auto& x : q.coeffs()) c_.emplace_back(x);
  trim();
}

UPoly UPoly::t_pow(unsigned e, const ParamPoly& c) {
  std::vector<ParamPoly> v(e + 1);
  v[e] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear(const Rational& root) { return UPoly(std::vector<ParamPoly>{ParamPoly(Rational(-root)), ParamPoly(1)}); }

bool UPoly::param_free() const {
  for (auto& c : c_)
    if (!c.is_constant()) return false;
  return true;
}

QPoly UPoly::to_qpoly() const {
  std::vector<Rational> v;
  for (auto& c : c_) {
    Scalar s = c.as_scalar();
    if (!s.is_real()) throw std::logic_error("to_qpoly: non-real coefficient");
    v.push_back(s.re());
  }
  return QPoly(std::move(v));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const ParamPoly& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<ParamPoly> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) v[i + j].add_mul(a.c_[i], b.c_[j]);
  }
  return UPoly(std::move(v));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

UPoly UPoly::diff() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<ParamPoly> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  return UPoly(std::move(v));
}

UPoly UPoly::integral() const {
  if (c_.empty()) return UPoly();
  std::vector<ParamPoly> v(c_.size() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] * Scalar(Rational(1, static_cast<long>(i + 1)));
  return UPoly(std::move(v));
}

ParamPoly UPoly::eval(const Rational& x) const {
  ParamPoly r;
  if (sgn(x) == 0) return (*this)[0];
  for (std::size_t i = c_.size(); i-- > 0;) {
    r *= Scalar(x);
    r += c_[i];
  }
  return r;
}

UPoly UPoly::shift(const Rational& r) const {
  // Horner in (t + r)
  UPoly res;
  UPoly lin(std::vector<ParamPoly>{ParamPoly(r), ParamPoly(1)});
  for (std::size_t i = c_.size(); i-- > 0;) {
    res = res * lin;
    res += UPoly(c_[i]);
  }
  return res;
}

bool UPoly::div_linear(const Rational& r, UPoly& q) const {
  if (c_.empty()) {
    q = UPoly();
    return true;
  }
  std::vector<ParamPoly> v(c_.size() - 1);
  ParamPoly carry;
  for (std::size_t i = c_.size(); i-- > 0;) {
    ParamPoly cur = c_[i] + carry * Scalar(r);
    if (i == 0) {
      if (!cur.is_zero()) return false;
    } else {
      v[i - 1] = cur;
      carry = std::move(cur);
    }
  }
  q = UPoly(std::move(v));
  return true;
}

void UPoly::divmod(const UPoly& a, const QPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<ParamPoly> rem = a.c_;
  int db = b.degree();
  std::vector<ParamPoly> quo(a.degree() >= db ? a.degree() - db + 1 : 0);
  Scalar inv = Scalar(Rational(1) / b.lead());
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    ParamPoly f = rem[i] * inv;
    for (int j = 0; j <= db; ++j)
      if (sgn(b[j]) != 0) rem[i - db + j].add_scaled(f, Scalar(-b[j]));
    quo[i - db] = std::move(f);
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly UPoly::subs_param(SymId s, const ParamPoly& v) const {
  std::vector<ParamPoly> w;
  for (auto& c : c_) w.push_back(c.subs(s, v));
  return UPoly(std::move(w));
}

unsigned UPoly::param_degree(SymId s) const {
  unsigned d = 0;
  for (auto& c : c_) d = std::max(d, c.degree(s));
  return d;
}

UPoly UPoly::param_coeff(SymId s, unsigned e) const {
  std::vector<ParamPoly> w;
  for (auto& c : c_) w.push_back(c.coeff(s, e));
  return UPoly(std::move(w));
}

std::string UPoly::text(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const ParamPoly& c = c_[i];
    if (c.is_zero()) continue;
    bool neg = false;
    ParamPoly a = c;
    if (c.size() == 1) {
      Scalar sc = c.terms().begin()->second;
      if (sc.is_real() && sgn(sc.re()) < 0) {
        neg = true;
        a = -c;
      }
    }
    bool one = a.is_constant() && a.as_scalar().is_one();
    std::string t = term_text(a.text(), a.needs_parens(), one, static_cast<unsigned>(i), var);
    if (i == 0 && !s.empty() && a.size() > 1) t = "(" + t + ")";
    if (s.empty()) s = neg ? "-" + t : t;
    else s += (neg ? " - " : " + ") + t;
  }
  return s;
}

}  // namespace hve
