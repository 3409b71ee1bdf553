#include "hve/ratfunc.hpp"

namespace hve {

Rational root_value(Root r) {
  switch (r) {
    case Root::Plus1: return 1;
    case Root::Minus1: return -1;
    default: return 0;
  }
}

const char* root_text(Root r) {
  switch (r) {
    case Root::Plus1: return "t-1";
    case Root::Minus1: return "t+1";
    default: return "t";
  }
}

static const Root kRoots[3] = {Root::Plus1, Root::Minus1, Root::Zero};

static UPoly mul_linear_pow(UPoly p, const Rational& r, unsigned e) {
  if (e == 0 || p.is_zero()) return p;
  UPoly lin = UPoly::linear(r);
  for (unsigned i = 0; i < e; ++i) p = p * lin;
  return p;
}

RatFunc::RatFunc(UPoly num, unsigned a, unsigned b, unsigned c) : num_(std::move(num)) {
  e_[0] = a, e_[1] = b, e_[2] = c;
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    e_[0] = e_[1] = e_[2] = 0;
    return;
  }
  for (int i = 0; i < 3; ++i) {
    Rational r = root_value(kRoots[i]);
    while (e_[i] > 0) {
      UPoly q;
      if (!num_.div_linear(r, q)) break;
      num_ = std::move(q);
      --e_[i];
    }
  }
}

RatFunc RatFunc::from_polys(const UPoly& num, const QPoly& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  QPoly d = den;
  unsigned e[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    Rational r = root_value(kRoots[i]);
    for (;;) {
      if (d.degree() < 1 || sgn(d.eval(r)) != 0) break;
      QPoly q, rem;
      QPoly::divmod(d, QPoly({Rational(-r), Rational(1)}), q, rem);
      d = q;
      ++e[i];
    }
  }
  if (d.degree() > 0)
    throw UnsupportedDenominator("denominator factor " + d.text() + " has roots outside {-1,0,1}");
  return RatFunc(num * ParamPoly(Rational(1) / d.lead()), e[0], e[1], e[2]);
}

QPoly RatFunc::den() const {
  QPoly d(1);
  for (int i = 0; i < 3; ++i) {
    QPoly lin({Rational(-root_value(kRoots[i])), Rational(1)});
    d = d * lin.pow(e_[i]);
  }
  return d;
}

int RatFunc::degree() const {
  if (num_.is_zero()) return -1000000;
  return num_.degree() - static_cast<int>(e_[0] + e_[1] + e_[2]);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  unsigned e[3];
  UPoly na = a.num_, nb = b.num_;
  for (int i = 0; i < 3; ++i) {
    e[i] = std::max(a.e_[i], b.e_[i]);
    Rational r = root_value(kRoots[i]);
    na = mul_linear_pow(std::move(na), r, e[i] - a.e_[i]);
    nb = mul_linear_pow(std::move(nb), r, e[i] - b.e_[i]);
  }
  return RatFunc(na + nb, e[0], e[1], e[2]);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.e_[0] + b.e_[0], a.e_[1] + b.e_[1], a.e_[2] + b.e_[2]);
}

RatFunc operator*(const RatFunc& a, const ParamPoly& s) {
  if (s.is_zero()) return RatFunc();
  RatFunc r = a;
  r.num_ *= s;
  r.normalize();
  return r;
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

RatFunc RatFunc::diff() const {
  if (is_poly()) return RatFunc(num_.diff());
  // (N/D)' = (N' L - N sum e_i L/(t-r_i)) / (D L), L = prod over active roots
  UPoly L(1);
  for (int i = 0; i < 3; ++i)
    if (e_[i]) L = L * UPoly::linear(root_value(kRoots[i]));
  UPoly top = num_.diff() * L;
  for (int i = 0; i < 3; ++i) {
    if (!e_[i]) continue;
    UPoly Li;
    L.div_linear(root_value(kRoots[i]), Li);
    top -= num_ * Li * ParamPoly(static_cast<long>(e_[i]));
  }
  unsigned e[3];
  for (int i = 0; i < 3; ++i) e[i] = e_[i] ? e_[i] + 1 : 0;
  return RatFunc(top, e[0], e[1], e[2]);
}

RatFunc RatFunc::div_root(Root r, unsigned e) const {
  RatFunc x = *this;
  x.e_[static_cast<int>(r)] += e;
  x.normalize();
  return x;
}

RatFunc RatFunc::div_scalar(const Scalar& s) const { return *this * ParamPoly(Scalar(1) / s); }

RatFunc RatFunc::subs_param(SymId s, const ParamPoly& v) const {
  return RatFunc(num_.subs_param(s, v), e_[0], e_[1], e_[2]);
}

RatFunc RatFunc::param_coeff(SymId s, unsigned e) const {
  return RatFunc(num_.param_coeff(s, e), e_[0], e_[1], e_[2]);
}

ParamPoly RatFunc::eval(const Rational& x) const {
  Rational d = den().eval(x);
  if (sgn(d) == 0) throw std::domain_error("evaluation at a pole");
  return num_.eval(x) * Scalar(Rational(1) / d);
}

std::string RatFunc::text() const {
  if (is_poly()) return num_.text();
  std::string n = num_.text();
  bool simple = num_.degree() == 0 && !num_[0].needs_parens();
  std::string s = simple ? n : "(" + n + ")";
  std::string d;
  auto fac = [&](const std::string& f, unsigned e, bool paren) {
    if (!e) return;
    if (!d.empty()) d += "*";
    std::string base = paren ? "(" + f + ")" : f;
    d += e == 1 ? base : base + "^" + std::to_string(e);
  };
  unsigned both = std::min(e_[0], e_[1]);
  fac("t^2-1", both, true);
  fac("t-1", e_[0] - both, true);
  fac("t+1", e_[1] - both, true);
  fac("t", e_[2], false);
  int nfac = (both > 0) + (e_[0] > both) + (e_[1] > both) + (e_[2] > 0);
  if (nfac > 1) d = "(" + d + ")";
  return s + "/" + d;
}

// ---- partial fractions

RatFunc PartialFractions::recombine() const {
  RatFunc r(poly);
  for (auto& [key, c] : parts) r += RatFunc(UPoly(c), 0, 0, 0).div_root(key.first, key.second);
  return r;
}

PartialFractions partial_fractions(const RatFunc& f) {
  PartialFractions pf;
  QPoly D = f.den();
  UPoly rem;
  UPoly::divmod(f.num(), D, pf.poly, rem);
  for (int i = 0; i < 3; ++i) {
    Root root = kRoots[i];
    unsigned m = f.exp(root);
    if (!m) continue;
    Rational rho = root_value(root);
    // other factors
    QPoly O(1);
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      QPoly lin({Rational(-root_value(kRoots[j])), Rational(1)});
      O = O * lin.pow(f.exp(kRoots[j]));
    }
    // shift t = rho + s
    UPoly Ns = rem.shift(rho);
    QPoly Os = UPoly(O).shift(rho).to_qpoly();
    Rational o0 = Os[0];
    // series of Ns/Os up to s^(m-1)
    std::vector<ParamPoly> c(m);
    for (unsigned j = 0; j < m; ++j) {
      ParamPoly acc = Ns[j];
      for (unsigned l = 1; l <= j; ++l)
        if (sgn(Os[l]) != 0) acc.add_scaled(c[j - l], Scalar(-Os[l]));
      c[j] = acc * Scalar(Rational(1) / o0);
    }
    for (unsigned j = 0; j < m; ++j)
      if (!c[j].is_zero()) pf.parts[{root, m - j}] = c[j];
  }
  return pf;
}

RationalIntegral rational_integrate(const RatFunc& f) {
  RationalIntegral out;
  PartialFractions pf = partial_fractions(f);
  RatFunc F(pf.poly.integral());
  for (auto& [key, c] : pf.parts) {
    auto [root, m] = key;
    if (m == 1) {
      out.residue[static_cast<int>(root)] = c;
      continue;
    }
    ParamPoly k = c * Scalar(Rational(-1, static_cast<long>(m - 1)));
    F += RatFunc(UPoly(k)).div_root(root, m - 1);
  }
  out.F = F;
  return out;
}

}  // namespace hve
