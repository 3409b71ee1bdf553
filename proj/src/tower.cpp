#include "hve/tower.hpp"

#include <stdexcept>

namespace hve {

SymId ln2_symbol() {
  static const SymId id = intern("ln2");
  return id;
}

namespace {

using Terms = std::map<GenExp, RatFunc>;

void add_to(Terms& t, const GenExp& g, const RatFunc& r) {
  if (r.is_zero()) return;
  auto [it, ins] = t.try_emplace(g, r);
  if (!ins) {
    it->second += r;
    if (it->second.is_zero()) t.erase(it);
  }
}

unsigned weight(const GenExp& g) { return g[0] + g[1] + g[2] + 2 * g[3]; }

// internal basis: slot 1 holds M = L2 - ln2, so DL' = -M/(t-1) and no constants appear in the derivation
Terms deriv(const Terms& in, bool internal) {
  Terms out;
  const RatFunc inv_tm1(UPoly(1), 1, 0, 0), inv_tp1(UPoly(1), 0, 1, 0), inv_t(UPoly(1), 0, 0, 1);
  for (auto& [g, r] : in) {
    add_to(out, g, r.diff());
    if (g[0]) {
      GenExp h = g;
      --h[0];
      add_to(out, h, r * inv_tm1 * ParamPoly(static_cast<long>(g[0])));
    }
    if (g[1]) {
      GenExp h = g;
      --h[1];
      add_to(out, h, r * inv_tp1 * ParamPoly(static_cast<long>(g[1])));
    }
    if (g[2]) {
      GenExp h = g;
      --h[2];
      add_to(out, h, r * inv_t * ParamPoly(static_cast<long>(g[2])));
    }
    if (g[3]) {
      GenExp h = g;
      --h[3];
      RatFunc f = r * inv_tm1 * ParamPoly(static_cast<long>(g[3]));
      if (!internal) add_to(out, h, f * ParamPoly::var(ln2_symbol()));
      ++h[1];
      add_to(out, h, -f);
    }
  }
  return out;
}

Terms to_internal(const Terms& in) {
  Terms out;
  ParamPoly ln2 = ParamPoly::var(ln2_symbol());
  for (auto& [g, r] : in) {
    for (unsigned j = 0; j <= g[1]; ++j) {
      GenExp h = g;
      h[1] = j;
      add_to(out, h, r * (ln2.pow(g[1] - j) * Scalar(binomial(g[1], j))));
    }
  }
  return out;
}

Terms from_internal(const Terms& in) {
  Terms out;
  ParamPoly mln2 = -ParamPoly::var(ln2_symbol());
  for (auto& [g, r] : in) {
    for (unsigned i = 0; i <= g[1]; ++i) {
      GenExp h = g;
      h[1] = i;
      add_to(out, h, r * (mln2.pow(g[1] - i) * Scalar(binomial(g[1], i))));
    }
  }
  return out;
}

std::string gen_text(const GenExp& g) {
  static const char* names[4] = {"L1", "L2", "LT", "DL"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (!g[i]) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (g[i] > 1) s += "^" + std::to_string(g[i]);
  }
  return s;
}

}  // namespace

// ---- TowerElement

TowerElement TowerElement::gen(Gen g, unsigned e) {
  GenExp x{0, 0, 0, 0};
  x[g] = e;
  TowerElement r;
  r.add(x, RatFunc(1));
  return r;
}

TowerElement TowerElement::arctanh() {
  TowerElement r;
  r.add({0, 1, 0, 0}, RatFunc(ParamPoly(Rational(1, 2))));
  r.add({1, 0, 0, 0}, RatFunc(ParamPoly(Rational(-1, 2))));
  return r;
}

TowerElement TowerElement::ln_t2m1() { return gen(L1) + gen(L2); }

bool TowerElement::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == GenExp{0, 0, 0, 0});
}

RatFunc TowerElement::rational_part() const { return coeff({0, 0, 0, 0}); }

RatFunc TowerElement::coeff(const GenExp& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? RatFunc() : it->second;
}

unsigned TowerElement::degree(Gen g) const {
  unsigned d = 0;
  for (auto& [x, r] : terms_) d = std::max(d, x[g]);
  return d;
}

void TowerElement::add(const GenExp& g, const RatFunc& r) { add_to(terms_, g, r); }

TowerElement TowerElement::operator-() const {
  TowerElement r = *this;
  for (auto& [g, c] : r.terms_) c = -c;
  return r;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
  for (auto& [g, r] : o.terms_) add(g, r);
  return *this;
}

TowerElement& TowerElement::operator-=(const TowerElement& o) {
  for (auto& [g, r] : o.terms_) add(g, -r);
  return *this;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
  TowerElement r;
  for (auto& [ga, ra] : a.terms_)
    for (auto& [gb, rb] : b.terms_) {
      GenExp g{ga[0] + gb[0], ga[1] + gb[1], ga[2] + gb[2], ga[3] + gb[3]};
      r.add(g, ra * rb);
    }
  return r;
}

TowerElement operator*(const TowerElement& a, const RatFunc& f) {
  TowerElement r;
  if (f.is_zero()) return r;
  for (auto& [g, c] : a.terms_) r.add(g, c * f);
  return r;
}

TowerElement TowerElement::pow(unsigned e) const {
  TowerElement r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

TowerElement TowerElement::subs_param(SymId s, const ParamPoly& v) const {
  TowerElement r;
  for (auto& [g, c] : terms_) r.add(g, c.subs_param(s, v));
  return r;
}

unsigned TowerElement::param_degree(SymId s) const {
  unsigned d = 0;
  for (auto& [g, c] : terms_) d = std::max(d, c.param_degree(s));
  return d;
}

TowerElement TowerElement::param_coeff(SymId s, unsigned e) const {
  TowerElement r;
  for (auto& [g, c] : terms_) r.add(g, c.param_coeff(s, e));
  return r;
}

std::string TowerElement::text() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto& [g, r] = *it;
    std::string gs = gen_text(g), rs = r.text();
    std::string term;
    if (gs.empty()) term = !s.empty() && rs[0] == '-' ? "(" + rs + ")" : rs;
    else if (r.is_constant() && r.constant().is_constant() && r.constant().as_scalar().is_one()) term = gs;
    else term = "(" + rs + ")*" + gs;
    s += s.empty() ? term : " + " + term;
  }
  return s;
}

TowerElement differentiate(const TowerElement& e) {
  TowerElement r;
  for (auto& [g, c] : deriv(e.terms(), false)) r.add(g, c);
  return r;
}

// ---- integration

namespace {

std::vector<GenExp> monomials_of_weight(unsigned w, bool use_lt, bool use_dl = true) {
  std::vector<GenExp> v;
  for (unsigned d = 0; 2 * d <= w; ++d) {
    if (d && !use_dl) break;
    for (unsigned c = 0; c + 2 * d <= w; ++c) {
      if (c && !use_lt) break;
      for (unsigned a = 0; a + c + 2 * d <= w; ++a) v.push_back({a, w - a - c - 2 * d, c, d});
    }
  }
  return v;
}

struct Contribution {
  GenExp target;
  Root root;
  long coef;
};

std::vector<Contribution> contributions(const GenExp& m) {
  std::vector<Contribution> v;
  if (m[0]) { GenExp h = m; --h[0]; v.push_back({h, Root::Plus1, static_cast<long>(m[0])}); }
  if (m[1]) { GenExp h = m; --h[1]; v.push_back({h, Root::Minus1, static_cast<long>(m[1])}); }
  if (m[2]) { GenExp h = m; --h[2]; v.push_back({h, Root::Zero, static_cast<long>(m[2])}); }
  if (m[3]) { GenExp h = m; --h[3]; ++h[1]; v.push_back({h, Root::Plus1, -static_cast<long>(m[3])}); }
  return v;
}

ParamPoly residue_at(const RatFunc& f, Root r) {
  if (f.exp(r) == 0) return ParamPoly();
  auto pf = partial_fractions(f);
  auto it = pf.parts.find({r, 1u});
  return it == pf.parts.end() ? ParamPoly() : it->second;
}

// solve A x = b exactly over Q with ParamPoly rhs; false if inconsistent
bool solve_linear(std::vector<std::vector<Rational>> A, std::vector<ParamPoly> b, std::size_t ncols,
                  std::vector<ParamPoly>& x, std::vector<ParamPoly>* leftover = nullptr) {
  std::size_t rows = A.size();
  std::vector<long> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(A[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    Rational inv = Rational(1) / A[r][c];
    for (auto& v : A[r]) v *= inv;
    b[r] *= Scalar(inv);
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || sgn(A[q][c]) == 0) continue;
      Rational f = A[q][c];
      for (std::size_t k = 0; k < ncols; ++k) A[q][k] -= f * A[r][k];
      b[q].add_scaled(b[r], Scalar(-f));
    }
    pivcol.push_back(static_cast<long>(c));
    ++r;
  }
  bool ok = true;
  for (std::size_t q = r; q < rows; ++q)
    if (!b[q].is_zero()) {
      ok = false;
      if (leftover) leftover->push_back(b[q]);
    }
  if (!ok && !leftover) return false;
  x.assign(ncols, ParamPoly());
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i];
  return ok;
}


// top-down ansatz by weight; with conds set, inconsistent residue rows are collected instead of failing
std::optional<Terms> integrate_core(const Terms& e, bool use_lt, bool use_dl, std::vector<ParamPoly>* conds,
                                    std::string* why) {
  unsigned W = 0;
  for (auto& [g, r] : e) W = std::max(W, weight(g));
  Terms F;
  std::vector<GenExp> cur = monomials_of_weight(W + 1, use_lt, use_dl);
  std::map<GenExp, RatFunc> shat;
  std::size_t before = conds ? conds->size() : 0;
  for (unsigned w = W + 1; w >= 1; --w) {
    std::vector<GenExp> lower = monomials_of_weight(w - 1, use_lt, use_dl);
    std::map<GenExp, std::size_t> lidx;
    for (std::size_t i = 0; i < lower.size(); ++i) lidx[lower[i]] = i;
    // base_n = e_n - sum_m shat_m c_{m->n}
    std::vector<RatFunc> base(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
      auto it = e.find(lower[i]);
      if (it != e.end()) base[i] = it->second;
    }
    // coefficient of kappa_m in n's residue at root
    std::vector<std::vector<Rational>> A(lower.size() * 3, std::vector<Rational>(cur.size()));
    for (std::size_t j = 0; j < cur.size(); ++j) {
      auto sh = shat.find(cur[j]);
      for (auto& c : contributions(cur[j])) {
        std::size_t i = lidx.at(c.target);
        if (sh != shat.end())
          base[i] -= sh->second.div_root(c.root) * ParamPoly(c.coef);
        A[i * 3 + static_cast<int>(c.root)][j] += c.coef;
      }
    }
    std::vector<ParamPoly> rhs(lower.size() * 3);
    for (std::size_t i = 0; i < lower.size(); ++i)
      for (int r = 0; r < 3; ++r) rhs[i * 3 + r] = residue_at(base[i], static_cast<Root>(r));
    std::vector<ParamPoly> kappa;
    if (!solve_linear(A, rhs, cur.size(), kappa, conds) && !conds) {
      if (why) *why = "residue conditions inconsistent at weight " + std::to_string(w - 1);
      return std::nullopt;
    }
    for (std::size_t j = 0; j < cur.size(); ++j) {
      RatFunc s = shat.count(cur[j]) ? shat[cur[j]] : RatFunc();
      s += RatFunc(kappa[j]);
      add_to(F, cur[j], s);
      if (kappa[j].is_zero()) continue;
      for (auto& c : contributions(cur[j]))
        base[lidx.at(c.target)] -= RatFunc(UPoly(kappa[j] * Scalar(c.coef))).div_root(c.root);
    }
    shat.clear();
    bool conditional = conds && conds->size() > before;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (base[i].is_zero()) continue;
      RationalIntegral ri = rational_integrate(base[i]);
      if (!conditional)
        for (auto& r : ri.residue)
          if (!r.is_zero()) throw std::logic_error("integrate: residue survived the linear solve");
      shat[lower[i]] = ri.F;
    }
    cur = lower;
  }
  for (auto& [g, r] : shat) add_to(F, g, r);
  if (!(conds && conds->size() > before) && deriv(F, use_dl) != e) throw std::logic_error("integrate: certification failed");
  return F;
}

bool needs_lt(const TowerElement& e) {
  for (auto& [g, r] : e.terms())
    if (g[2] || r.exp(Root::Zero)) return true;
  return false;
}

}  // namespace

IntegrateResult integrate(const TowerElement& e_pub) {
  IntegrateResult res;
  if (e_pub.is_zero()) {
    res.value = TowerElement();
    return res;
  }
  std::string why;
  auto F = integrate_core(to_internal(e_pub.terms()), needs_lt(e_pub), true, nullptr, &why);
  if (!F) {
    res.failure = NewTranscendentalNeeded{e_pub, why};
    return res;
  }
  TowerElement out;
  for (auto& [g, r] : from_internal(*F)) out.add(g, r);
  // drop the constant produced by the change back from M to L2
  RatFunc r0 = out.rational_part();
  if (!r0.is_zero()) {
    ParamPoly c0 = partial_fractions(r0).poly[0];
    if (!c0.is_zero()) out.add({0, 0, 0, 0}, RatFunc(-c0));
  }
  res.value = out;
  return res;
}

ClosedIntegral integrate_closed(const TowerElement& e) {
  if (e.degree(DL) > 0) throw std::invalid_argument("integrate_closed: integrand contains the dilogarithm");
  ClosedIntegral out;
  if (e.is_zero()) return out;
  auto F = integrate_core(e.terms(), needs_lt(e), false, &out.conditions, nullptr);
  for (auto& [g, r] : *F) out.value.add(g, r);
  std::vector<ParamPoly> kept;
  for (auto& c : out.conditions)
    if (!c.is_zero()) kept.push_back(c);
  out.conditions = kept;
  return out;
}

TowerElement integrate_or_throw(const TowerElement& e) {
  auto r = integrate(e);
  if (!r.ok()) throw std::runtime_error("no primitive in the tower: " + r.failure->reason);
  return *r.value;
}

Monodromy monodromy_class(const TowerElement& e) {
  return e.degree(DL) >= 1 ? Monodromy::NonAbelian : Monodromy::Abelian;
}

const char* monodromy_text(Monodromy m) { return m == Monodromy::Abelian ? "Abelian" : "NonAbelian"; }

// ---- arctanh polynomials

void ArctanhPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

ArctanhPoly ArctanhPoly::operator+(const ArctanhPoly& o) const {
  ArctanhPoly r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < c.size()) r.c[i] += c[i];
    if (i < o.c.size()) r.c[i] += o.c[i];
  }
  r.trim();
  return r;
}

ArctanhPoly ArctanhPoly::operator*(const ArctanhPoly& o) const {
  ArctanhPoly r;
  if (c.empty() || o.c.empty()) return r;
  r.c.resize(c.size() + o.c.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

ArctanhPoly ArctanhPoly::operator*(const RatFunc& f) const {
  ArctanhPoly r = *this;
  for (auto& x : r.c) x = x * f;
  r.trim();
  return r;
}

ArctanhPoly ArctanhPoly::pow(unsigned e) const {
  ArctanhPoly r{{RatFunc(1)}}, b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

ArctanhPoly ArctanhPoly::diff() const {
  ArctanhPoly r;
  r.c.resize(c.size());
  RatFunc dA = -RatFunc::inv_t2m1();
  for (std::size_t i = 0; i < c.size(); ++i) {
    r.c[i] += c[i].diff();
    if (i) r.c[i - 1] += c[i] * dA * ParamPoly(static_cast<long>(i));
  }
  r.trim();
  return r;
}

TowerElement ArctanhPoly::to_tower() const {
  TowerElement r, A = TowerElement::arctanh(), Ap(1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) Ap = Ap * A;
    r += Ap * c[i];
  }
  return r;
}

std::optional<ArctanhLogForm> to_arctanh_log(const TowerElement& e) {
  if (e.degree(LT) || e.degree(DL)) return std::nullopt;
  ArctanhLogForm out;
  auto add = [&](unsigned i, unsigned j, const RatFunc& r) {
    if (r.is_zero()) return;
    auto [it, ins] = out.try_emplace({i, j}, r);
    if (!ins) {
      it->second += r;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  // L1 = Lambda/2 - A, L2 = Lambda/2 + A
  for (auto& [g, r] : e.terms()) {
    unsigned a = g[0], b = g[1];
    for (unsigned p = 0; p <= a; ++p)
      for (unsigned q = 0; q <= b; ++q) {
        // from L1^a: C(a,p) (Lambda/2)^(a-p) (-A)^p ; from L2^b: C(b,q) (Lambda/2)^(b-q) A^q
        Rational c = binomial(a, p) * binomial(b, q);
        if (p % 2) c = -c;
        unsigned lp = (a - p) + (b - q);
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, lp);
        c /= Rational(two_pow);
        add(p + q, lp, r * ParamPoly(c));
      }
  }
  return out;
}

std::string arctanh_log_text(const ArctanhLogForm& f) {
  if (f.empty()) return "0";
  std::string s;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    auto [i, j] = it->first;
    std::string g;
    auto put = [&](const std::string& name, unsigned e) {
      if (!e) return;
      if (!g.empty()) g += "*";
      g += name;
      if (e > 1) g += "^" + std::to_string(e);
    };
    put("atanh(1/t)", i);
    put("ln(t^2-1)", j);
    const RatFunc& r = it->second;
    std::string term;
    if (g.empty()) term = r.text();
    else if (r.is_constant() && r.constant().is_constant() && r.constant().as_scalar().is_one()) term = g;
    else term = "(" + r.text() + ")*" + g;
    s += s.empty() ? term : " + " + term;
  }
  return s;
}

std::optional<ArctanhPoly> arctanh_part(const TowerElement& e) {
  auto f = to_arctanh_log(e);
  if (!f) return std::nullopt;
  ArctanhPoly p;
  for (auto& [k, r] : *f) {
    if (k.second) continue;
    if (p.c.size() <= k.first) p.c.resize(k.first + 1);
    p.c[k.first] = r;
  }
  p.trim();
  return p;
}

ParamPoly residue_times_arctanh_power(const RatFunc& r, unsigned p) {
  if (r.is_zero()) return ParamPoly();
  int top = r.degree();
  int emin = static_cast<int>(p) - 1;
  if (top < emin) return ParamPoly();
  // r needed for exponents e in [p-1, top]; A^p for exponents down to -1-top
  LaurentSeries G = laurent_expand_at_infinity(r, p == 0 ? 1 : 0);
  LaurentSeries Ap = arctanh_series(top + 1, p);
  ParamPoly s;
  for (int e = std::max(emin, -1); e <= top; ++e) s.add_mul(G.coeff(e), Ap.coeff(-1 - e));
  return s;
}

ParamPoly residue_shift_poly(const ArctanhPoly& F, SymId alpha) {
  ParamPoly out;
  unsigned D = static_cast<unsigned>(F.c.size());
  for (unsigned i = 0; i < D; ++i) {
    if (F.c[i].is_zero()) continue;
    for (unsigned m = 0; m <= i; ++m) {
      ParamPoly r = residue_times_arctanh_power(F.c[i], i - m);
      if (r.is_zero()) continue;
      out += r * ParamPoly::var(alpha, m) * Scalar(binomial(i, m));
    }
  }
  return out;
}

}  // namespace hve
