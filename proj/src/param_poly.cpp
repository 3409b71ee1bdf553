#include "hve/param_poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace hve {

namespace {
std::shared_mutex sym_mu;
std::deque<std::string> sym_names;
std::unordered_map<std::string, SymId> sym_ids;
}  // namespace

SymId intern(const std::string& name) {
  {
    std::shared_lock lk(sym_mu);
    auto it = sym_ids.find(name);
    if (it != sym_ids.end()) return it->second;
  }
  std::unique_lock lk(sym_mu);
  auto it = sym_ids.find(name);
  if (it != sym_ids.end()) return it->second;
  SymId id = static_cast<SymId>(sym_names.size());
  sym_names.push_back(name);
  sym_ids.emplace(name, id);
  return id;
}

const std::string& sym_name(SymId id) {
  std::shared_lock lk(sym_mu);
  if (id >= sym_names.size()) throw std::out_of_range("unknown symbol id");
  return sym_names[id];
}

Mono mono_mul(const Mono& a, const Mono& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Mono r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

static unsigned mono_deg(const Mono& m) {
  unsigned d = 0;
  for (auto& [s, e] : m) d += e;
  return d;
}

static std::vector<std::pair<std::string, unsigned>> named(const Mono& m) {
  std::vector<std::pair<std::string, unsigned>> v;
  for (auto& [s, e] : m) v.emplace_back(sym_name(s), e);
  std::sort(v.begin(), v.end());
  return v;
}

bool mono_canon_less(const Mono& a, const Mono& b) {
  unsigned da = mono_deg(a), db = mono_deg(b);
  if (da != db) return da > db;
  auto na = named(a), nb = named(b);
  // lex: compare exponent of smallest name first, larger exponent comes first
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i].first != nb[j].first) return na[i].first < nb[j].first;
    if (na[i].second != nb[j].second) return na[i].second > nb[j].second;
    ++i, ++j;
  }
  return i < na.size() && j == nb.size();
}

std::string mono_text(const Mono& m) {
  std::string s;
  for (auto& [n, e] : named(m)) {
    if (!s.empty()) s += "*";
    s += n;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

ParamPoly ParamPoly::var(const std::string& name, unsigned e) { return var(intern(name), e); }

ParamPoly ParamPoly::var(SymId id, unsigned e) {
  ParamPoly p;
  if (e == 0) p.terms_.emplace(Mono{}, Scalar(1));
  else p.terms_.emplace(Mono{{id, e}}, Scalar(1));
  return p;
}

Scalar ParamPoly::constant_term() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar ParamPoly::as_scalar() const {
  if (!is_constant()) throw std::logic_error("ParamPoly is not constant: " + text());
  return constant_term();
}

void ParamPoly::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = terms_.try_emplace(m, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly& ParamPoly::add_scaled(const ParamPoly& o, const Scalar& s) {
  if (s.is_zero()) return *this;
  for (auto& [m, c] : o.terms_) add_term(m, c * s);
  return *this;
}

ParamPoly& ParamPoly::add_mul(const ParamPoly& a, const ParamPoly& b) {
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) add_term(mono_mul(ma, mb), ca * cb);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 && a.terms_.begin()->first.empty()) return b * a.terms_.begin()->second;
  if (b.terms_.size() == 1 && b.terms_.begin()->first.empty()) return a * b.terms_.begin()->second;
  r.add_mul(a, b);
  return r;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) {
  *this = *this * o;
  return *this;
}

ParamPoly& ParamPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

ParamPoly ParamPoly::pow(unsigned e) const {
  ParamPoly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

unsigned ParamPoly::degree(SymId s) const {
  unsigned d = 0;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m)
      if (v == s) d = std::max(d, e);
  return d;
}

unsigned ParamPoly::total_degree() const {
  unsigned d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, mono_deg(m));
  return d;
}

ParamPoly ParamPoly::coeff(SymId s, unsigned e) const {
  ParamPoly r;
  for (auto& [m, c] : terms_) {
    unsigned have = 0;
    Mono rest;
    for (auto& ve : m) {
      if (ve.first == s) have = ve.second;
      else rest.push_back(ve);
    }
    if (have == e) r.add_term(rest, c);
  }
  return r;
}

ParamPoly ParamPoly::subs(SymId s, const ParamPoly& v) const {
  unsigned d = degree(s);
  if (d == 0) return *this;
  ParamPoly r, vp(1);
  for (unsigned e = 0; e <= d; ++e) {
    if (e) vp *= v;
    r += coeff(s, e) * vp;
  }
  return r;
}

ParamPoly ParamPoly::diff(SymId s) const {
  ParamPoly r;
  for (auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].first != s) continue;
      Mono nm = m;
      unsigned e = nm[i].second;
      if (e == 1) nm.erase(nm.begin() + static_cast<long>(i));
      else nm[i].second = e - 1;
      r.add_term(nm, c * Scalar(static_cast<long>(e)));
    }
  }
  return r;
}

std::vector<SymId> ParamPoly::symbols() const {
  std::vector<SymId> v;
  for (auto& [m, c] : terms_)
    for (auto& [s, e] : m)
      if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  std::sort(v.begin(), v.end(), [](SymId a, SymId b) { return sym_name(a) < sym_name(b); });
  return v;
}

std::vector<std::pair<Mono, Scalar>> ParamPoly::canonical_terms() const {
  std::vector<std::pair<Mono, Scalar>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return mono_canon_less(a.first, b.first); });
  return v;
}

Scalar ParamPoly::leading_coeff() const {
  if (terms_.empty()) return Scalar(0);
  return canonical_terms().front().second;
}

bool ParamPoly::needs_parens() const {
  if (terms_.size() > 1) return true;
  if (terms_.empty()) return false;
  return terms_.begin()->second.needs_parens();
}

std::string ParamPoly::text() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : canonical_terms()) {
    std::string ms = mono_text(m);
    std::string cs;
    bool neg = c.is_real() && sgn(c.re()) < 0;
    Scalar a = neg ? -c : c;
    if (ms.empty()) cs = a.text();
    else if (a.is_one()) cs = ms;
    else cs = a.text() + "*" + ms;
    if (first) s += neg ? "-" + cs : cs;
    else s += neg ? " - " + cs : " + " + cs;
    first = false;
  }
  return s;
}

}  // namespace hve
