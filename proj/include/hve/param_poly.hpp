#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hve/scalar.hpp"

namespace hve {

// Process-wide parameter name table. Ids are stable for the process lifetime.
using SymId = std::uint32_t;
SymId intern(const std::string& name);
const std::string& sym_name(SymId id);

// sorted by id, exponents > 0
using Mono = std::vector<std::pair<SymId, unsigned>>;

class ParamPoly {
 public:
  ParamPoly() = default;
  ParamPoly(long c) { if (c) terms_.emplace(Mono{}, Scalar(c)); }
  ParamPoly(const Rational& c) { if (sgn(c)) terms_.emplace(Mono{}, Scalar(c)); }
  ParamPoly(const Scalar& c) { if (!c.is_zero()) terms_.emplace(Mono{}, c); }
  static ParamPoly var(const std::string& name, unsigned e = 1);
  static ParamPoly var(SymId id, unsigned e = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Scalar constant_term() const;
  // requires is_constant()
  Scalar as_scalar() const;
  const std::map<Mono, Scalar>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const ParamPoly& o);
  ParamPoly& operator*=(const Scalar& s);
  ParamPoly& add_scaled(const ParamPoly& o, const Scalar& s);
  ParamPoly& add_mul(const ParamPoly& a, const ParamPoly& b);  // += a*b
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator*(ParamPoly a, const Scalar& s) { return a *= s; }
  friend ParamPoly operator*(const Scalar& s, ParamPoly a) { return a *= s; }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
  ParamPoly pow(unsigned e) const;

  unsigned degree(SymId s) const;
  unsigned total_degree() const;
  ParamPoly coeff(SymId s, unsigned e) const;  // coefficient of s^e
  ParamPoly subs(SymId s, const ParamPoly& v) const;
  ParamPoly diff(SymId s) const;
  bool depends_on(SymId s) const { return degree(s) > 0; }
  std::vector<SymId> symbols() const;  // sorted by name
  // leading coefficient for normalization (first term in canonical order)
  Scalar leading_coeff() const;

  std::string text() const;
  bool needs_parens() const;
  // sorted canonical terms: graded lex on names
  std::vector<std::pair<Mono, Scalar>> canonical_terms() const;

 private:
  std::map<Mono, Scalar> terms_;
  void add_term(const Mono& m, const Scalar& c);
};

std::string mono_text(const Mono& m);
// canonical comparison of monomials: higher total degree first, then lex by name
bool mono_canon_less(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);

}  // namespace hve
