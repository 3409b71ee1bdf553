#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hve/laurent.hpp"

namespace hve {

// exponents of (L1, L2, LT, DL)
// L1 = log(t-1), L2 = log(t+1), LT = log(t), DL = dilog((t+1)/2) with DL' = (L2 - ln2)/(1-t)
using GenExp = std::array<unsigned, 4>;
enum Gen { L1 = 0, L2 = 1, LT = 2, DL = 3 };

SymId ln2_symbol();

class TowerElement {
 public:
  TowerElement() = default;
  TowerElement(const RatFunc& r) { add(GenExp{0, 0, 0, 0}, r); }
  TowerElement(long c) : TowerElement(RatFunc(c)) {}
  static TowerElement gen(Gen g, unsigned e = 1);
  static TowerElement arctanh();  // (L2 - L1)/2
  static TowerElement ln_t2m1();  // L1 + L2

  const std::map<GenExp, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  RatFunc rational_part() const;  // coefficient of the empty monomial
  RatFunc coeff(const GenExp& g) const;
  unsigned degree(Gen g) const;

  void add(const GenExp& g, const RatFunc& r);
  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o);
  TowerElement& operator-=(const TowerElement& o);
  friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
  friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const RatFunc& r);
  friend TowerElement operator*(const RatFunc& r, const TowerElement& a) { return a * r; }
  friend bool operator==(const TowerElement& a, const TowerElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const TowerElement& a, const TowerElement& b) { return !(a == b); }
  TowerElement pow(unsigned e) const;
  TowerElement subs_param(SymId s, const ParamPoly& v) const;
  unsigned param_degree(SymId s) const;
  TowerElement param_coeff(SymId s, unsigned e) const;

  std::string text() const;

 private:
  std::map<GenExp, RatFunc> terms_;
};

TowerElement differentiate(const TowerElement& e);

struct NewTranscendentalNeeded {
  TowerElement integrand;  // reduced integrand that has no primitive in the tower
  std::string reason;
};

struct IntegrateResult {
  std::optional<TowerElement> value;
  std::optional<NewTranscendentalNeeded> failure;
  bool ok() const { return value.has_value(); }
};

IntegrateResult integrate(const TowerElement& e);
// throws std::runtime_error on failure
TowerElement integrate_or_throw(const TowerElement& e);

// primitive in C(t)[L1, L2] (with LT when e needs it); exact iff every condition vanishes
struct ClosedIntegral {
  TowerElement value;
  std::vector<ParamPoly> conditions;
  bool exact() const { return conditions.empty(); }
};
// e must not contain DL; conditions are linear in the coefficients of e
ClosedIntegral integrate_closed(const TowerElement& e);

enum class Monodromy { Abelian, NonAbelian };
Monodromy monodromy_class(const TowerElement& e);
const char* monodromy_text(Monodromy m);

// polynomial in A = arctanh(1/t) with rational coefficients: sum c[i] A^i
struct ArctanhPoly {
  std::vector<RatFunc> c;
  unsigned degree() const { return c.empty() ? 0 : static_cast<unsigned>(c.size() - 1); }
  void trim();
  ArctanhPoly operator+(const ArctanhPoly& o) const;
  ArctanhPoly operator*(const ArctanhPoly& o) const;
  ArctanhPoly operator*(const RatFunc& r) const;
  ArctanhPoly pow(unsigned e) const;
  ArctanhPoly diff() const;  // A' = -1/(t^2-1)
  TowerElement to_tower() const;
};

// element of C(t)[A, Lambda] with Lambda = ln(t^2-1); keys (i, j) for A^i Lambda^j
using ArctanhLogForm = std::map<std::pair<unsigned, unsigned>, RatFunc>;
// nullopt if LT or DL occurs
std::optional<ArctanhLogForm> to_arctanh_log(const TowerElement& e);
std::string arctanh_log_text(const ArctanhLogForm& f);
// arctanh-polynomial part: the Lambda^0 component
std::optional<ArctanhPoly> arctanh_part(const TowerElement& e);

// coefficient of t^-1 at infinity of F(t, A_series + alpha), as a polynomial in alpha
ParamPoly residue_shift_poly(const ArctanhPoly& F, SymId alpha);
// residue at infinity of r(t) * A^p (coefficient of 1/t)
ParamPoly residue_times_arctanh_power(const RatFunc& r, unsigned p);

}  // namespace hve
