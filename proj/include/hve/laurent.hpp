#pragma once
#include <vector>

#include "hve/ratfunc.hpp"

namespace hve {

// Truncated expansion at t = infinity: sum of c_e t^e for low <= e <= top, exact in that range.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int top, int low, std::vector<ParamPoly> c);  // c[i] = coeff of t^(top-i)

  int top() const { return top_; }
  int low() const { return low_; }
  // truncation order N: exact through t^(-N)
  int order() const { return -low_; }
  bool exact_at(int e) const { return e >= low_; }
  ParamPoly coeff(int e) const;  // throws if e < low

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(const ParamPoly& s) const;
  LaurentSeries truncate(int low) const;
  LaurentSeries diff() const;  // d/dt
  bool operator==(const LaurentSeries& o) const;

 private:
  int top_ = 0, low_ = 0;
  std::vector<ParamPoly> c_;
};

// expansion of f through t^(-N)
LaurentSeries laurent_expand_at_infinity(const RatFunc& f, int N);
// arctanh(1/t)^p through t^(-N)
LaurentSeries arctanh_series(int N, unsigned p = 1);

}  // namespace hve
