#pragma once
#include <vector>

#include "hve/basis.hpp"

namespace hve {

enum class Convention { Base, Raised };
enum class DegVerdict { Degenerate, NonDegenerate };
const char* convention_text(Convention c);
const char* verdict_text(DegVerdict v);

SymId alpha_symbol();

struct NonDegReport {
  unsigned n = 0, k = 0;
  Convention convention = Convention::Base;
  unsigned base = 0, power = 0;  // (t^2-1)^base Q^power
  ParamPoly witness;             // residue as a polynomial in alpha
  DegVerdict verdict = DegVerdict::Degenerate;
};

NonDegReport nondegeneracy_test(unsigned n, unsigned k, Convention c);

// residue route and integral route for (k+2)(t^2-1)^(k+1) atanh(1/t)
Rational s_sequence_lambda0(unsigned k);
Rational s_sequence_lambda0_integral(unsigned k);

Rational s1_sequence(unsigned m);  // m even >= 2
Rational s2_sequence(unsigned m);  // m odd >= 3

// sum_j rec[j](n) f(n+j) == 0 for every window; seq[i] = f(n0 + i)
bool recurrence_check(const std::vector<Rational>& seq, unsigned n0, const std::vector<QPoly>& rec);
// reference recurrence, and with the sign of the last two terms of the middle coefficient flipped
std::vector<QPoly> s1_recurrence_reference();
std::vector<QPoly> s1_recurrence_corrected();

// alpha^k coefficient of the base residue, k odd
Rational axisym_coefficient(unsigned n, unsigned k);
Rational axisym_integral(unsigned n, unsigned k);  // 1/2 eps^(k+1) (k+1) int (t^2-1)^k P^(k+1)

struct GridCell {
  unsigned n, k;
};
// OpenMP sweep; jobs <= 0 uses the runtime default. Output order follows cells.
std::vector<NonDegReport> nondeg_grid(const std::vector<GridCell>& cells, Convention c, int jobs = 0);
std::vector<NonDegReport> nondeg_grid_serial(const std::vector<GridCell>& cells, Convention c);
// S1_{2n} and S2_{2n+1} for n = 1..count
std::vector<Rational> s1_table(unsigned count, int jobs = 0);
std::vector<Rational> s1_table_serial(unsigned count);
std::vector<Rational> s2_table(unsigned count, int jobs = 0);
std::vector<Rational> s2_table_serial(unsigned count);

}  // namespace hve
