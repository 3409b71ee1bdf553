#include "hve/nondeg.hpp"

#include <omp.h>

#include <exception>

namespace hve {

const char* convention_text(Convention c) { return c == Convention::Base ? "base" : "raised"; }
const char* verdict_text(DegVerdict v) { return v == DegVerdict::Degenerate ? "Degenerate" : "NonDegenerate"; }

SymId alpha_symbol() {
  static const SymId id = intern("alpha");
  return id;
}

static RatFunc t2m1_pow(unsigned e) { return RatFunc(UPoly(QPoly::t2m1().pow(e))); }
static RatFunc t_pow(unsigned e) { return RatFunc(UPoly::t_pow(e)); }

NonDegReport nondegeneracy_test(unsigned n, unsigned k, Convention c) {
  const BasisPair& b = basis_pair(n);
  NonDegReport r;
  r.n = n;
  r.k = k;
  r.convention = c;
  r.base = c == Convention::Base ? k : k + 1;
  r.power = c == Convention::Base ? k + 1 : k + 2;
  ArctanhPoly F = b.Qa.pow(r.power) * t2m1_pow(r.base);
  r.witness = residue_shift_poly(F, alpha_symbol());
  r.verdict = r.witness.degree(alpha_symbol()) >= 1 ? DegVerdict::NonDegenerate : DegVerdict::Degenerate;
  return r;
}

Rational s_sequence_lambda0(unsigned k) {
  RatFunc f = t2m1_pow(k + 1) * ParamPoly(static_cast<long>(k + 2));
  return residue_times_arctanh_power(f, 1).as_scalar().re();
}

Rational s_sequence_lambda0_integral(unsigned k) {
  return Rational(static_cast<long>(k + 2), 2) * QPoly::t2m1().pow(k + 1).integrate(-1, 1);
}

// -(6t^2-4)/(t^2-1) + 6 t A
static ArctanhPoly s_bracket() {
  ArctanhPoly B;
  B.c = {RatFunc(UPoly(QPoly({Rational(4), Rational(0), Rational(-6)})), 1, 1, 0), RatFunc(UPoly(QPoly({Rational(0), Rational(6)})))};
  return B;
}

static Rational residue_at_zero_shift(const ArctanhPoly& F) {
  ParamPoly s;
  for (unsigned i = 0; i < F.c.size(); ++i) s += residue_times_arctanh_power(F.c[i], i);
  return s.as_scalar().re();
}

Rational s1_sequence(unsigned m) {
  ArctanhPoly F = s_bracket() * (t2m1_pow(m + 1) * t_pow(m + 1));
  return residue_at_zero_shift(F);
}

Rational s2_sequence(unsigned m) {
  ArctanhPoly B = s_bracket();
  ArctanhPoly F = (B * B) * (t2m1_pow(m + 1) * t_pow(m));
  return residue_at_zero_shift(F);
}

bool recurrence_check(const std::vector<Rational>& seq, unsigned n0, const std::vector<QPoly>& rec) {
  if (rec.empty() || seq.size() < rec.size()) return false;
  for (std::size_t w = 0; w + rec.size() <= seq.size(); ++w) {
    Rational n = static_cast<long>(n0 + w);
    Rational s = 0;
    for (std::size_t j = 0; j < rec.size(); ++j) s += rec[j].eval(n) * seq[w + j];
    if (sgn(s) != 0) return false;
  }
  return true;
}

static QPoly lin(long a, long b) { return QPoly({Rational(b), Rational(a)}); }  // a n + b

static std::vector<QPoly> s1_rec(long s) {
  QPoly c0 = lin(2, 3) * lin(2, 1) * lin(6, 11) * lin(1, 1).pow(2) * Rational(64);
  QPoly mid({Rational(s * 116328), Rational(s * 431784), Rational(622752), Rational(439200), Rational(152064), Rational(20736)});
  QPoly c2 = lin(6, 5) * lin(3, 5) * lin(3, 4) * lin(6, 13) * lin(6, 17) * Rational(36);
  return {c0, -mid, c2};
}

std::vector<QPoly> s1_recurrence_reference() { return s1_rec(-1); }
std::vector<QPoly> s1_recurrence_corrected() { return s1_rec(1); }

Rational axisym_coefficient(unsigned n, unsigned k) {
  NonDegReport r = nondegeneracy_test(n, k, Convention::Base);
  return r.witness.coeff(alpha_symbol(), k).as_scalar().re();
}

Rational axisym_integral(unsigned n, unsigned k) {
  const BasisPair& b = basis_pair(n);
  Rational e = 1;
  for (unsigned i = 0; i <= k; ++i) e *= b.eps;
  return e * Rational(static_cast<long>(k + 1), 2) * (QPoly::t2m1().pow(k) * b.P.num().to_qpoly().pow(k + 1)).integrate(-1, 1);
}

namespace {
template <class F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  std::exception_ptr err;
  int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long i = 0; i < static_cast<long>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}
}  // namespace

std::vector<NonDegReport> nondeg_grid(const std::vector<GridCell>& cells, Convention c, int jobs) {
  for (auto& cell : cells) basis_pair(cell.n);
  std::vector<NonDegReport> out(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) { out[i] = nondegeneracy_test(cells[i].n, cells[i].k, c); });
  return out;
}

std::vector<NonDegReport> nondeg_grid_serial(const std::vector<GridCell>& cells, Convention c) {
  std::vector<NonDegReport> out;
  for (auto& cell : cells) out.push_back(nondegeneracy_test(cell.n, cell.k, c));
  return out;
}

std::vector<Rational> s1_table(unsigned count, int jobs) {
  std::vector<Rational> out(count);
  parallel_for(count, jobs, [&](std::size_t i) { out[i] = s1_sequence(2 * static_cast<unsigned>(i + 1)); });
  return out;
}

std::vector<Rational> s1_table_serial(unsigned count) {
  std::vector<Rational> out;
  for (unsigned i = 1; i <= count; ++i) out.push_back(s1_sequence(2 * i));
  return out;
}

std::vector<Rational> s2_table(unsigned count, int jobs) {
  std::vector<Rational> out(count);
  parallel_for(count, jobs, [&](std::size_t i) { out[i] = s2_sequence(2 * static_cast<unsigned>(i + 1) + 1); });
  return out;
}

std::vector<Rational> s2_table_serial(unsigned count) {
  std::vector<Rational> out;
  for (unsigned i = 1; i <= count; ++i) out.push_back(s2_sequence(2 * i + 1));
  return out;
}

}  // namespace hve
