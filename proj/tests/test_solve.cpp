#include <random>

#include "doctest.h"
#include "hve/solve.hpp"

using namespace hve;

namespace {

RatFunc tpoly(std::vector<long> c) {
  std::vector<Rational> q;
  for (long x : c) q.emplace_back(x);
  return RatFunc(UPoly(QPoly(q)));
}

ParamPoly sym(const char* s) { return ParamPoly::var(s); }

// all first-order solutions with rational weights
std::array<TowerElement, 2> generic_first(unsigned n, const std::array<long, 4>& w) {
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& bn = basis_pair(n);
  return {TowerElement(b2.P) * RatFunc(w[0]) + b2.Q * RatFunc(w[1]), TowerElement(bn.P) * RatFunc(w[2]) + bn.Q * RatFunc(w[3])};
}

DarbouxData from_table(unsigned n, const std::map<std::pair<unsigned, unsigned>, Scalar>& D) {
  DarbouxData d = cartesian_data(n);
  for (auto& [ab, v] : D) d.D[ab] = ParamPoly(v);
  return d;
}

// closed-mode jets of an integrable potential never leave conditions
void check_integrable(const DarbouxData& d, unsigned K) {
  JetSystem sys = cartesian_jet_system(d, K);
  std::array<TowerElement, 2> first = generic_first(d.n, {1, 2, -3, 1});
  Jets j = solve_jets(sys, first, K);
  CHECK(j.reached() == K);
  CHECK(certify_jets(sys, j));
}

}  // namespace

TEST_CASE("integration mode on the order-1 polar theta block") {
  VariationalSystem s = build_polar_ve(polar_data(0), 1);
  VariationalSystem th;
  th.k = 1;
  th.chart = Chart::Polar;
  th.vars = {{0, 1, 0, 0}, {0, 0, 0, 1}};
  th.index = {{th.vars[0], 0}, {th.vars[1], 1}};
  th.rhs.resize(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (auto& [j, c] : s.rhs[s.find(th.vars[i])]) th.rhs[i].emplace(th.index.at(s.vars[j]), c);
  SolutionSet sol = solve_triangular(th, {{{0, 1, 0, 0}, TowerElement(RatFunc(sym("C3")))}, {{0, 0, 0, 1}, TowerElement(RatFunc(sym("C4")))}});
  CHECK(residual_zero(th, sol));
  CHECK(sol.value.at({0, 0, 0, 1}) == TowerElement(RatFunc(UPoly(std::vector<ParamPoly>{sym("C4"), sym("C3")}))));
  CHECK_THROWS_AS(solve_triangular(s), ValidationError);
}

TEST_CASE("integrable potentials leave no conditions") {
  // Kepler through the polar chart, 1/q1, and a rotated two-center potential
  DarbouxData kepler = cartesian_from_polar(polar_data(0, {{3, 0}, {4, 0}, {5, 0}}), 5);
  check_integrable(kepler, 4);
  std::map<std::pair<unsigned, unsigned>, Scalar> inv;
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned a = 0; a <= m; ++a) inv[{a, m - a}] = m - a ? Scalar(0) : Scalar(a % 2 ? -factorial(a) : factorial(a));
  check_integrable(from_table(1, inv), 4);
  check_integrable(from_table(2, two_center_jet(Rational(3, 5), Rational(4, 5), 5)), 4);
}

TEST_CASE("jets give exact variational solutions") {
  DarbouxData d = euler_reduce(cartesian_data(3), 2);
  d.D[{0, 3}] = 0;
  JetSystem sys = cartesian_jet_system(d, 2);
  Jets j = solve_jets(sys, generic_first(3, {2, -1, 1, 3}), 2);
  REQUIRE(j.reached() == 2);
  VariationalSystem ve = build_cartesian_ve(d, 2);
  SolutionSet s = solution_from_jets(ve, j);
  CHECK(s.complete(ve));
  CHECK(residual_zero(ve, s));
}

TEST_CASE("resolve") {
  SymId x = intern("x_free");
  ParamPoly b = sym("b");
  ObstructionReport f = resolve(3, x, {{ParamPoly(2), ParamPoly(-6), "closure"}, {ParamPoly(1), ParamPoly(-3), "residue"}});
  CHECK(f.verdict == Verdict::ForcedValue);
  CHECK(f.forced_values.at("x_free") == ParamPoly(3));
  CHECK(resolve(3, x, {{ParamPoly(1), ParamPoly(0), ""}, {ParamPoly(1), ParamPoly(1), ""}}).verdict == Verdict::Inconsistent);
  CHECK(resolve(3, x, {}).verdict == Verdict::Unconstrained);
  ObstructionReport c = resolve(5, x, {{ParamPoly(1), b * b, ""}, {ParamPoly(1), ParamPoly(-1), ""}});
  CHECK(c.verdict == Verdict::FreeParameterConstraint);
  CHECK(*c.constraint == b * b + ParamPoly(1));
  CHECK(resolve(4, x, {{ParamPoly(), b * Scalar(3) - ParamPoly(6), ""}}).constraint == b - ParamPoly(2));
  CHECK_THROWS_AS(resolve(4, x, {{b, ParamPoly(1), ""}}), Unsupported);
  ObstructionReport dl = resolve_dilog(3, x, ParamPoly::var(x, 2) * Scalar(Rational(1, 3)));
  CHECK(dl.verdict == Verdict::ForcedValue);
  CHECK(dl.forced_values.at("x_free").is_zero());
  CHECK(univariate_gcd({b * b - ParamPoly(1), b * Scalar(2) - ParamPoly(2)}, intern("b")) == b - ParamPoly(1));
  CHECK(univariate_gcd({b * b + ParamPoly(4), b - ParamPoly(Scalar(0, 2))}, intern("b")) == b - ParamPoly(Scalar(0, 2)));
}

TEST_CASE("eigenvalue 5 through order 3") {
  AnalysisResult r = analyze_eigenvalue(3, 3);
  REQUIRE(r.reports.size() == 2);
  CHECK(r.reports[0].verdict == Verdict::ForcedValue);
  CHECK(r.reports[0].forced_values.at("d_2_3").is_zero());
  CHECK(r.reports[1].verdict == Verdict::ForcedValue);
  CHECK(r.theta_series.at(2) == ParamPoly(3));
  CHECK(r.theta_series.at(4) == ParamPoly(Rational(125, 12)));
  // both functionals apply at order 2
  bool closure = false, residue = false;
  for (auto& c : r.reports[0].conditions) (c.route == "closure" ? closure : residue) = true;
  CHECK(closure);
  CHECK(residue);
}

TEST_CASE("eigenvalue 9 leaves b free") {
  AnalysisResult r = analyze_eigenvalue(4, 2);
  REQUIRE(r.reports.size() == 1);
  CHECK(r.reports[0].verdict == Verdict::Unconstrained);
  CHECK(r.theta_series.at(2) == ParamPoly(5));
  CHECK(r.theta_series.at(3) == sym("b"));
}

TEST_CASE("eigenvalue 2 follows the two-center family") {
  AnalysisResult r = analyze_eigenvalue(2, 4);
  REQUIRE(r.reports.size() == 3);
  CHECK(r.reports[0].verdict == Verdict::Unconstrained);
  Rational c(3, 5), s(4, 5), d = (s * s - c * c) / (c * s);
  auto fam = two_center_jet(c, s, 5);
  for (auto& [ab, v] : fam) CHECK(r.data.d(ab.first, ab.second).subs(intern("b"), ParamPoly(d)) == ParamPoly(v));
}

TEST_CASE("lambda 0 forces the jet of 1/q1") { CHECK(lambda0_matches_inverse(7)); }

TEST_CASE("homogeneous offsets do not move the verdict") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-5, 5);
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& b3 = basis_pair(3);
  for (int trial = 0; trial < 2; ++trial) {
    DarbouxData d = euler_reduce(cartesian_data(3), 2);
    SymId x2 = intern("d_2_3");
    JetOptions opt;
    opt.offsets[2] = {TowerElement(b2.P) * RatFunc(dist(rng)) + b2.Q * RatFunc(dist(rng)),
                      TowerElement(b3.P) * RatFunc(dist(rng)) + b3.Q * RatFunc(dist(rng))};
    SymId c1 = intern("c1"), c2 = intern("c2"), c3 = intern("c3");
    std::array<TowerElement, 2> first{TowerElement(b2.P) * RatFunc(ParamPoly::var(c1)) + b2.Q * RatFunc(ParamPoly::var(c2)),
                                      TowerElement(b3.P) * RatFunc(ParamPoly::var(c3)) + b3.Q};
    Jets j = solve_jets(cartesian_jet_system(d, 2), first, 2, opt);
    ObstructionReport r2 = resolve(2, x2, affine_conditions(j.orders[1].conditions, x2, {c1, c2, c3}, "closure"));
    REQUIRE(r2.verdict == Verdict::ForcedValue);
    CHECK(r2.forced_values.at("d_2_3").is_zero());
    j = substitute(j, x2, ParamPoly(0));
    d.D[{0, 3}] = 0;
    d = euler_reduce(d, 3);
    SymId x3 = intern("d_3_4");
    extend_jets(cartesian_jet_system(d, 3), j, 3, opt);
    ObstructionReport r3 = resolve(3, x3, affine_conditions(j.orders[2].conditions, x3, {c1, c2, c3}, "closure"));
    CHECK(r3.verdict == Verdict::ForcedValue);
    CHECK(r3.forced_values.at("d_3_4") == ParamPoly(175));
  }
}

TEST_CASE("cross-chart agreement at order 2") {
  for (unsigned n : {0u, 2u, 3u}) {
    ObstructionReport p = polar_order2(n);
    AnalysisResult c = analyze_cartesian(n, 2);
    CHECK(p.verdict == c.reports[0].verdict);
    if (p.verdict == Verdict::ForcedValue) {
      // D03 = u3 when u1 = 0
      CHECK(p.forced_values.at("u3") == c.reports[0].forced_values.at("d_2_3"));
    }
  }
}

TEST_CASE("prop1 pipeline") {
  for (unsigned k = 2; k <= 5; ++k) {
    DilogObstruction p = prop1_pipeline(k);
    CHECK(p.residual_ok);
    CHECK(p.y_k_matches);
    CHECK(p.y_1_matches);
    CHECK(p.e_certified);
    CHECK(p.top_abelian);
    ParamPoly u = u_symbol(k + 1);
    CHECK(p.dilog_coefficient == tpoly({0, 1}) * RatFunc(u * u * Scalar(Rational(4) / (factorial(k) * factorial(k - 1)))));
    CHECK(p.report.verdict == Verdict::ForcedValue);
    CHECK(p.report.forced_values.at("u" + std::to_string(k + 1)).is_zero());
    CHECK(p.report.order == 2 * k - 1);
  }
}

TEST_CASE("order 2 polar group") {
  // oracle: the term differentiates to (t^2-1) Q2 up to a constant
  TowerElement d = differentiate(q2_weight_primitive()) - basis_pair(2).Q * RatFunc(UPoly(QPoly::t2m1()));
  CHECK(d.is_rational());
  CHECK(d.rational_part().is_constant());
  PolarVe2 a = polar_ve2_galois(ParamPoly(1));
  CHECK(a.c2c3_matches);
  CHECK(a.r2_residue_ok);
  CHECK(a.group_dim == 2);
  CHECK(a.theta2.degree(L1) + a.theta2.degree(L2) >= 1);
  PolarVe2 b = polar_ve2_galois(ParamPoly(0));
  CHECK(b.group_dim == 1);
  CHECK(b.c2c3_matches);
}

TEST_CASE("single sources stay in the log algebra") {
  for (unsigned k = 2; k <= 6; ++k) {
    SingleSource s = single_source_check(k);
    CHECK(s.abelian);
    CHECK(s.theta_k.degree(DL) == 0);
    SymId u = intern("u" + std::to_string(k + 1));
    // toggling u_{k+1}
    CHECK(to_arctanh_log(s.theta_k.subs_param(u, ParamPoly(1))).has_value());
    CHECK(s.theta_k.subs_param(u, ParamPoly(0)).is_zero());
  }
}

TEST_CASE("degenerate point") {
  DegenerateReport c = degenerate_point_analysis(ParamPoly(1), 4);
  CHECK(c.known_obstruction);
  CHECK(c.verdict == "NonAbelian");
  DegenerateReport z = degenerate_point_analysis(ParamPoly(0), 4);
  CHECK(z.verdict == "Abelian");
  REQUIRE(z.in_laurent_log.size() == 4);
  for (bool b : z.in_laurent_log) CHECK(b);
}

TEST_CASE("family match") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (int i = 0; i < 20; ++i) {
    Scalar d(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    if (d == Scalar(0, 2) || d == Scalar(0, -2)) continue;
    FamilyMatch m = family_match_order3(d);
    CHECK(m.branch == "two-center");
    CHECK(m.certified);
    CHECK(m.numeric_residual < 1e-12);
    CHECK(m.discriminant == (Scalar(4) + d * d) * d * d);
  }
  for (Scalar d : {Scalar(0, 2), Scalar(0, -2)}) {
    FamilyMatch m = family_match_order3(d);
    CHECK(m.branch == "hietarinta");
    CHECK(m.certified);
  }
  // d = 0 is the symmetric case cos^2 = 1/2
  CHECK(two_center_quadratic(Scalar(0)).subs(intern("x"), ParamPoly(Rational(1, 2))).is_zero());
}
