#include "hve/solve.hpp"

#include "hve/nondeg.hpp"

#include <algorithm>
#include <set>

namespace hve {

namespace {

RatFunc inv_t(unsigned e) { return RatFunc(UPoly(1), 0, 0, e); }
RatFunc t_rf(const Rational& c = 1) { return RatFunc(UPoly(QPoly({Rational(0), c}))); }

// 1/W for W = c t^m / ((t-1)^a (t+1)^b t^z)
RatFunc invert_unit(const RatFunc& w) {
  const UPoly& num = w.num();
  int m = num.degree();
  if (m < 0) throw CertificationError("zero Wronskian");
  for (int i = 0; i < m; ++i)
    if (!num[static_cast<std::size_t>(i)].is_zero()) throw CertificationError("Wronskian is not a unit");
  if (!num[static_cast<std::size_t>(m)].is_constant()) throw CertificationError("Wronskian depends on parameters");
  Scalar c = num[static_cast<std::size_t>(m)].as_scalar();
  RatFunc den(w.den());
  return (den * inv_t(static_cast<unsigned>(m))).div_scalar(c);
}

}  // namespace

// ---- triangular solving

SolutionSet solve_triangular(const VariationalSystem& sys, const std::map<MonomialIndex, TowerElement>& seeds) {
  SolutionSet s;
  std::size_t N = sys.size();
  std::vector<int> state(N, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> order;
  // iterative DFS for a topological order of the dependency graph
  for (std::size_t root = 0; root < N; ++root) {
    if (state[root]) continue;
    std::vector<std::pair<std::size_t, std::map<std::size_t, RatFunc>::const_iterator>> st;
    st.push_back({root, sys.rhs[root].begin()});
    state[root] = 1;
    while (!st.empty()) {
      auto& [v, it] = st.back();
      if (it == sys.rhs[v].end()) {
        state[v] = 2;
        order.push_back(v);
        st.pop_back();
        continue;
      }
      std::size_t w = it->first;
      ++it;
      if (state[w] == 1) throw ValidationError("solve_triangular: system has a cycle through " + monomial_name(sys.vars[w]));
      if (state[w] == 0) {
        state[w] = 1;
        st.push_back({w, sys.rhs[w].begin()});
      }
    }
  }
  for (std::size_t v : order) {
    TowerElement integrand;
    bool ok = true;
    for (auto& [j, c] : sys.rhs[v]) {
      auto it = s.value.find(sys.vars[j]);
      if (it == s.value.end()) {
        ok = false;
        break;
      }
      integrand += it->second * c;
    }
    if (!ok) continue;
    IntegrateResult r = integrate(integrand);
    if (!r.ok()) {
      s.failures.emplace(sys.vars[v], *r.failure);
      continue;
    }
    TowerElement y = *r.value;
    auto sd = seeds.find(sys.vars[v]);
    if (sd != seeds.end()) y += sd->second;
    s.value.emplace(sys.vars[v], y);
  }
  return s;
}

bool residual_zero(const VariationalSystem& sys, const SolutionSet& s) {
  for (std::size_t i = 0; i < sys.size(); ++i) {
    auto it = s.value.find(sys.vars[i]);
    if (it == s.value.end()) continue;
    TowerElement r = differentiate(it->second);
    bool known = true;
    for (auto& [j, c] : sys.rhs[i]) {
      auto jt = s.value.find(sys.vars[j]);
      if (jt == s.value.end()) {
        known = false;
        break;
      }
      r -= jt->second * c;
    }
    if (known && !r.is_zero()) return false;
  }
  return true;
}

// ---- jet systems

namespace {

const MonomialIndex kUnit[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

ComponentBasis make_basis(const RatFunc& damping, const RatFunc& stiffness, const TowerElement& y1, const TowerElement& y2) {
  ComponentBasis b{damping, stiffness, y1, y2, RatFunc()};
  for (const TowerElement* y : {&y1, &y2}) {
    TowerElement d = differentiate(*y);
    if (differentiate(d) - d * damping - *y * stiffness != TowerElement())
      throw CertificationError("basis element does not solve its linear equation");
  }
  TowerElement w = y1 * differentiate(y2) - differentiate(y1) * y2;
  if (!w.is_rational() || w.is_zero()) throw CertificationError("Wronskian is not a nonzero rational function");
  b.wronskian = w.rational_part();
  return b;
}

JetSystem split(const std::array<JetPoly, 2>& acc, unsigned K, Chart chart, std::array<TowerElement, 4> basis) {
  JetSystem s;
  s.K = K;
  s.chart = chart;
  for (unsigned l = 0; l < 2; ++l) {
    s.nonlinear[l] = JetPoly(K);
    for (auto& [m, c] : acc[l].terms()) {
      if (total_degree(m) == 0) throw ValidationError("acceleration has a constant term; not an equilibrium");
      if (total_degree(m) == 1) {
        if (m != kUnit[l] && m != kUnit[2 + l]) throw Unsupported("linear part couples the two components");
        continue;
      }
      s.nonlinear[l].add(m, c);
    }
    s.basis[l] = make_basis(acc[l].coeff(kUnit[l]), acc[l].coeff(kUnit[2 + l]), basis[2 * l], basis[2 * l + 1]);
  }
  return s;
}

}  // namespace

JetSystem cartesian_jet_system(const DarbouxData& data, unsigned K) {
  check_euler(data);
  auto acc = cartesian_acceleration(data, K);
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& bn = basis_pair(data.n);
  return split(acc, K, Chart::Cartesian, {TowerElement(b2.P), b2.Q, TowerElement(bn.P), bn.Q});
}

JetSystem polar_jet_system(const DarbouxData& data, unsigned K) {
  auto acc = polar_acceleration(data, K);
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& bn = basis_pair(data.n);
  RatFunc w = RatFunc(UPoly(QPoly::t2m1()));
  return split(acc, K, Chart::Polar, {TowerElement(b2.P), b2.Q, TowerElement(bn.P) * w, bn.Q * w});
}

JetSystem degenerate_jet_system(const DarbouxData& data, unsigned K) {
  for (unsigned i = 0; i <= K + 1; ++i)
    if (!data.u.count(i)) throw ValidationError("u table incomplete through order " + std::to_string(K + 1));
  if (!data.u.at(0).is_zero() || !data.u.at(1).is_zero()) throw ValidationError("degenerate point needs U(0) = U'(0) = 0");
  if (!data.u.at(2).is_zero()) throw Unsupported("u2 != 0 at a degenerate point");
  JetPoly v1 = JetPoly::variable(K, 0), v2 = JetPoly::variable(K, 1), R = JetPoly::variable(K, 2), Th = JetPoly::variable(K, 3);
  auto inv_pow = [&](unsigned m) {
    std::vector<RatFunc> c;
    for (unsigned j = 0; j <= K; ++j) {
      Rational b = binomial(m + j - 1, j);
      c.push_back(inv_t(m + j) * ParamPoly(j % 2 ? -b : b));
    }
    return JetPoly::series(R, c);
  };
  std::vector<RatFunc> uc, upc;
  for (unsigned j = 0; j <= K; ++j) {
    Rational f = Rational(1) / factorial(j);
    uc.push_back(RatFunc(data.u.at(j) * Scalar(f)));
    upc.push_back(RatFunc(data.u.at(j + 1) * Scalar(f)));
  }
  JetPoly U = JetPoly::series(Th, uc), Up = JetPoly::series(Th, upc);
  JetPoly tR = R;
  tR.add({0, 0, 0, 0}, t_rf());
  JetPoly one(K);
  one.add({0, 0, 0, 0}, RatFunc(1));
  std::array<JetPoly, 2> acc{tR * v2 * v2 - U * inv_pow(2), Up * inv_pow(3) - (one + v1) * v2 * inv_pow(1) * RatFunc(2)};
  return split(acc, K, Chart::Polar, {TowerElement(t_rf()), TowerElement(1), TowerElement(1), TowerElement(inv_t(1))});
}

// ---- jets

namespace {

using TSeries = std::vector<TowerElement>;

TSeries smul(const TSeries& a, const TSeries& b, unsigned N) {
  TSeries r(N + 1);
  for (unsigned i = 0; i <= N && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (unsigned j = 0; i + j <= N && j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

// [eps^N] of each monomial value, given the variable series
class MonomialEvaluator {
 public:
  MonomialEvaluator(std::array<TSeries, 4> vars, unsigned N) : vars_(std::move(vars)), N_(N) {}
  TowerElement coeff(const MonomialIndex& m) {
    TSeries acc{TowerElement(1)};
    for (unsigned v = 0; v < 4; ++v)
      if (m[v]) acc = smul(acc, power(v, m[v]), N_);
    return acc.size() > N_ ? acc[N_] : TowerElement();
  }

 private:
  const TSeries& power(unsigned v, unsigned e) {
    auto& p = pw_[v];
    if (p.empty()) p.push_back(TSeries{TowerElement(1)});
    while (p.size() <= e) p.push_back(smul(p.back(), vars_[v], N_));
    return p[e];
  }
  std::array<TSeries, 4> vars_;
  unsigned N_;
  std::array<std::vector<TSeries>, 4> pw_;
};

std::array<TSeries, 4> variable_series(const Jets& j, unsigned N) {
  std::array<TSeries, 4> s;
  for (auto& v : s) v.assign(N + 1, TowerElement());
  for (auto& o : j.orders) {
    if (o.order > N) break;
    for (unsigned l = 0; l < 2; ++l) {
      s[2 + l][o.order] = o.x[l];
      s[l][o.order] = differentiate(o.x[l]);
    }
  }
  return s;
}

}  // namespace

std::array<TowerElement, 2> jet_sources(const JetSystem& sys, const Jets& j, unsigned N) {
  MonomialEvaluator ev(variable_series(j, N), N);
  std::array<TowerElement, 2> g;
  for (unsigned l = 0; l < 2; ++l)
    for (auto& [m, c] : sys.nonlinear[l].terms())
      if (total_degree(m) <= N) g[l] += ev.coeff(m) * c;
  return g;
}

namespace {

void integrate_order(const JetSystem& sys, JetOrder& o, JetMode mode, int jobs) {
  for (unsigned l = 0; l < 2; ++l) {
    RatFunc winv = invert_unit(sys.basis[l].wronskian);
    o.integrand[l][0] = sys.basis[l].y1 * o.source[l] * winv;
    o.integrand[l][1] = sys.basis[l].y2 * o.source[l] * winv;
  }
  std::array<TowerElement, 4> F;
  std::array<std::vector<ParamPoly>, 4> conds;
  std::array<std::optional<NewTranscendentalNeeded>, 4> fail;
#pragma omp parallel for num_threads(jobs > 0 ? jobs : 4) schedule(dynamic)
  for (int i = 0; i < 4; ++i) {
    const TowerElement& e = o.integrand[i / 2][i % 2];
    if (mode == JetMode::Closed) {
      ClosedIntegral c = integrate_closed(e);
      F[i] = c.value;
      conds[i] = c.conditions;
    } else {
      IntegrateResult r = integrate(e);
      if (r.ok())
        F[i] = *r.value;
      else
        fail[i] = r.failure;
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (auto& c : conds[i]) o.conditions.push_back(c);
    if (fail[i] && !o.failure) o.failure = fail[i];
  }
  if (o.failure) return;
  for (unsigned l = 0; l < 2; ++l) o.x[l] = sys.basis[l].y2 * F[2 * l] - sys.basis[l].y1 * F[2 * l + 1];
}

}  // namespace

unsigned Jets::reached() const {
  unsigned r = 0;
  for (auto& o : orders) {
    if (!o.exact()) break;
    r = o.order;
  }
  return r;
}

Jets solve_jets(const JetSystem& sys, const std::array<TowerElement, 2>& first, unsigned upto, const JetOptions& opt) {
  for (unsigned l = 0; l < 2; ++l) {
    const ComponentBasis& b = sys.basis[l];
    TowerElement d = differentiate(first[l]);
    if (differentiate(d) - d * b.damping - first[l] * b.stiffness != TowerElement())
      throw CertificationError("first-order family does not solve the linear equations");
  }
  Jets j;
  JetOrder o1;
  o1.order = 1;
  o1.x = first;
  j.orders.push_back(o1);
  extend_jets(sys, j, upto, opt);
  return j;
}

void extend_jets(const JetSystem& sys, Jets& j, unsigned upto, const JetOptions& opt) {
  if (upto > sys.K) throw ValidationError("jets requested beyond the truncation order");
  for (unsigned N = static_cast<unsigned>(j.orders.size()) + 1; N <= upto; ++N) {
    if (!j.orders.back().exact()) break;
    JetOrder o;
    o.order = N;
    o.source = jet_sources(sys, j, N);
    integrate_order(sys, o, opt.mode, opt.jobs);
    auto off = opt.offsets.find(N);
    if (off != opt.offsets.end())
      for (unsigned l = 0; l < 2; ++l) o.x[l] += off->second[l];
    j.orders.push_back(std::move(o));
  }
}

Jets substitute(const Jets& j, SymId s, const ParamPoly& v) {
  Jets r = j;
  for (auto& o : r.orders) {
    for (unsigned l = 0; l < 2; ++l) {
      o.source[l] = o.source[l].subs_param(s, v);
      o.x[l] = o.x[l].subs_param(s, v);
      for (auto& e : o.integrand[l]) e = e.subs_param(s, v);
    }
    std::vector<ParamPoly> kept;
    for (auto& c : o.conditions) {
      ParamPoly p = c.subs(s, v);
      if (!p.is_zero()) kept.push_back(p);
    }
    o.conditions = kept;
  }
  return r;
}

bool certify_jets(const JetSystem& sys, const Jets& j) {
  for (auto& o : j.orders) {
    if (!o.exact()) break;
    for (unsigned l = 0; l < 2; ++l) {
      const ComponentBasis& b = sys.basis[l];
      TowerElement d = differentiate(o.x[l]);
      if (differentiate(d) - d * b.damping - o.x[l] * b.stiffness - o.source[l] != TowerElement()) return false;
    }
  }
  return true;
}

SolutionSet solution_from_jets(const VariationalSystem& sys, const Jets& j) {
  if (j.reached() < sys.k) throw ValidationError("jets do not reach the system order");
  MonomialEvaluator ev(variable_series(j, sys.k), sys.k);
  SolutionSet s;
  for (auto& m : sys.vars) s.value.emplace(m, ev.coeff(m));
  return s;
}

// ---- reports

const char* verdict_text(Verdict v) {
  switch (v) {
    case Verdict::ForcedValue: return "ForcedValue";
    case Verdict::Inconsistent: return "Inconsistent";
    case Verdict::Unconstrained: return "Unconstrained";
    case Verdict::FreeParameterConstraint: return "FreeParameterConstraint";
  }
  return "";
}

namespace {

// normalize so the first nonzero of (a, c) has leading coefficient 1
void normalize(AffineCondition& q) {
  const ParamPoly& p = q.a.is_zero() ? q.c : q.a;
  if (p.is_zero()) return;
  Scalar inv = Scalar(1) / p.leading_coeff();
  q.a *= inv;
  q.c *= inv;
}

using SPoly = std::vector<Scalar>;

void strip(SPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

SPoly to_spoly(const ParamPoly& p, SymId s) {
  SPoly r(p.degree(s) + 1);
  for (unsigned e = 0; e < r.size(); ++e) {
    ParamPoly c = p.coeff(s, e);
    if (!c.is_constant()) throw Unsupported("polynomial is not univariate in " + sym_name(s));
    r[e] = c.is_zero() ? Scalar(0) : c.as_scalar();
  }
  strip(r);
  return r;
}

ParamPoly from_spoly(const SPoly& p, SymId s) {
  ParamPoly r;
  for (unsigned e = 0; e < p.size(); ++e)
    if (!p[e].is_zero()) r += ParamPoly::var(s, e) * p[e];
  return r;
}

SPoly smod(SPoly a, const SPoly& b, SPoly* q = nullptr) {
  if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar(0));
  while (a.size() >= b.size() && !a.empty()) {
    Scalar f = a.back() / b.back();
    std::size_t sh = a.size() - b.size();
    if (q) (*q)[sh] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
    a.pop_back();
    strip(a);
  }
  return a;
}

SPoly sgcd(SPoly a, SPoly b) {
  while (!b.empty()) {
    SPoly r = smod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = Scalar(1) / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

std::string key(const AffineCondition& q) { return q.a.text() + "|" + q.c.text(); }

}  // namespace

ParamPoly univariate_gcd(const std::vector<ParamPoly>& ps, SymId s) {
  SPoly g;
  for (auto& p : ps) g = sgcd(g, to_spoly(p, s));
  return from_spoly(g, s);
}

std::vector<AffineCondition> affine_conditions(const std::vector<ParamPoly>& polys, SymId x,
                                               const std::vector<SymId>& family, const std::string& route) {
  std::set<SymId> fam(family.begin(), family.end());
  std::vector<AffineCondition> out;
  std::set<std::string> seen;
  for (auto& p : polys) {
    std::map<Mono, ParamPoly> groups;
    for (auto& [m, c] : p.terms()) {
      Mono f, rest;
      for (auto& e : m) (fam.count(e.first) ? f : rest).push_back(e);
      ParamPoly r(c);
      for (auto& [sy, ex] : rest) r *= ParamPoly::var(sy, ex);
      groups[f] += r;
    }
    for (auto& [f, g] : groups) {
      if (g.is_zero()) continue;
      if (g.degree(x) > 1) throw Unsupported("condition is not affine in " + sym_name(x));
      AffineCondition q{g.coeff(x, 1), g.coeff(x, 0), route};
      normalize(q);
      if (seen.insert(key(q)).second) out.push_back(q);
    }
  }
  return out;
}

ObstructionReport resolve(unsigned order, SymId x, std::vector<AffineCondition> conditions) {
  ObstructionReport r;
  r.order = order;
  r.free = sym_name(x);
  for (auto& q : conditions)
    if (!q.a.is_zero() || !q.c.is_zero()) r.conditions.push_back(q);
  if (r.conditions.empty()) {
    r.verdict = Verdict::Unconstrained;
    return r;
  }
  const AffineCondition* pivot = nullptr;
  for (auto& q : r.conditions)
    if (!q.a.is_zero() && q.a.is_constant()) {
      pivot = &q;
      break;
    }
  std::vector<ParamPoly> residuals;
  if (pivot) {
    ParamPoly x0 = -pivot->c * (Scalar(1) / pivot->a.as_scalar());
    r.forced_values[r.free] = x0;
    for (auto& q : r.conditions) {
      ParamPoly res = q.a * x0 + q.c;
      if (!res.is_zero()) residuals.push_back(res);
    }
    if (residuals.empty()) {
      r.verdict = Verdict::ForcedValue;
      return r;
    }
  } else {
    for (auto& q : r.conditions) {
      if (!q.a.is_zero()) throw Unsupported("free derivative has a parameter-dependent coefficient at order " + std::to_string(order));
      residuals.push_back(q.c);
    }
  }
  for (auto& p : residuals)
    if (p.is_constant()) {
      r.verdict = Verdict::Inconsistent;
      return r;
    }
  r.verdict = Verdict::FreeParameterConstraint;
  std::set<SymId> syms;
  for (auto& p : residuals)
    for (SymId s : p.symbols()) syms.insert(s);
  if (syms.size() == 1) {
    ParamPoly g = univariate_gcd(residuals, *syms.begin());
    if (g.is_constant()) {
      r.verdict = Verdict::Inconsistent;
      return r;
    }
    r.constraint = g;
  } else {
    ParamPoly p = residuals.front();
    r.constraint = p * (Scalar(1) / p.leading_coeff());
  }
  return r;
}

ObstructionReport resolve_dilog(unsigned order, SymId x, const ParamPoly& p) {
  ObstructionReport r;
  r.order = order;
  r.free = sym_name(x);
  if (p.is_zero()) {
    r.verdict = Verdict::Unconstrained;
    return r;
  }
  SPoly sp = to_spoly(p, x);
  SPoly g = sgcd(sp, [&] {
    SPoly d;
    for (std::size_t i = 1; i < sp.size(); ++i) d.push_back(sp[i] * Scalar(Rational(static_cast<long>(i))));
    return d;
  }());
  SPoly sq;
  smod(sp, g, &sq);
  strip(sq);
  Scalar inv = Scalar(1) / sq.back();
  for (auto& c : sq) c *= inv;
  r.conditions.push_back({ParamPoly(), from_spoly(sq, x), "dilog"});
  if (sq.size() == 2) {
    r.verdict = Verdict::ForcedValue;
    r.forced_values[r.free] = ParamPoly(-sq[0]);
  } else if (sq.size() == 1) {
    r.verdict = Verdict::Inconsistent;
  } else {
    r.verdict = Verdict::FreeParameterConstraint;
    r.constraint = from_spoly(sq, x);
  }
  return r;
}

// ---- eigenvalue analysis

namespace {

std::vector<ParamPoly> residue_conditions(const JetOrder& o, SymId alpha) {
  std::vector<ParamPoly> out;
  for (auto& comp : o.integrand)
    for (auto& e : comp) {
      auto f = to_arctanh_log(e);
      if (!f) return {};
      for (auto& [ij, c] : *f)
        if (ij.second) return {};
      auto F = arctanh_part(e);
      if (!F) return {};
      ParamPoly p = residue_shift_poly(*F, alpha);
      for (unsigned m = 1; m <= p.degree(alpha); ++m) {
        ParamPoly c = p.coeff(alpha, m);
        if (!c.is_zero()) out.push_back(c);
      }
    }
  return out;
}

struct Family {
  std::string name;
  std::vector<SymId> syms;
  std::array<TowerElement, 2> first;
};

Family make_family(unsigned n, bool full) {
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& bn = basis_pair(n);
  Family f;
  SymId c1 = intern("c1"), c2 = intern("c2"), c3 = intern("c3");
  TowerElement x2 = TowerElement(bn.P) * RatFunc(ParamPoly::var(c3)) + bn.Q;
  if (full) {
    f.name = "full";
    f.syms = {c1, c2, c3};
    f.first = {TowerElement(b2.P) * RatFunc(ParamPoly::var(c1)) + b2.Q * RatFunc(ParamPoly::var(c2)), x2};
  } else {
    f.name = "normal";
    f.syms = {c3};
    f.first = {TowerElement(), x2};
  }
  return f;
}

void fill_theta_series(AnalysisResult& res) {
  unsigned N = res.data.cartesian_order();
  res.theta_series.clear();
  for (auto& [m, u] : polar_from_cartesian(res.data, N)) res.theta_series[m] = u * Scalar(Rational(1) / factorial(m));
}

}  // namespace

AnalysisResult analyze_cartesian(unsigned n, unsigned kmax, int jobs, const Progress& progress) {
  if (kmax < 2) throw ValidationError("kmax must be at least 2");
  AnalysisResult res;
  res.n = n;
  res.lambda = lambda_of(n);
  res.kmax = kmax;
  res.data = cartesian_data(n);
  res.family = "full";
  bool full = true;
  Jets jets;
  JetOptions opt;
  opt.jobs = jobs;
  SymId alpha = alpha_symbol();
  for (unsigned k = 2; k <= kmax; ++k) {
    res.data = euler_reduce(res.data, k);
    SymId x = intern(free_derivative_name(k));
    JetSystem sys = cartesian_jet_system(res.data, k);
    ObstructionReport rep;
    for (;;) {
      Family fam = make_family(n, full);
      if (jets.orders.empty()) jets = solve_jets(sys, fam.first, 1, opt);
      extend_jets(sys, jets, k, opt);
      if (jets.reached() < k - 1 || jets.orders.size() < k) throw CertificationError("lower-order jets are not exact");
      const JetOrder& top = jets.orders[k - 1];
      std::vector<AffineCondition> conds = affine_conditions(top.conditions, x, fam.syms, "closure");
      for (auto& q : affine_conditions(residue_conditions(top, alpha), x, fam.syms, "residue")) conds.push_back(q);
      try {
        rep = resolve(k, x, conds);
        break;
      } catch (const Unsupported& e) {
        if (!full) {
          res.unsupported = std::string(e.what());
          fill_theta_series(res);
          return res;
        }
        full = false;
        res.family = "normal";
        jets = Jets();
      }
    }
    res.reports.push_back(rep);
    if (progress) progress(rep);
    if (rep.verdict == Verdict::ForcedValue) {
      ParamPoly v = rep.forced_values.at(rep.free);
      res.data.D[{0, k + 1}] = v;
      jets = substitute(jets, x, v);
      if (!jets.orders[k - 1].exact()) throw CertificationError("forced value leaves conditions at order " + std::to_string(k));
    } else if (rep.verdict == Verdict::Unconstrained) {
      if (k == 2) {
        // b = theta^3 coefficient = D03/6
        ParamPoly v = ParamPoly::var("b") * Scalar(6);
        res.data.D[{0, 3}] = v;
        jets = substitute(jets, x, v);
      }
    } else {
      auto f = rep.forced_values.find(rep.free);
      if (f != rep.forced_values.end()) res.data.D[{0, k + 1}] = f->second;
      break;
    }
  }
  fill_theta_series(res);
  return res;
}

// ---- polar chart and the lambda = -1 chain

namespace {

TowerElement A() { return TowerElement::arctanh(); }
TowerElement Lam() { return TowerElement::ln_t2m1(); }
RatFunc q(const Rational& c) { return RatFunc(ParamPoly(c)); }

// t A + Lambda/2
TowerElement tA_half_lambda() { return A() * t_rf() + Lam() * q(Rational(1, 2)); }

bool in_closed_log_algebra(const TowerElement& e) {
  auto f = to_arctanh_log(e);
  return f.has_value();
}

// polynomial coefficients in C[t, A, Lambda]
bool polynomial_log_algebra(const TowerElement& e) {
  auto f = to_arctanh_log(e);
  if (!f) return false;
  for (auto& [ij, c] : *f)
    if (!c.is_poly()) return false;
  return true;
}

Family polar_family(unsigned n) {
  const BasisPair& b2 = basis_pair(2);
  const BasisPair& bn = basis_pair(n);
  SymId c1 = intern("c1"), c2 = intern("c2"), c3 = intern("c3");
  RatFunc w(UPoly(QPoly::t2m1()));
  Family f;
  f.name = "full";
  f.syms = {c1, c2, c3};
  f.first = {TowerElement(b2.P) * RatFunc(ParamPoly::var(c1)) + b2.Q * RatFunc(ParamPoly::var(c2)),
             (TowerElement(bn.P) * RatFunc(ParamPoly::var(c3)) + bn.Q) * w};
  return f;
}

}  // namespace

ObstructionReport polar_order2(unsigned n, int jobs) {
  DarbouxData d = polar_data(n, {{3, u_symbol(3)}});
  JetSystem sys = polar_jet_system(d, 2);
  Family fam = polar_family(n);
  JetOptions opt;
  opt.jobs = jobs;
  Jets j = solve_jets(sys, fam.first, 2, opt);
  SymId x = intern("u3");
  auto conds = affine_conditions(j.orders[1].conditions, x, fam.syms, "closure");
  for (auto& c : affine_conditions(residue_conditions(j.orders[1], alpha_symbol()), x, fam.syms, "residue")) conds.push_back(c);
  return resolve(2, x, conds);
}

TowerElement dilog_closed_form() {
  TowerElement l1 = TowerElement::gen(L1), l2 = TowerElement::gen(L2), dl = TowerElement::gen(DL);
  RatFunc tp1(UPoly(QPoly({Rational(1), Rational(1)})));
  RatFunc coef = RatFunc(UPoly(std::vector<ParamPoly>{ParamPoly(-1), ParamPoly::var(ln2_symbol()) * Scalar(2) + ParamPoly(1)}));
  return (l1 + TowerElement(1)) * l2 * tp1 - l1 * coef + dl * t_rf(2);
}

DilogObstruction prop1_pipeline(unsigned k) {
  if (k < 2) throw ValidationError("prop1 needs k >= 2");
  DilogObstruction r;
  r.k = k;
  InvariantSubspace W = invariant_subspace(k);
  const VariationalSystem& sys = W.theta_sector;
  std::map<MonomialIndex, TowerElement> seeds;
  seeds[{0, 0, 0, 2 * k - 1}] = TowerElement(1);
  r.theta = solve_triangular(sys, seeds);
  r.residual_ok = r.theta.complete(sys) && r.theta.failures.empty() && residual_zero(sys, r.theta);
  if (!r.residual_ok) throw CertificationError("theta-sector solution has a nonzero residual");
  ParamPoly u = u_symbol(k + 1), utop = u_symbol(2 * k);
  SymId us = intern("u" + std::to_string(k + 1)), ts = intern("u" + std::to_string(2 * k));
  Rational fk = factorial(k), fk1 = factorial(k - 1);
  const TowerElement& yk = r.theta.value.at({0, 0, 0, k});
  r.y_k_matches = yk == tA_half_lambda() * RatFunc(u * Scalar(Rational(-2) / fk1));
  const TowerElement& y1 = r.theta.value.at({0, 0, 0, 1});
  r.dilog_coefficient = y1.coeff({0, 0, 0, 1});
  ParamPoly scale = u * u * Scalar(Rational(2) / (fk * fk1));
  TowerElement expected = dilog_closed_form() * RatFunc(scale) -
                          tA_half_lambda() * RatFunc(utop * Scalar(Rational(2) / factorial(2 * k - 1)));
  TowerElement diff = y1 - expected;
  r.y_1_matches = diff.is_rational() && diff.rational_part().is_poly() && diff.rational_part().degree() <= 1;
  TowerElement E = dilog_closed_form();
  r.e_certified = differentiate(differentiate(E)) == -(A() * t_rf(2) + Lam()) * RatFunc::inv_t2m1();
  TowerElement top = y1.param_coeff(ts, 1);
  r.top_abelian = top.degree(DL) == 0 && in_closed_log_algebra(top);
  // the dilog condition as a polynomial in u_{k+1}
  std::vector<ParamPoly> cs;
  for (auto& c : r.dilog_coefficient.num().coeffs())
    if (!c.is_zero()) cs.push_back(c);
  ParamPoly p = cs.empty() ? ParamPoly() : cs.front();
  r.report = resolve_dilog(2 * k - 1, us, p);
  r.report.dilog.push_back({monomial_name({0, 0, 0, 1}), r.dilog_coefficient});
  return r;
}

TowerElement q2_weight_primitive() {
  return (A() * RatFunc(UPoly(QPoly::t2m1().pow(2))) - TowerElement(RatFunc(UPoly(QPoly::t_pow(3))))) * q(Rational(3, 32));
}

PolarVe2 polar_ve2_galois(const ParamPoly& u3) {
  PolarVe2 out;
  SymId u3s = intern("u3");
  DarbouxData d = polar_data(0, {{3, u_symbol(3)}});
  JetSystem sys = polar_jet_system(d, 2);
  SymId C1 = intern("C1"), C2 = intern("C2"), C3 = intern("C3"), C4 = intern("C4");
  const BasisPair& b2 = basis_pair(2);
  std::array<TowerElement, 2> first{TowerElement(b2.P) * RatFunc(ParamPoly::var(C1)) + b2.Q * RatFunc(ParamPoly::var(C2)),
                                    TowerElement(t_rf()) * RatFunc(ParamPoly::var(C3)) + TowerElement(RatFunc(ParamPoly::var(C4)))};
  Jets raw = solve_jets(sys, first, 2);
  if (!raw.orders[1].exact()) throw CertificationError("order-2 polar jets leave conditions");
  out.jets = substitute(raw, u3s, u3);
  TowerElement th = raw.x(2)[1];
  out.theta2 = th.subs_param(u3s, u3);
  // the C2 C3 source is -2((t^2-1) Q2)', so theta2 holds -2 int (t^2-1) Q2
  out.c2c3_matches = [&] {
    TowerElement c = th.param_coeff(C2, 1).param_coeff(C3, 1);
    TowerElement diff = c + q2_weight_primitive() * RatFunc(2);
    return diff.is_rational() && diff.rational_part().is_poly() && diff.rational_part().degree() <= 1;
  }();
  // u3 part sits in C[t, A, Lambda] and carries the only Lambda
  TowerElement u3part = th.param_coeff(u3s, 1);
  bool eq14 = polynomial_log_algebra(u3part) && !u3part.is_zero();
  auto f = to_arctanh_log(out.theta2);
  out.lambda_term = false;
  if (f)
    for (auto& [ij, c] : *f)
      if (ij.second) out.lambda_term = true;
  auto f0 = to_arctanh_log(th.subs_param(u3s, ParamPoly(0)));
  bool lambda_free_without_u3 = f0.has_value();
  if (f0)
    for (auto& [ij, c] : *f0)
      if (ij.second) lambda_free_without_u3 = false;
  out.r2_residue_ok = residue_conditions(out.jets.orders[1], alpha_symbol()).empty() && in_closed_log_algebra(out.jets.x(2)[0]);
  out.group_dim = out.lambda_term ? 2 : 1;
  out.report.order = 2;
  out.report.free = "u3";
  out.report.verdict = Verdict::Unconstrained;
  if (!eq14 || !lambda_free_without_u3) throw CertificationError("order-2 theta solution outside the expected class");
  return out;
}

SingleSource single_source_check(unsigned k) {
  SingleSource s;
  s.k = k;
  SymId C3 = intern("C3"), C4 = intern("C4");
  TowerElement th1 = TowerElement(t_rf()) * RatFunc(ParamPoly::var(C3)) + TowerElement(RatFunc(ParamPoly::var(C4)));
  ParamPoly u = u_symbol(k + 1);
  TowerElement src = th1.pow(k) * (RatFunc::inv_t2m1() * RatFunc(u * Scalar(Rational(2) / factorial(k))));
  ClosedIntegral a = integrate_closed(src);
  ClosedIntegral b = a.exact() ? integrate_closed(a.value) : ClosedIntegral{};
  s.abelian = a.exact() && b.exact() && polynomial_log_algebra(b.value);
  s.theta_k = b.value;
  if (s.abelian && differentiate(differentiate(s.theta_k)) != src) throw CertificationError("single-source solution fails");
  s.report.order = k;
  s.report.free = "u" + std::to_string(k + 1);
  s.report.verdict = s.abelian ? Verdict::Unconstrained : Verdict::Inconsistent;
  return s;
}

AnalysisResult analyze_eigenvalue(unsigned n, unsigned kmax, int jobs, const Progress& progress) {
  if (n != 0) return analyze_cartesian(n, kmax, jobs, progress);
  if (kmax < 2) throw ValidationError("kmax must be at least 2");
  AnalysisResult res;
  res.n = 0;
  res.lambda = lambda_of(0);
  res.kmax = kmax;
  res.family = "full";
  res.data = polar_data(0);
  auto push = [&](const ObstructionReport& r) {
    res.reports.push_back(r);
    if (progress) progress(r);
  };
  push(polar_ve2_galois(u_symbol(3)).report);
  for (unsigned m = 3; m <= kmax; ++m) {
    if (m % 2) {
      DilogObstruction p = prop1_pipeline((m + 1) / 2);
      push(p.report);
      if (p.report.verdict != Verdict::ForcedValue) break;
      res.data.u[(m + 1) / 2 + 1] = p.report.forced_values.begin()->second;
    } else {
      push(single_source_check(m).report);
    }
  }
  for (auto& [i, v] : res.data.u) res.theta_series[i] = v * Scalar(Rational(1) / factorial(i));
  return res;
}

// ---- degenerate Darboux point

DegenerateReport degenerate_point_analysis(const ParamPoly& u2, unsigned kmax) {
  DegenerateReport r;
  r.u2 = u2;
  r.kmax = kmax;
  if (!u2.is_zero()) {
    r.known_obstruction = true;
    r.verdict = "NonAbelian";
    return r;
  }
  DarbouxData d;
  d.chart = Chart::Polar;
  d.u[0] = 0;
  d.u[1] = 0;
  d.u[2] = 0;
  for (unsigned i = 3; i <= kmax + 1; ++i) d.u[i] = u_symbol(i);
  JetSystem sys = degenerate_jet_system(d, kmax);
  SymId C1 = intern("C1"), C2 = intern("C2"), C3 = intern("C3"), C4 = intern("C4");
  std::array<TowerElement, 2> first{TowerElement(t_rf()) * RatFunc(ParamPoly::var(C1)) + TowerElement(RatFunc(ParamPoly::var(C2))),
                                    TowerElement(RatFunc(ParamPoly::var(C3))) + TowerElement(inv_t(1) * RatFunc(ParamPoly::var(C4)))};
  JetOptions opt;
  opt.mode = JetMode::Tower;
  Jets j = solve_jets(sys, first, kmax, opt);
  bool ok = j.reached() == kmax && certify_jets(sys, j);
  for (auto& o : j.orders) {
    bool in = o.exact();
    for (auto& x : o.x)
      for (auto& [g, c] : x.terms())
        if (g[0] || g[1] || g[3] || c.exp(Root::Plus1) || c.exp(Root::Minus1)) in = false;
    r.in_laurent_log.push_back(in);
    ok = ok && in;
  }
  r.verdict = ok ? "Abelian" : "NonAbelian";
  return r;
}

// ---- two-center family and the Hietarinta potential

ParamPoly two_center_quadratic(const Scalar& d) {
  ParamPoly x = ParamPoly::var("x");
  Scalar a = Scalar(4) + d * d;
  return x * x * a - x * a + ParamPoly(1);
}

std::map<std::pair<unsigned, unsigned>, Scalar> two_center_jet(const Rational& c, const Rational& s, unsigned N) {
  // c^3/(c q1 - s q2) + s^3/(s q1 + c q2) at (1, 0)
  std::map<std::pair<unsigned, unsigned>, Scalar> D;
  for (unsigned m = 0; m <= N; ++m)
    for (unsigned a = 0; a <= m; ++a) {
      unsigned b = m - a;
      Rational sign = m % 2 ? Rational(-1) : Rational(1);
      Rational pw1 = 1, pw2 = 1;
      for (unsigned i = 0; i < b; ++i) {
        pw1 *= -s / c;
        pw2 *= c / s;
      }
      D[{a, b}] = Scalar(sign * factorial(m) * (c * c * pw1 + s * s * pw2));
    }
  return D;
}

namespace {

// truncated Taylor polynomial in x = q1 - 1, y = q2 of the Hietarinta potential with q1 + i sigma q2
std::map<std::pair<unsigned, unsigned>, Scalar> hietarinta_jet(int sigma, unsigned N) {
  SymId xs = intern("x"), ys = intern("y");
  ParamPoly x = ParamPoly::var(xs), y = ParamPoly::var(ys);
  ParamPoly w = x + y * Scalar(0, sigma);
  auto trunc = [&](const ParamPoly& p) {
    ParamPoly r;
    for (auto& [m, c] : p.terms()) {
      unsigned d = 0;
      for (auto& e : m) d += e.second;
      if (d <= N) r += ParamPoly(c) * [&] {
        ParamPoly mm(1);
        for (auto& e : m) mm *= ParamPoly::var(e.first, e.second);
        return mm;
      }();
    }
    return r;
  };
  // (1 + w)^-m
  auto inv = [&](unsigned m) {
    ParamPoly r, wp(1);
    for (unsigned j = 0; j <= N; ++j) {
      Rational b = binomial(m + j - 1, j);
      r += wp * Scalar(j % 2 ? -b : b);
      wp = trunc(wp * w);
    }
    return r;
  };
  ParamPoly q1 = x + ParamPoly(1);
  ParamPoly V = trunc((q1 * q1 + y * y) * inv(3)) * Scalar(Rational(-1, 2)) + inv(1) * Scalar(Rational(3, 2));
  V = trunc(V);
  std::map<std::pair<unsigned, unsigned>, Scalar> D;
  for (unsigned m = 0; m <= N; ++m)
    for (unsigned a = 0; a <= m; ++a) {
      ParamPoly c = V.coeff(xs, a).coeff(ys, m - a);
      Scalar v = c.is_zero() ? Scalar(0) : c.as_scalar();
      D[{a, m - a}] = v * Scalar(factorial(a) * factorial(m - a));
    }
  return D;
}

}  // namespace

FamilyMatch family_match_order3(const Scalar& d) {
  FamilyMatch r;
  r.d = d;
  r.discriminant = (Scalar(4) + d * d) * d * d;
  Scalar two_i(0, 2);
  if (d == two_i || d == -two_i) {
    r.branch = "hietarinta";
    // b = D03/6 = d as in the two-center family; Euler fixes D30 = -6, D21 = 0, D12 = -6
    std::map<std::pair<unsigned, unsigned>, Scalar> want{{{0, 0}, Scalar(1)}, {{1, 0}, Scalar(-1)}, {{0, 1}, Scalar(0)},
                                                         {{2, 0}, Scalar(2)}, {{1, 1}, Scalar(0)}, {{0, 2}, Scalar(2)},
                                                         {{3, 0}, Scalar(-6)}, {{2, 1}, Scalar(0)}, {{1, 2}, Scalar(-6)}};
    auto matches = [&](const std::map<std::pair<unsigned, unsigned>, Scalar>& D, const Scalar& d03) {
      for (auto& [ab, v] : want)
        if (D.at(ab) != v) return false;
      return D.at({0, 3}) == d03;
    };
    std::string b_sign, cubic_sign;
    for (int sigma : {1, -1}) {
      auto D = hietarinta_jet(sigma, 3);
      const char* sg = sigma > 0 ? "q1 + i q2" : "q1 - i q2";
      if (matches(D, d * Scalar(6))) b_sign = sg;
      if (matches(D, -d * Scalar(6))) cubic_sign = sg;
    }
    r.certified = !b_sign.empty();
    r.variant = "D03/6 = d: " + (b_sign.empty() ? std::string("none") : b_sign) +
                "; cubic -(q1^3 + 3 q1 q2^2 + d q2^3): " + (cubic_sign.empty() ? std::string("none") : cubic_sign);
    return r;
  }
  r.branch = "two-center";
  // (1-2x)^2 - d^2 x (1-x) equals the quadratic; leading coefficient 4 + d^2 != 0 and q(0) = q(1) = 1
  ParamPoly x = ParamPoly::var("x");
  ParamPoly lhs = (ParamPoly(1) - x * Scalar(2)).pow(2) - x * (ParamPoly(1) - x) * (d * d);
  ParamPoly quad = two_center_quadratic(d);
  Scalar lead = Scalar(4) + d * d;
  r.certified = lhs == quad && !lead.is_zero() && quad.subs(intern("x"), ParamPoly(0)) == ParamPoly(1) &&
                quad.subs(intern("x"), ParamPoly(1)) == ParamPoly(1);
  r.certificate = "4 + d^2 = " + lead.text() + " != 0; roots avoid cos^2 in {0, 1}";
  // numeric sanity: s = sqrt((4 + d^2 + sqrt(4 d^2 + d^4))/(4 + d^2))/sqrt2
  using C = std::complex<long double>;
  C dd(static_cast<long double>(d.re().get_d()), static_cast<long double>(d.im().get_d()));
  long double best = 1e300L;
  for (int br : {1, -1}) {
    C root = std::sqrt(4.0L * dd * dd + dd * dd * dd * dd) * static_cast<long double>(br);
    C sn = std::sqrt((4.0L + dd * dd + root) / (4.0L + dd * dd)) / std::sqrt(2.0L);
    for (int sg : {1, -1}) {
      C cs = std::sqrt(1.0L - sn * sn) * static_cast<long double>(sg);
      C val = (sn * sn - cs * cs) / (cs * sn);
      best = std::min(best, std::abs(val - dd));
    }
  }
  r.numeric_residual = static_cast<double>(best);
  return r;
}

bool lambda0_matches_inverse(unsigned N) {
  AnalysisResult a = analyze_cartesian(1, N - 1);
  for (auto& rep : a.reports)
    if (rep.verdict != Verdict::ForcedValue) return false;
  for (unsigned m = 0; m <= N; ++m)
    for (unsigned i = 0; i <= m; ++i) {
      unsigned b = m - i;
      Rational want = b ? Rational(0) : (i % 2 ? -factorial(i) : factorial(i));
      if (!a.data.has(i, b) || a.data.d(i, b) != ParamPoly(want)) return false;
    }
  return true;
}

}  // namespace hve
