#include "hve/varform.hpp"

#include <set>
#include <sstream>

namespace hve {

const ParamPoly& DarbouxData::d(unsigned a, unsigned b) const {
  auto it = D.find({a, b});
  if (it == D.end()) throw ValidationError("missing derivative D(" + std::to_string(a) + "," + std::to_string(b) + ")");
  return it->second;
}

unsigned DarbouxData::cartesian_order() const {
  for (unsigned m = 0;; ++m)
    for (unsigned a = 0; a <= m; ++a)
      if (!has(a, m - a)) return m == 0 ? 0 : m - 1;
}

unsigned DarbouxData::polar_order() const {
  for (unsigned m = 0;; ++m)
    if (!u.count(m)) return m == 0 ? 0 : m - 1;
}

DarbouxData cartesian_data(unsigned n) {
  DarbouxData d;
  d.n = n;
  d.lambda = lambda_of(n);
  d.chart = Chart::Cartesian;
  d.D[{0, 0}] = 1;
  d.D[{1, 0}] = -1;
  d.D[{0, 1}] = 0;
  d.D[{2, 0}] = 2;
  d.D[{1, 1}] = 0;
  d.D[{0, 2}] = ParamPoly(d.lambda);
  return d;
}

DarbouxData polar_data(unsigned n, const std::map<unsigned, ParamPoly>& extra) {
  DarbouxData d;
  d.n = n;
  d.lambda = lambda_of(n);
  d.chart = Chart::Polar;
  d.u[0] = 1;
  d.u[1] = 0;
  d.u[2] = ParamPoly(d.lambda + 1);
  for (auto& [i, v] : extra) {
    if (i <= 2 && d.u[i] != v) throw ValidationError("u" + std::to_string(i) + " is fixed by the normalization");
    d.u[i] = v;
  }
  return d;
}

std::string free_derivative_name(unsigned k) { return "d_" + std::to_string(k) + "_" + std::to_string(k + 1); }
ParamPoly free_derivative(unsigned k) { return ParamPoly::var(free_derivative_name(k)); }
ParamPoly u_symbol(unsigned i) { return ParamPoly::var("u" + std::to_string(i)); }

void check_euler(const DarbouxData& data) {
  for (auto& [ab, v] : data.D) {
    auto [a, b] = ab;
    if (a == 0) continue;
    auto it = data.D.find({a - 1, b});
    if (it == data.D.end()) continue;
    if (v != it->second * Scalar(-static_cast<long>(a + b)))
      throw ValidationError("Euler relation violated: D(" + std::to_string(a) + "," + std::to_string(b) + ") != -" +
                            std::to_string(a + b) + " D(" + std::to_string(a - 1) + "," + std::to_string(b) + ")");
  }
}

DarbouxData euler_reduce(const DarbouxData& data, unsigned k) {
  if (data.chart != Chart::Cartesian) throw ValidationError("euler_reduce needs Cartesian data");
  if (data.cartesian_order() < k) throw ValidationError("derivative table incomplete at order " + std::to_string(k));
  check_euler(data);
  DarbouxData out = data;
  for (unsigned a = 0; a <= k; ++a) {
    unsigned b = k - a;
    ParamPoly v = data.d(a, b) * Scalar(-static_cast<long>(k + 1));
    auto it = out.D.find({a + 1, b});
    if (it != out.D.end() && it->second != v)
      throw ValidationError("Euler relation violated: D(" + std::to_string(a + 1) + "," + std::to_string(b) + ") != -" +
                            std::to_string(k + 1) + " D(" + std::to_string(a) + "," + std::to_string(b) + ")");
    out.D[{a + 1, b}] = v;
  }
  if (!out.has(0, k + 1)) out.D[{0, k + 1}] = free_derivative(k);
  return out;
}

// series

Series series_mul(const Series& a, const Series& b, unsigned N) {
  Series r(N + 1);
  for (std::size_t i = 0; i < a.size() && i <= N; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= N; ++j) r[i + j].add_mul(a[i], b[j]);
  }
  return r;
}

Series series_compose(const Series& f, const Series& g, unsigned N) {
  if (!g.empty() && !g[0].is_zero()) throw ValidationError("series_compose needs g(0) = 0");
  Series r(N + 1);
  for (std::size_t j = f.size(); j-- > 0;) {
    r = series_mul(r, g, N);
    r[0] += f[j];
  }
  return r;
}

namespace {

// 1/a, a[0] a nonzero rational
Series series_inverse(const Series& a, unsigned N) {
  Series r(N + 1);
  Scalar a0 = a[0].as_scalar();
  r[0] = ParamPoly(Scalar(1) / a0);
  for (unsigned m = 1; m <= N; ++m) {
    ParamPoly s;
    for (unsigned i = 1; i <= m && i < a.size(); ++i) s.add_mul(a[i], r[m - i]);
    r[m] = s * (Scalar(-1) / a0);
  }
  return r;
}

Series sin_series(unsigned N) {
  Series s(N + 1);
  for (unsigned m = 1; m <= N; m += 2) s[m] = ParamPoly(Rational((m / 2) % 2 ? -1 : 1) / factorial(m));
  return s;
}

Series cos_series(unsigned N) {
  Series s(N + 1);
  for (unsigned m = 0; m <= N; m += 2) s[m] = ParamPoly(Rational((m / 2) % 2 ? -1 : 1) / factorial(m));
  return s;
}

Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace

std::map<unsigned, ParamPoly> polar_from_cartesian(const DarbouxData& data, unsigned N) {
  Series v(N + 1);
  for (unsigned m = 0; m <= N; ++m) v[m] = data.d(0, m) * Scalar(Rational(1) / factorial(m));
  Series sec = series_inverse(cos_series(N), N);
  Series tan = series_mul(sin_series(N), sec, N);
  Series U = series_mul(series_compose(v, tan, N), sec, N);
  std::map<unsigned, ParamPoly> u;
  for (unsigned m = 0; m <= N; ++m) u[m] = U[m] * Scalar(factorial(m));
  return u;
}

std::map<unsigned, ParamPoly> normal_jet_from_polar(const std::map<unsigned, ParamPoly>& u, unsigned N) {
  Series U(N + 1), atan(N + 1), root(N + 1);
  for (unsigned m = 0; m <= N; ++m) {
    auto it = u.find(m);
    if (it == u.end()) throw ValidationError("missing u" + std::to_string(m));
    U[m] = it->second * Scalar(Rational(1) / factorial(m));
  }
  for (unsigned m = 1; m <= N; m += 2) atan[m] = ParamPoly(rat((m / 2) % 2 ? -1 : 1, m));
  // (1+s^2)^(-1/2) = sum binom(-1/2, j) s^(2j)
  Rational c = 1;
  for (unsigned j = 0; 2 * j <= N; ++j) {
    root[2 * j] = ParamPoly(c);
    c *= (Rational(-1, 2) - j) / Rational(j + 1);
  }
  Series V = series_mul(series_compose(U, atan, N), root, N);
  std::map<unsigned, ParamPoly> out;
  for (unsigned m = 0; m <= N; ++m) out[m] = V[m] * Scalar(factorial(m));
  return out;
}

DarbouxData cartesian_from_polar(const DarbouxData& polar, unsigned N) {
  if (polar.chart != Chart::Polar) throw ValidationError("cartesian_from_polar needs polar data");
  auto jet = normal_jet_from_polar(polar.u, N);
  DarbouxData out = cartesian_data(polar.n);
  if (N >= 2 && jet[2] != out.d(0, 2)) throw ValidationError("U''(0) does not match lambda + 1");
  out.D.clear();
  for (unsigned m = 0; m <= N; ++m) {
    out.D[{0, m}] = jet[m];
    for (unsigned a = 1; a <= m; ++a) out.D[{a, m - a}] = out.d(a - 1, m - a) * Scalar(-static_cast<long>(m));
  }
  check_euler(out);
  return out;
}

// monomials

unsigned total_degree(const MonomialIndex& m) { return m[0] + m[1] + m[2] + m[3]; }

std::string monomial_name(const MonomialIndex& m) {
  return "y_" + std::to_string(m[0]) + "_" + std::to_string(m[1]) + "_" + std::to_string(m[2]) + "_" + std::to_string(m[3]);
}

JetPoly JetPoly::variable(unsigned K, unsigned which, const RatFunc& c) {
  JetPoly p(K);
  MonomialIndex m{0, 0, 0, 0};
  m[which] = 1;
  p.add(m, c);
  return p;
}

RatFunc JetPoly::coeff(const MonomialIndex& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? RatFunc() : it->second;
}

void JetPoly::add(const MonomialIndex& m, const RatFunc& c) {
  if (c.is_zero() || total_degree(m) > K_) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  for (auto& [m, c] : o.t_) add(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  for (auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  JetPoly r(std::min(a.K_, b.K_));
  for (auto& [ma, ca] : a.t_) {
    unsigned da = total_degree(ma);
    for (auto& [mb, cb] : b.t_) {
      if (da + total_degree(mb) > r.K_) continue;
      r.add({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]}, ca * cb);
    }
  }
  return r;
}

JetPoly operator*(const JetPoly& a, const RatFunc& r) {
  JetPoly out(a.K_);
  if (r.is_zero()) return out;
  for (auto& [m, c] : a.t_) out.add(m, c * r);
  return out;
}

JetPoly JetPoly::pow(unsigned e) const {
  JetPoly r(K_);
  r.add({0, 0, 0, 0}, RatFunc(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

JetPoly JetPoly::series(const JetPoly& x, const std::vector<RatFunc>& c) {
  JetPoly r(x.K_);
  for (std::size_t j = c.size(); j-- > 0;) {
    r = r * x;
    r.add({0, 0, 0, 0}, c[j]);
  }
  return r;
}

JetPoly JetPoly::times_monomial(const MonomialIndex& m, const RatFunc& c) const {
  JetPoly out(K_);
  unsigned dm = total_degree(m);
  for (auto& [mi, ci] : t_) {
    if (dm + total_degree(mi) > K_) continue;
    out.t_.emplace(MonomialIndex{mi[0] + m[0], mi[1] + m[1], mi[2] + m[2], mi[3] + m[3]}, ci * c);
  }
  return out;
}

JetPoly JetPoly::subs_param(SymId s, const ParamPoly& v) const {
  JetPoly out(K_);
  for (auto& [m, c] : t_) out.add(m, c.subs_param(s, v));
  return out;
}

// accelerations

namespace {

RatFunc t2m1_pow(int e) {
  if (e >= 0) return RatFunc(UPoly(QPoly::t2m1().pow(static_cast<unsigned>(e))));
  return RatFunc::inv_t2m1(static_cast<unsigned>(-e));
}

RatFunc tc(const Rational& c) { return RatFunc(UPoly(QPoly({Rational(0), c}))); }  // c t

JetPoly constant(unsigned K, const RatFunc& c) {
  JetPoly p(K);
  p.add({0, 0, 0, 0}, c);
  return p;
}

}  // namespace

std::array<JetPoly, 2> cartesian_acceleration(const DarbouxData& data, unsigned K) {
  if (data.chart != Chart::Cartesian) throw ValidationError("cartesian_acceleration needs Cartesian data");
  if (data.cartesian_order() < K + 1) throw ValidationError("derivative table incomplete through order " + std::to_string(K + 1));
  std::array<JetPoly, 2> acc;
  JetPoly x1 = JetPoly::variable(K, 2), x2 = JetPoly::variable(K, 3);
  std::vector<JetPoly> p1{constant(K, 1)}, p2{constant(K, 1)};
  for (unsigned i = 1; i <= K; ++i) {
    p1.push_back(p1.back() * x1);
    p2.push_back(p2.back() * x2);
  }
  for (unsigned l = 0; l < 2; ++l) {
    JetPoly a = JetPoly::variable(K, l, tc(-4) * RatFunc::inv_t2m1());
    for (unsigned i = 1; i <= K; ++i) {
      RatFunc w = t2m1_pow(static_cast<int>(i) - 2) * RatFunc(2);
      for (unsigned ea = 0; ea <= i; ++ea) {
        unsigned eb = i - ea;
        const ParamPoly& d = l == 0 ? data.d(ea + 1, eb) : data.d(ea, eb + 1);
        if (d.is_zero()) continue;
        RatFunc c = w * (d * Scalar(Rational(1) / (factorial(ea) * factorial(eb))));
        a += (p1[ea] * p2[eb]) * c;
      }
    }
    acc[l] = a;
  }
  return acc;
}

std::array<JetPoly, 2> polar_acceleration(const DarbouxData& data, unsigned K) {
  if (data.chart != Chart::Polar) throw ValidationError("polar_acceleration needs polar data");
  if (data.polar_order() < K + 1) throw ValidationError("u table incomplete through order " + std::to_string(K + 1));
  if (data.u.at(0) != ParamPoly(1) || !data.u.at(1).is_zero()) throw ValidationError("polar data needs U(0) = 1 and U'(0) = 0");
  JetPoly v1 = JetPoly::variable(K, 0), v2 = JetPoly::variable(K, 1), x1 = JetPoly::variable(K, 2), x2 = JetPoly::variable(K, 3);
  JetPoly one = constant(K, 1);
  JetPoly w = x1 * t2m1_pow(1);
  std::vector<RatFunc> alt, uc, upc;
  for (unsigned j = 0; j <= K; ++j) {
    alt.push_back(RatFunc(j % 2 ? -1 : 1));
    Rational f = Rational(1) / factorial(j);
    uc.push_back(RatFunc(data.u.at(j) * Scalar(f)));
    upc.push_back(RatFunc(data.u.at(j + 1) * Scalar(f)));
  }
  JetPoly inv1 = JetPoly::series(w, alt);
  JetPoly inv2 = inv1 * inv1, inv3 = inv2 * inv1;
  JetPoly U = JetPoly::series(x2, uc), Up = JetPoly::series(x2, upc);
  std::array<JetPoly, 2> acc;
  acc[0] = v1 * (tc(-4) * RatFunc::inv_t2m1()) + (one + w) * v2 * v2 * RatFunc::inv_t2m1() +
           (one - U * inv2) * (RatFunc(2) * t2m1_pow(-2));
  acc[1] = (Up * inv3 * RatFunc::inv_t2m1() - (x1 * tc(2) + v1 * t2m1_pow(1)) * v2 * inv1) * RatFunc(2);
  return acc;
}

bool certify_time_change() {
  // d/dtau = s D with s^2 = (t^2-1)^4 / 2, D = d/dt; squares only, so sqrt2 never appears
  RatFunc t2 = t2m1_pow(1), phi = t2m1_pow(-1);
  RatFunc dphi = phi.diff();
  // 1/2 phi_dot^2 = 1/4 (t^2-1)^4 phi'^2
  RatFunc half_sq = t2m1_pow(4) * dphi * dphi * RatFunc(ParamPoly(Rational(1, 4)));
  // 1/phi + 1 = t^2
  bool energy = half_sq == t2 + RatFunc(1);
  // phi_ddot = 1/2 (t^2-1)^2 d/dt[(t^2-1)^2 phi'] = -phi^-2
  RatFunc acc = t2m1_pow(2) * (t2m1_pow(2) * dphi).diff() * RatFunc(ParamPoly(Rational(1, 2)));
  bool force = acc == -t2m1_pow(2);
  // X_ddot = c2 X'' + c1 X' with c2 = 1/2 (t^2-1)^4, c1 = 1/2 (t^2-1)^2 d/dt (t^2-1)^2
  RatFunc c2 = t2m1_pow(4) * RatFunc(ParamPoly(Rational(1, 2)));
  RatFunc c1 = t2m1_pow(2) * t2m1_pow(2).diff() * RatFunc(ParamPoly(Rational(1, 2)));
  // X_ddot = lambda phi^-3 X  <=>  (c2 X'' + c1 X') / (t^2-1)^3 = lambda X
  bool first = c2 * t2m1_pow(-3) == t2m1_pow(1) * RatFunc(ParamPoly(Rational(1, 2))) && c1 * t2m1_pow(-3) == tc(2);
  return energy && force && first;
}

// systems

std::size_t VariationalSystem::find(const MonomialIndex& m) const {
  auto it = index.find(m);
  if (it == index.end()) throw ValidationError("variable " + monomial_name(m) + " not in system");
  return it->second;
}

std::vector<MonomialIndex> monomials_up_to(unsigned k) {
  std::vector<MonomialIndex> out;
  for (unsigned d = 1; d <= k; ++d)
    for (int a = static_cast<int>(d); a >= 0; --a)
      for (int b = static_cast<int>(d) - a; b >= 0; --b)
        for (int c = static_cast<int>(d) - a - b; c >= 0; --c)
          out.push_back({static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(c),
                         static_cast<unsigned>(static_cast<int>(d) - a - b - c)});
  return out;
}

VariationalSystem linearize(const std::array<JetPoly, 2>& acc, unsigned k, Chart chart) {
  for (auto& a : acc)
    for (auto& [m, c] : a.terms())
      if (total_degree(m) == 0) throw ValidationError("acceleration has a constant term; not an equilibrium");
  VariationalSystem sys;
  sys.k = k;
  sys.chart = chart;
  sys.vars = monomials_up_to(k);
  for (std::size_t i = 0; i < sys.vars.size(); ++i) sys.index[sys.vars[i]] = i;
  sys.rhs.resize(sys.vars.size());
  std::array<JetPoly, 2> a{acc[0], acc[1]};
  for (auto& x : a)
    if (x.K() != k) {
      JetPoly y(k);
      y += x;
      x = y;
    }
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    const MonomialIndex& z = sys.vars[i];
    JetPoly d(k);
    for (unsigned l = 0; l < 2; ++l) {
      if (z[l] == 0) continue;
      MonomialIndex q = z;
      --q[l];
      d += a[l].times_monomial(q, RatFunc(static_cast<long>(z[l])));
    }
    for (unsigned l = 0; l < 2; ++l) {
      if (z[2 + l] == 0) continue;
      MonomialIndex q = z;
      --q[2 + l];
      ++q[l];
      d.add(q, RatFunc(static_cast<long>(z[2 + l])));
    }
    for (auto& [m, c] : d.terms()) sys.rhs[i].emplace(sys.index.at(m), c);
  }
  check_block_triangular(sys);
  return sys;
}

void check_block_triangular(const VariationalSystem& sys) {
  for (std::size_t i = 0; i < sys.size(); ++i) {
    unsigned d = total_degree(sys.vars[i]);
    for (auto& [j, c] : sys.rhs[i])
      if (total_degree(sys.vars[j]) < d)
        throw ValidationError("block triangularity violated: " + monomial_name(sys.vars[i]) + " references " +
                              monomial_name(sys.vars[j]));
  }
}

VariationalSystem build_cartesian_ve(const DarbouxData& data, unsigned k) {
  if (data.chart != Chart::Cartesian) throw ValidationError("build_cartesian_ve needs Cartesian data");
  check_euler(data);
  return linearize(cartesian_acceleration(data, k), k, Chart::Cartesian);
}

VariationalSystem build_polar_ve(const DarbouxData& data, unsigned k) {
  return linearize(polar_acceleration(data, k), k, Chart::Polar);
}

std::string dump(const VariationalSystem& sys) {
  std::ostringstream os;
  os << "# order " << sys.k << ", " << (sys.chart == Chart::Cartesian ? "cartesian" : "polar") << ", time " << sys.time
     << ", " << sys.size() << " variables\n";
  for (std::size_t i = 0; i < sys.size(); ++i) {
    os << monomial_name(sys.vars[i]) << "' =";
    if (sys.rhs[i].empty()) os << " 0";
    bool first = true;
    for (auto& [j, c] : sys.rhs[i]) {
      os << (first ? " " : " + ") << "(" << c.text() << ")*" << monomial_name(sys.vars[j]);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

bool killed_by_conditions(const MonomialIndex& y, unsigned k) {
  unsigned i = y[0], j = y[1], l = y[2], m = y[3];
  return (j + m >= k && i + l >= 1) || (j >= 1 && i + l >= 1) || j >= 2 || (j >= 1 && j + m >= k + 1);
}

namespace {

VariationalSystem restrict_to(const VariationalSystem& sys, const std::vector<MonomialIndex>& keep) {
  VariationalSystem r;
  r.k = sys.k;
  r.chart = sys.chart;
  r.time = sys.time;
  r.vars = keep;
  for (std::size_t i = 0; i < keep.size(); ++i) r.index[keep[i]] = i;
  r.rhs.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (auto& [j, c] : sys.rhs[sys.find(keep[i])]) {
      auto it = r.index.find(sys.vars[j]);
      if (it != r.index.end()) r.rhs[i].emplace(it->second, c);
    }
  return r;
}

}  // namespace

InvariantSubspace invariant_subspace(unsigned k) {
  if (k < 2) throw ValidationError("invariant_subspace needs k >= 2");
  std::map<unsigned, ParamPoly> extra;
  for (unsigned i = 2; i <= k; ++i) extra[i] = 0;
  for (unsigned i = k + 1; i <= 2 * k; ++i) extra[i] = u_symbol(i);
  DarbouxData data = polar_data(0, extra);
  InvariantSubspace W;
  W.k = k;
  W.full = build_polar_ve(data, 2 * k - 1);
  W.full_dim = W.full.size();
  for (std::size_t i = 0; i < W.full.size(); ++i) {
    const MonomialIndex& y = W.full.vars[i];
    if (!killed_by_conditions(y, k)) {
      W.surviving.push_back(y);
      if (y[0] + y[2] == 0) W.theta_only.push_back(y);
      continue;
    }
    for (auto& [j, c] : W.full.rhs[i])
      if (!killed_by_conditions(W.full.vars[j], k))
        throw ValidationError("invariant subspace not closed: " + monomial_name(y) + "' involves " + monomial_name(W.full.vars[j]));
  }
  W.reduced = restrict_to(W.full, W.surviving);
  std::set<MonomialIndex> th(W.theta_only.begin(), W.theta_only.end());
  for (auto& y : W.theta_only)
    for (auto& [j, c] : W.reduced.rhs[W.reduced.find(y)])
      if (!th.count(W.reduced.vars[j]))
        throw ValidationError("theta sector not closed: " + monomial_name(y) + "' involves " + monomial_name(W.reduced.vars[j]));
  W.theta_sector = restrict_to(W.reduced, W.theta_only);
  W.closed = true;
  Rational kk = static_cast<long>(k);
  W.stated_full_dim = (2 * kk + 3) * (kk + 4) * (2 * kk * kk + 11 * kk + 17) / 6;
  Rational prod = 4;
  for (unsigned s = 0; s <= k; ++s) {
    Rational ss = static_cast<long>(s);
    prod *= (7 * ss * ss * ss + 51 * ss * ss + 134 * ss + 114) / (7 * ss * ss * ss + 30 * ss * ss + 53 * ss + 24);
  }
  W.stated_w_dim = prod;
  return W;
}

}  // namespace hve
