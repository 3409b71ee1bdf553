#pragma once
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hve/basis.hpp"

namespace hve {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Chart { Cartesian, Polar };

// jet data at the normalized Darboux point (1, 0), with V(c) = 1 and multiplier -1
struct DarbouxData {
  unsigned n = 0;
  Rational lambda;
  Chart chart = Chart::Cartesian;
  // Cartesian: D[(a, b)] = d^(a+b) V / dq1^a dq2^b at (1, 0)
  std::map<std::pair<unsigned, unsigned>, ParamPoly> D;
  // Polar: u[i] = U^(i)(0), V = U(theta)/r
  std::map<unsigned, ParamPoly> u;

  bool has(unsigned a, unsigned b) const { return D.count({a, b}) > 0; }
  const ParamPoly& d(unsigned a, unsigned b) const;
  // highest m with every entry of order <= m present
  unsigned cartesian_order() const;
  unsigned polar_order() const;
};

// order <= 2 data: V(c + q) = 1 - q1 + q1^2 + lambda q2^2/2 + O(q^3)
DarbouxData cartesian_data(unsigned n);
// U(0) = 1, U'(0) = 0, U''(0) = lambda + 1; further u[i] from `extra`
DarbouxData polar_data(unsigned n, const std::map<unsigned, ParamPoly>& extra = {});

// name of the free order-(k+1) derivative d^(k+1)V/dq2^(k+1)
std::string free_derivative_name(unsigned k);  // "d_2_3"
ParamPoly free_derivative(unsigned k);

// throws ValidationError naming the violated relation
void check_euler(const DarbouxData& data);
// fill order k+1 from order k via D[a+1][b] = -(a+b+1) D[a][b]; D[0][k+1] stays free unless present
DarbouxData euler_reduce(const DarbouxData& data, unsigned k);

// truncated power series in one variable with ParamPoly coefficients
using Series = std::vector<ParamPoly>;
Series series_mul(const Series& a, const Series& b, unsigned N);
Series series_compose(const Series& f, const Series& g, unsigned N);  // f(g), g[0] = 0

// U^(m)(0) for m <= N from the normal-direction jet D[0][m]
std::map<unsigned, ParamPoly> polar_from_cartesian(const DarbouxData& data, unsigned N);
// D[0][m] for m <= N from u
std::map<unsigned, ParamPoly> normal_jet_from_polar(const std::map<unsigned, ParamPoly>& u, unsigned N);
// full Cartesian table through order N from a polar one
DarbouxData cartesian_from_polar(const DarbouxData& polar, unsigned N);

// exponents of (x1', x2', x1, x2); in polar form (r', theta', r, theta)
using MonomialIndex = std::array<unsigned, 4>;
unsigned total_degree(const MonomialIndex& m);
std::string monomial_name(const MonomialIndex& m);  // y_1_0_0_2

// truncated polynomial in the four variables with RatFunc coefficients
class JetPoly {
 public:
  JetPoly() = default;
  explicit JetPoly(unsigned K) : K_(K) {}
  static JetPoly variable(unsigned K, unsigned which, const RatFunc& c = RatFunc(1));

  unsigned K() const { return K_; }
  const std::map<MonomialIndex, RatFunc>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  RatFunc coeff(const MonomialIndex& m) const;
  void add(const MonomialIndex& m, const RatFunc& c);

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator*(const JetPoly& a, const RatFunc& r);
  friend JetPoly operator*(const RatFunc& r, const JetPoly& a) { return a * r; }
  JetPoly pow(unsigned e) const;
  // sum_j c[j] x^j with x without constant term
  static JetPoly series(const JetPoly& x, const std::vector<RatFunc>& c);
  JetPoly times_monomial(const MonomialIndex& m, const RatFunc& c) const;
  JetPoly subs_param(SymId s, const ParamPoly& v) const;

 private:
  unsigned K_ = 0;
  std::map<MonomialIndex, RatFunc> t_;
};

// second derivatives (in t) of the two position variables, truncated at order K
std::array<JetPoly, 2> cartesian_acceleration(const DarbouxData& data, unsigned K);
std::array<JetPoly, 2> polar_acceleration(const DarbouxData& data, unsigned K);

// certifies phi = 1/(t^2-1), d/dtau = -(t^2-1)^2/sqrt2 d/dt: 1/2 phi_dot^2 = 1/phi + 1,
// phi_ddot = -phi^-2, and the order-1 equation becoming 1/2 (t^2-1) y'' + 2 t y' - lambda y
bool certify_time_change();

struct VariationalSystem {
  unsigned k = 0;
  Chart chart = Chart::Cartesian;
  std::string time = "t";
  std::vector<MonomialIndex> vars;
  std::map<MonomialIndex, std::size_t> index;
  // rhs[i]: derivative of vars[i] as sum of coefficient * vars[j]
  std::vector<std::map<std::size_t, RatFunc>> rhs;

  std::size_t size() const { return vars.size(); }
  std::size_t find(const MonomialIndex& m) const;  // throws if absent
};

// all monomial indices of total degree 1..k, by degree then lexicographically descending
std::vector<MonomialIndex> monomials_up_to(unsigned k);
VariationalSystem linearize(const std::array<JetPoly, 2>& acc, unsigned k, Chart chart);
// throws ValidationError if a variable of degree d references one of degree < d
void check_block_triangular(const VariationalSystem& sys);

// derivative table must be complete through order k+1
VariationalSystem build_cartesian_ve(const DarbouxData& data, unsigned k);
// u populated through order k+1
VariationalSystem build_polar_ve(const DarbouxData& data, unsigned k);

std::string dump(const VariationalSystem& sys);

struct InvariantSubspace {
  unsigned k = 0;  // system order 2k-1
  VariationalSystem full;
  std::vector<MonomialIndex> surviving;   // W
  std::vector<MonomialIndex> theta_only;  // W' (i + l = 0)
  VariationalSystem reduced;              // on W
  VariationalSystem theta_sector;         // on W'
  bool closed = false;
  std::size_t full_dim = 0;
  Rational stated_full_dim;  // (1/6)(2k+3)(k+4)(2k^2+11k+17)
  Rational stated_w_dim;     // 4 prod_{s=0}^k (7s^3+51s^2+134s+114)/(7s^3+30s^2+53s+24)
};

// y_{i,j,l,m} = 0 when (j+m >= k and i+l >= 1) or (j >= 1 and i+l >= 1) or j >= 2 or (j >= 1 and j+m >= k+1)
bool killed_by_conditions(const MonomialIndex& m, unsigned k);
// polar data with u_1..u_k = 0 and symbols u_{k+1}..u_{2k}; throws ValidationError if closure fails
InvariantSubspace invariant_subspace(unsigned k);
// symbol for U^(i)(0)
ParamPoly u_symbol(unsigned i);

}  // namespace hve
