#pragma once
#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hve/varform.hpp"

namespace hve {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- triangular solving

struct SolutionSet {
  std::map<MonomialIndex, TowerElement> value;
  std::map<MonomialIndex, NewTranscendentalNeeded> failures;
  bool complete(const VariationalSystem& sys) const { return value.size() == sys.size(); }
};

// y_i = int rhs_i + seed_i in dependency order; throws ValidationError if the system has a cycle
SolutionSet solve_triangular(const VariationalSystem& sys, const std::map<MonomialIndex, TowerElement>& seeds = {});
// every known variable satisfies its equation when its references are known
bool residual_zero(const VariationalSystem& sys, const SolutionSet& s);

// ---- jets of a particular solution

// y'' = damping y' + stiffness y, with a certified basis
struct ComponentBasis {
  RatFunc damping, stiffness;
  TowerElement y1, y2;
  RatFunc wronskian;  // y1 y2' - y1' y2
};

struct JetSystem {
  unsigned K = 0;
  Chart chart = Chart::Cartesian;
  std::array<JetPoly, 2> nonlinear;  // acceleration minus its linear part
  std::array<ComponentBasis, 2> basis;
};

JetSystem cartesian_jet_system(const DarbouxData& data, unsigned K);
JetSystem polar_jet_system(const DarbouxData& data, unsigned K);
// orbit r = t, theta = 0 of a potential with U(0) = U'(0) = 0; u[2..K+1] from data.u
JetSystem degenerate_jet_system(const DarbouxData& data, unsigned K);

enum class JetMode { Tower, Closed };

struct JetOrder {
  unsigned order = 0;
  std::array<TowerElement, 2> source;
  std::array<std::array<TowerElement, 2>, 2> integrand;  // [component][y1 or y2 weight]
  std::array<TowerElement, 2> x;
  std::vector<ParamPoly> conditions;               // closed mode
  std::optional<NewTranscendentalNeeded> failure;  // tower mode
  bool exact() const { return conditions.empty() && !failure; }
};

struct Jets {
  std::vector<JetOrder> orders;  // orders[j-1] holds order j
  unsigned reached() const;      // highest order whose predecessors are all exact
  const std::array<TowerElement, 2>& x(unsigned j) const { return orders.at(j - 1).x; }
};

struct JetOptions {
  JetMode mode = JetMode::Closed;
  int jobs = 0;
  std::map<unsigned, std::array<TowerElement, 2>> offsets;  // homogeneous solutions added per order
};

// stops after the first order that is not exact
Jets solve_jets(const JetSystem& sys, const std::array<TowerElement, 2>& first, unsigned upto, const JetOptions& opt = {});
void extend_jets(const JetSystem& sys, Jets& j, unsigned upto, const JetOptions& opt = {});
// [eps^N] of the nonlinear part along the known lower jets
std::array<TowerElement, 2> jet_sources(const JetSystem& sys, const Jets& j, unsigned N);
// substitutes a parameter everywhere, dropping conditions that vanish
Jets substitute(const Jets& j, SymId s, const ParamPoly& v);
// certifies x'' = damping x' + stiffness x + [eps^j] N(X) for every exact order
bool certify_jets(const JetSystem& sys, const Jets& j);
// y_m = [eps^k] m(X(eps))
SolutionSet solution_from_jets(const VariationalSystem& sys, const Jets& j);

// ---- obstruction reports

enum class Verdict { ForcedValue, Inconsistent, Unconstrained, FreeParameterConstraint };
const char* verdict_text(Verdict v);

// a * x + c = 0 in the free derivative x
struct AffineCondition {
  ParamPoly a, c;
  std::string route;  // "closure", "residue" or "dilog"
};

struct DilogFlag {
  std::string variable;
  RatFunc coefficient;
};

struct ObstructionReport {
  unsigned order = 0;
  std::string free;  // name of the free derivative
  std::vector<AffineCondition> conditions;
  std::vector<DilogFlag> dilog;
  Verdict verdict = Verdict::Unconstrained;
  std::map<std::string, ParamPoly> forced_values;
  std::optional<ParamPoly> constraint;  // on the remaining parameters
};

// splits each condition polynomial by monomials in `family` and reads it as affine in x
std::vector<AffineCondition> affine_conditions(const std::vector<ParamPoly>& polys, SymId x,
                                               const std::vector<SymId>& family, const std::string& route);
// throws Unsupported when x has a non-constant coefficient only
ObstructionReport resolve(unsigned order, SymId x, std::vector<AffineCondition> conditions);
// dilog coefficient p(x) as conditions: kappa x^m forces 0, otherwise its squarefree part
ObstructionReport resolve_dilog(unsigned order, SymId x, const ParamPoly& p);

// gcd over Q(i) of polynomials in one symbol, monic
ParamPoly univariate_gcd(const std::vector<ParamPoly>& ps, SymId s);

// ---- eigenvalue analysis

struct AnalysisResult {
  unsigned n = 0;
  Rational lambda;
  unsigned kmax = 0;
  std::string family;  // "full" or "normal"
  std::vector<ObstructionReport> reports;
  DarbouxData data;                             // forced values substituted
  std::map<unsigned, ParamPoly> theta_series;   // coefficient of theta^m in U
  std::optional<std::string> unsupported;       // set when the run stopped early
};

// n = 0 runs the polar chain (order 2 group, Prop-1 orders, single sources); n >= 1 the Cartesian route
// called once per finished order
using Progress = std::function<void(const ObstructionReport&)>;
AnalysisResult analyze_eigenvalue(unsigned n, unsigned kmax, int jobs = 0, const Progress& progress = {});
AnalysisResult analyze_cartesian(unsigned n, unsigned kmax, int jobs = 0, const Progress& progress = {});
// order-2 verdict on u3 from the polar chart for any n
ObstructionReport polar_order2(unsigned n, int jobs = 0);

// ---- the lambda = -1 chain

struct DilogObstruction {
  unsigned k = 0;
  ObstructionReport report;
  SolutionSet theta;         // solution on the theta sector
  RatFunc dilog_coefficient; // of DL in y_{0,0,0,1}
  bool residual_ok = false;
  bool y_k_matches = false;   // y_{0,0,0,k} = -(2u/(k-1)!)(t A + Lambda/2)
  bool y_1_matches = false;   // against the closed form modulo span{1, t}
  bool e_certified = false;   // E'' equals the source
  bool top_abelian = false;   // u_{2k} part of y_1 in C(t)[A, Lambda]
};

DilogObstruction prop1_pipeline(unsigned k);
// (t+1)(L1+1)L2 - ((2 ln2 + 1)t - 1)L1 + 2t DL
TowerElement dilog_closed_form();

struct PolarVe2 {
  Jets jets;
  TowerElement theta2;
  bool c2c3_matches = false;
  bool r2_residue_ok = false;
  bool lambda_term = false;  // Lambda occurs in theta2 through u3
  unsigned group_dim = 0;    // dimension of the order-2 group, C or C^2
  ObstructionReport report;
};
PolarVe2 polar_ve2_galois(const ParamPoly& u3);
// (3/32)(t^2-1)^2 A - (3/32) t^3, a primitive of (t^2-1) Q2 up to a constant
TowerElement q2_weight_primitive();

// order-k source 2 u_{k+1} theta1^k/(k!(t^2-1)) integrates inside C(t)[A, Lambda]
struct SingleSource {
  unsigned k = 0;
  TowerElement theta_k;
  bool abelian = false;
  ObstructionReport report;
};
SingleSource single_source_check(unsigned k);

// ---- degenerate Darboux point

struct DegenerateReport {
  ParamPoly u2;
  unsigned kmax = 0;
  bool known_obstruction = false;           // u2 != 0: NonAbelian at order 1
  std::vector<bool> in_laurent_log;  // per order, jets in C[t, 1/t, log t]
  std::string verdict;          // "Abelian" or "NonAbelian"
};
DegenerateReport degenerate_point_analysis(const ParamPoly& u2, unsigned kmax);

// ---- order-3 family match at lambda = 2

struct FamilyMatch {
  Scalar d;
  std::string branch;    // "two-center" or "hietarinta"
  bool certified = false;
  Scalar discriminant;   // (4 + d^2) d^2
  std::string certificate;
  double numeric_residual = 0;
  std::string variant;   // which Hietarinta sign convention matched
};
FamilyMatch family_match_order3(const Scalar& d);

// (4 + d^2) x^2 - (4 + d^2) x + 1 in x = cos^2
ParamPoly two_center_quadratic(const Scalar& d);
// exact D[a][b] of the rotated two-center potential through order N
std::map<std::pair<unsigned, unsigned>, Scalar> two_center_jet(const Rational& c, const Rational& s, unsigned N);

// lambda = 0: forced table through order N against 1/q1
bool lambda0_matches_inverse(unsigned N);

}  // namespace hve
