#include "hve/report.hpp"

#include <sstream>
#include <stdexcept>

namespace hve {

Json scalar_json(const Scalar& s) { return Json{{"re", rat_text(s.re())}, {"im", rat_text(s.im())}}; }

Scalar scalar_from_json(const Json& j) {
  return Scalar(rat_parse(j.at("re").get<std::string>()), rat_parse(j.at("im").get<std::string>()));
}

Json to_json(const BasisPair& b) {
  return Json{{"n", b.n},
              {"lambda", rat_text(b.lambda)},
              {"P", b.P.text()},
              {"eps", rat_text(b.eps)},
              {"W", b.W.text()},
              {"Q", b.Q.text()},
              {"wronskian", rat_text(b.wronskian) + "/(t^2-1)^2"},
              {"certified", b.certified}};
}

Json to_json(const NonDegReport& r) {
  return Json{{"n", r.n},
              {"k", r.k},
              {"convention", convention_text(r.convention)},
              {"integrand", "(t^2-1)^" + std::to_string(r.base) + " Q^" + std::to_string(r.power)},
              {"witness", r.witness.text()},
              {"verdict", verdict_text(r.verdict)}};
}

namespace {

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::ForcedValue, Verdict::Inconsistent, Verdict::Unconstrained, Verdict::FreeParameterConstraint})
    if (s == verdict_text(v)) return v;
  throw std::invalid_argument("unknown verdict " + s);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(' '), b = s.find_last_not_of(' ');
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool wrapped(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
    if (depth == 0 && i + 1 < s.size()) return false;
  }
  return true;
}

ParamPoly parse_term(const std::string& t);

// "(1/2-3*I)"
ParamPoly parse_compact(const std::string& s) {
  ParamPoly r;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i)
    if (i == s.size() || s[i] == '+' || s[i] == '-') {
      std::string piece = s.substr(start, i - start);
      if (piece[0] == '+') piece = piece.substr(1);
      r += parse_term(piece);
      start = i;
    }
  return r;
}

ParamPoly parse_factor(const std::string& f) {
  if (wrapped(f)) {
    std::string inner = f.substr(1, f.size() - 2);
    return inner.find(' ') == std::string::npos ? parse_compact(inner) : parse_param_poly(inner);
  }
  if (f == "I") return ParamPoly(Scalar(0, 1));
  if (std::isdigit(static_cast<unsigned char>(f[0]))) return ParamPoly(rat_parse(f));
  std::size_t c = f.find('^');
  if (c == std::string::npos) return ParamPoly::var(f);
  return ParamPoly::var(f.substr(0, c), static_cast<unsigned>(std::stoul(f.substr(c + 1))));
}

ParamPoly parse_term(const std::string& t0) {
  if (!t0.empty() && t0[0] == '-') return -parse_term(t0.substr(1));
  const std::string& t = t0;
  ParamPoly r(1);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i < t.size()) depth += t[i] == '(' ? 1 : t[i] == ')' ? -1 : 0;
    if (i == t.size() || (t[i] == '*' && depth == 0)) {
      std::string f = t.substr(start, i - start);
      // (x)^e
      std::size_t caret = f.rfind(")^");
      if (!f.empty() && f[0] == '(' && caret != std::string::npos && wrapped(f.substr(0, caret + 1)))
        r *= parse_factor(f.substr(0, caret + 1)).pow(static_cast<unsigned>(std::stoul(f.substr(caret + 2))));
      else
        r *= parse_factor(f);
      start = i + 1;
    }
  }
  return r;
}

}  // namespace

Json poly_json(const ParamPoly& p) {
  Json j = Json::object();
  for (auto& [m, c] : p.canonical_terms()) j[m.empty() ? "1" : mono_text(m)] = scalar_json(c);
  return j;
}

ParamPoly poly_from_json(const Json& j) {
  ParamPoly r;
  for (auto& [k, v] : j.items()) r += (k == "1" ? ParamPoly(1) : parse_term(k)) * scalar_from_json(v);
  return r;
}

Json ratfunc_json(const RatFunc& f) {
  Json num = Json::object();
  for (int i = 0; i <= f.num().degree(); ++i)
    if (!f.num()[i].is_zero()) num[std::to_string(i)] = poly_json(f.num()[i]);
  return Json{{"num", num},
              {"den", Json{{"t-1", f.exp(Root::Plus1)}, {"t+1", f.exp(Root::Minus1)}, {"t", f.exp(Root::Zero)}}}};
}

RatFunc ratfunc_from_json(const Json& j) {
  std::vector<ParamPoly> c;
  for (auto& [k, v] : j.at("num").items()) {
    unsigned e = static_cast<unsigned>(std::stoul(k));
    if (c.size() <= e) c.resize(e + 1);
    c[e] = poly_from_json(v);
  }
  const Json& d = j.at("den");
  return RatFunc(UPoly(c), d.at("t-1").get<unsigned>(), d.at("t+1").get<unsigned>(), d.at("t").get<unsigned>());
}

Json to_json(const ObstructionReport& r) {
  Json conds = Json::array(), dl = Json::array(), forced = Json::object();
  for (auto& c : r.conditions) conds.push_back(Json{{"a", poly_json(c.a)}, {"c", poly_json(c.c)}, {"route", c.route}});
  for (auto& d : r.dilog) dl.push_back(Json{{"variable", d.variable}, {"coeff", ratfunc_json(d.coefficient)}});
  for (auto& [k, v] : r.forced_values) forced[k] = poly_json(v);
  Json j{{"order", r.order}, {"free", r.free}, {"conditions", conds}, {"dilog", dl}, {"verdict", verdict_text(r.verdict)},
         {"forced_values", forced}};
  if (r.constraint) j["constraint"] = poly_json(*r.constraint);
  return j;
}

ParamPoly parse_param_poly(const std::string& s0) {
  std::string s = trim(s0);
  if (s.empty() || s == "0") return ParamPoly();
  ParamPoly r;
  int depth = 0;
  std::size_t start = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    start = 1;
  }
  for (std::size_t i = start; i <= s.size(); ++i) {
    if (i < s.size()) depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
    bool sep = i + 2 < s.size() && depth == 0 && s[i] == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ';
    if (i == s.size() || sep) {
      ParamPoly t = parse_term(s.substr(start, i - start));
      r += neg ? -t : t;
      if (sep) {
        neg = s[i + 1] == '-';
        start = i + 3;
        i += 2;
      }
    }
  }
  return r;
}

ObstructionReport report_from_json(const Json& j) {
  ObstructionReport r;
  r.order = j.at("order").get<unsigned>();
  r.free = j.at("free").get<std::string>();
  for (auto& c : j.at("conditions"))
    r.conditions.push_back({poly_from_json(c.at("a")), poly_from_json(c.at("c")), c.at("route").get<std::string>()});
  for (auto& d : j.at("dilog")) r.dilog.push_back({d.at("variable").get<std::string>(), ratfunc_from_json(d.at("coeff"))});
  r.verdict = verdict_from(j.at("verdict"));
  for (auto& [k, v] : j.at("forced_values").items()) r.forced_values[k] = poly_from_json(v);
  if (j.contains("constraint")) r.constraint = poly_from_json(j.at("constraint"));
  return r;
}

Json to_json(const AnalysisResult& r) {
  Json reps = Json::array(), th = Json::object();
  for (auto& x : r.reports) reps.push_back(to_json(x));
  for (auto& [m, v] : r.theta_series) th[std::to_string(m)] = poly_json(v);
  Json j{{"n", r.n}, {"lambda", rat_text(r.lambda)}, {"kmax", r.kmax}, {"family", r.family}, {"reports", reps}, {"theta_series", th}};
  if (r.unsupported) j["unsupported"] = *r.unsupported;
  return j;
}

Json to_json(const DilogObstruction& r) {
  return Json{{"k", r.k},
              {"order", 2 * r.k - 1},
              {"report", to_json(r.report)},
              {"dilog_coefficient", r.dilog_coefficient.text()},
              {"y_0_0_0_1", r.theta.value.at({0, 0, 0, 1}).text()},
              {"y_0_0_0_k", r.theta.value.at({0, 0, 0, r.k}).text()},
              {"residual_zero", r.residual_ok},
              {"y_k_matches", r.y_k_matches},
              {"y_1_matches", r.y_1_matches},
              {"closed_form_certified", r.e_certified},
              {"top_term_abelian", r.top_abelian}};
}

Json to_json(const PolarVe2& r) {
  return Json{{"group", r.group_dim == 2 ? "C^2" : "C"},
              {"theta2", r.theta2.text()},
              {"q2_term_present", r.c2c3_matches},
              {"r2_residue_zero", r.r2_residue_ok},
              {"lambda_term", r.lambda_term},
              {"report", to_json(r.report)}};
}

Json to_json(const DegenerateReport& r) {
  Json orders = Json::array();
  for (bool b : r.in_laurent_log) orders.push_back(b);
  return Json{{"u2", r.u2.text()}, {"kmax", r.kmax}, {"known_obstruction", r.known_obstruction}, {"orders_in_laurent_log", orders}, {"verdict", r.verdict}};
}

Json to_json(const FamilyMatch& r) {
  return Json{{"d", scalar_json(r.d)},
              {"branch", r.branch},
              {"certified", r.certified},
              {"discriminant", scalar_json(r.discriminant)},
              {"certificate", r.certificate},
              {"numeric_residual", r.numeric_residual},
              {"variant", r.variant}};
}

std::string dump_json(const Json& j) { return j.dump(2); }

std::string text_report(const ObstructionReport& r) {
  std::ostringstream os;
  os << "order " << r.order << "  free " << r.free << "  verdict " << verdict_text(r.verdict) << "\n";
  for (auto& c : r.conditions) os << "  [" << c.route << "] (" << c.a.text() << ")*x + (" << c.c.text() << ") = 0\n";
  for (auto& d : r.dilog) os << "  dilog in " << d.variable << ": " << d.coefficient.text() << "\n";
  if (r.verdict == Verdict::Unconstrained) os << "  " << r.free << " free\n";
  for (auto& [k, v] : r.forced_values) os << "  " << k << " = " << v.text() << "\n";
  if (r.constraint) os << "  constraint " << r.constraint->text() << " = 0\n";
  return os.str();
}

std::string text_report(const AnalysisResult& r) {
  std::ostringstream os;
  os << "n " << r.n << "  lambda " << rat_text(r.lambda) << "  kmax " << r.kmax << "  family " << r.family << "\n";
  for (auto& x : r.reports) os << text_report(x);
  os << "U(theta) = ";
  bool first = true;
  for (auto& [m, v] : r.theta_series) {
    if (v.is_zero()) continue;
    os << (first ? "" : " + ") << "(" << v.text() << ")*theta^" << m;
    first = false;
  }
  os << " + ...\n";
  if (r.unsupported) os << "unsupported: " << *r.unsupported << "\n";
  return os.str();
}

}  // namespace hve
