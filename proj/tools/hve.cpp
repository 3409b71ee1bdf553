#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hve/report.hpp"

using namespace hve;

namespace {

struct Config {
  bool json = false;
  int jobs = 0;
  std::string cache_dir, output;
};

struct Out {
  std::ostringstream text;
  Json json;
};

void emit(const Config& cfg, const Out& o) {
  std::string body = cfg.json ? dump_json(o.json) + "\n" : o.text.str();
  if (cfg.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw ValidationError("cannot write " + cfg.output);
  f << body;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

// ---- basis

int cmd_basis(const Config& cfg, unsigned n, unsigned max) {
  if (n > max) throw ValidationError("n must lie in 0.." + std::to_string(max));
  const BasisPair& b = basis_pair(n);
  Out o;
  o.json = to_json(b);
  o.text << "n " << b.n << "  lambda " << rat_text(b.lambda) << "\n"
         << "P   = " << b.P.text() << "\n"
         << "eps = " << rat_text(b.eps) << "\n"
         << "W   = " << b.W.text() << "\n"
         << "Q   = " << b.Q.text() << "\n"
         << "P Q' - P' Q = " << rat_text(b.wronskian) << "/(t^2-1)^2\n"
         << "certified " << (b.certified ? "yes" : "no") << "\n";
  if (!cfg.cache_dir.empty()) {
    std::filesystem::create_directories(cfg.cache_dir);
    auto path = std::filesystem::path(cfg.cache_dir) / ("basis_" + std::to_string(n) + ".json");
    std::string fresh = dump_json(o.json);
    if (std::filesystem::exists(path)) {
      std::ifstream f(path);
      std::stringstream ss;
      ss << f.rdbuf();
      if (ss.str() != fresh) throw CertificationError("cached basis differs: " + path.string());
    } else {
      std::ofstream(path) << fresh;
    }
  }
  emit(cfg, o);
  return b.certified ? 0 : 4;
}

// ---- nondeg

Convention convention_from(const std::string& s) {
  if (s == "base") return Convention::Base;
  if (s == "raised") return Convention::Raised;
  throw ValidationError("convention must be base or raised");
}

int cmd_nondeg(const Config& cfg, unsigned n, unsigned kmin, unsigned kmax, const std::string& conv) {
  if (kmin > kmax) throw ValidationError("kmin must not exceed kmax");
  if (kmin < 1) throw ValidationError("kmin must be at least 1");
  Convention c = convention_from(conv);
  std::vector<GridCell> cells;
  for (unsigned k = kmin; k <= kmax; ++k) cells.push_back({n, k});
  Out o;
  o.json = Json::array();
  o.text << pad("n", 4) << pad("k", 4) << pad("convention", 12) << pad("verdict", 15) << "witness\n";
  for (auto& r : nondeg_grid(cells, c, cfg.jobs)) {
    o.json.push_back(to_json(r));
    o.text << pad(std::to_string(r.n), 4) << pad(std::to_string(r.k), 4) << pad(convention_text(r.convention), 12)
           << pad(verdict_text(r.verdict), 15) << r.witness.text() << "\n";
  }
  emit(cfg, o);
  return 0;
}

// ---- sequences

int cmd_sequence(const Config& cfg, const std::string& kind, unsigned count) {
  Out o;
  o.json = Json::object();
  o.json["kind"] = kind;
  if (kind == "S") {
    Json rows = Json::array();
    o.text << pad("k", 4) << pad("residue", 28) << "integral\n";
    for (unsigned k = 1; k <= count; ++k) {
      Rational a = s_sequence_lambda0(k), b = s_sequence_lambda0_integral(k);
      rows.push_back(Json{{"k", k}, {"residue", rat_text(a)}, {"integral", rat_text(b)}});
      o.text << pad(std::to_string(k), 4) << pad(rat_text(a), 28) << rat_text(b) << "\n";
    }
    o.json["rows"] = rows;
  } else if (kind == "S1" || kind == "S2") {
    bool one = kind == "S1";
    std::vector<Rational> v = one ? s1_table(count, cfg.jobs) : s2_table(count, cfg.jobs);
    Json rows = Json::array();
    o.text << pad("m", 5) << "value\n";
    for (unsigned i = 0; i < v.size(); ++i) {
      unsigned m = one ? 2 * (i + 1) : 2 * (i + 1) + 1;
      rows.push_back(Json{{"m", m}, {"value", rat_text(v[i])}});
      o.text << pad(std::to_string(m), 5) << rat_text(v[i]) << "\n";
    }
    o.json["rows"] = rows;
  } else if (kind == "recurrence-check") {
    std::vector<Rational> v = s1_table(count + 2, cfg.jobs);
    bool reference = recurrence_check(v, 1, s1_recurrence_reference());
    bool corrected = recurrence_check(v, 1, s1_recurrence_corrected());
    o.json["count"] = count;
    o.json["reference"] = reference;
    o.json["corrected"] = corrected;
    o.text << "S1 three-term recurrence, n = 1.." << count << "\n"
           << "reference  " << (reference ? "holds" : "fails") << "\n"
           << "corrected  " << (corrected ? "holds" : "fails") << "\n";
  } else {
    throw ValidationError("sequence kind must be S, S1, S2 or recurrence-check");
  }
  emit(cfg, o);
  return 0;
}

int cmd_axisym(const Config& cfg, unsigned nmax, unsigned kmax) {
  if (nmax < 1) throw ValidationError("nmax must be at least 1");
  Out o;
  o.json = Json::array();
  o.text << pad("n", 4) << pad("k", 4) << "coefficient\n";
  for (unsigned n = 1; n <= nmax; ++n)
    for (unsigned k = 1; k <= kmax; k += 2) {
      Rational c = axisym_coefficient(n, k);
      o.json.push_back(Json{{"n", n}, {"k", k}, {"coefficient", rat_text(c)}, {"integral", rat_text(axisym_integral(n, k))}});
      o.text << pad(std::to_string(n), 4) << pad(std::to_string(k), 4) << rat_text(c) << "\n";
    }
  emit(cfg, o);
  return 0;
}

// ---- variational equations

int cmd_dump_ve(const Config& cfg, const std::string& chart, unsigned n, unsigned k) {
  if (k < 1 || k > 6) throw ValidationError("k must lie in 1..6");
  VariationalSystem s;
  if (chart == "cartesian") {
    if (n < 1) throw ValidationError("the cartesian chart needs n >= 1");
    DarbouxData d = cartesian_data(n);
    while (d.cartesian_order() < k + 1) d = euler_reduce(d, d.cartesian_order());
    s = build_cartesian_ve(d, k);
  } else if (chart == "polar") {
    std::map<unsigned, ParamPoly> extra;
    for (unsigned i = 3; i <= k + 1; ++i) extra[i] = u_symbol(i);
    s = build_polar_ve(polar_data(n, extra), k);
  } else {
    throw ValidationError("chart must be cartesian or polar");
  }
  Out o;
  o.text << dump(s);
  o.json = Json{{"chart", chart}, {"n", n}, {"k", k}, {"size", s.size()}, {"dump", dump(s)}};
  emit(cfg, o);
  return 0;
}

int cmd_analyze(const Config& cfg, unsigned n, unsigned kmax) {
  if (n > 12) throw ValidationError("n must lie in 0..12");
  if (kmax < 2 || kmax > 7) throw ValidationError("kmax must lie in 2..7");
  auto progress = [](const ObstructionReport& r) {
    std::cerr << "order " << r.order << ": " << verdict_text(r.verdict) << std::endl;
  };
  AnalysisResult res = analyze_eigenvalue(n, kmax, cfg.jobs, progress);
  Out o;
  o.json = to_json(res);
  o.text << text_report(res);
  emit(cfg, o);
  return res.unsupported ? 3 : 0;
}

int cmd_prop1(const Config& cfg, unsigned k) {
  if (k < 2 || k > 6) throw ValidationError("k must lie in 2..6");
  DilogObstruction r = prop1_pipeline(k);
  Out o;
  o.json = to_json(r);
  o.text << "k " << k << "  order " << 2 * k - 1 << "\n"
         << "dilog coefficient of y_0_0_0_1: " << r.dilog_coefficient.text() << "\n"
         << "residual zero " << r.residual_ok << "  y_k closed form " << r.y_k_matches << "  y_1 closed form "
         << r.y_1_matches << "  E certified " << r.e_certified << "  top term abelian " << r.top_abelian << "\n"
         << text_report(r.report);
  emit(cfg, o);
  bool ok = r.residual_ok && r.y_k_matches && r.e_certified && (k != 2 || r.y_1_matches);
  return ok ? 0 : 4;
}

int cmd_polar_ve2(const Config& cfg, const std::string& u3) {
  PolarVe2 r = polar_ve2_galois(parse_param_poly(u3));
  Out o;
  o.json = to_json(r);
  o.text << "u3 = " << u3 << "\n"
         << "theta2 = " << r.theta2.text() << "\n"
         << "Q2 term present " << r.c2c3_matches << "  r2 residue zero " << r.r2_residue_ok << "  Lambda term "
         << r.lambda_term << "\n"
         << "group " << (r.group_dim == 2 ? "C^2" : "C") << "\n";
  emit(cfg, o);
  return r.c2c3_matches && r.r2_residue_ok ? 0 : 4;
}

int cmd_degenerate(const Config& cfg, const std::string& u2, unsigned kmax) {
  if (kmax < 1 || kmax > 6) throw ValidationError("kmax must lie in 1..6");
  DegenerateReport r = degenerate_point_analysis(parse_param_poly(u2), kmax);
  Out o;
  o.json = to_json(r);
  o.text << "u2 = " << r.u2.text() << "  kmax " << r.kmax << "\n";
  if (r.known_obstruction) o.text << "u2 != 0: non-Abelian at order 1\n";
  for (std::size_t i = 0; i < r.in_laurent_log.size(); ++i)
    o.text << "order " << i + 1 << ": " << (r.in_laurent_log[i] ? "C[t, 1/t, log t]" : "outside C[t, 1/t, log t]") << "\n";
  o.text << "verdict " << r.verdict << "\n";
  emit(cfg, o);
  return 0;
}

int cmd_match_family(const Config& cfg, const std::string& re, const std::string& im) {
  Scalar d(rat_parse(re), rat_parse(im));
  FamilyMatch r = family_match_order3(d);
  Out o;
  o.json = to_json(r);
  o.text << "d = " << d.text() << "\n"
         << "branch " << r.branch << "  certified " << r.certified << "\n"
         << "(4 + d^2) d^2 = " << r.discriminant.text() << "\n";
  if (!r.certificate.empty()) o.text << r.certificate << "\n";
  if (!r.variant.empty()) o.text << "variant " << r.variant << "\n";
  o.text << "numeric residual " << std::setprecision(3) << r.numeric_residual << "\n";
  emit(cfg, o);
  return r.certified ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher variational equations of homogeneous planar potentials"};
  app.require_subcommand(1);
  Config cfg;
  app.add_flag("--json", cfg.json, "JSON report");
  app.add_option("--jobs", cfg.jobs, "worker threads (0 = runtime default)");
  app.add_option("--cache-dir", cfg.cache_dir, "directory for basis reports");
  app.add_option("-o,--output", cfg.output, "write the report to a file");

  std::function<int()> run;

  unsigned n = 0, max = 12, kmin = 0, kmax = 0, k = 0, count = 10, nmax = 6;
  std::string conv = "base", kind, chart, poly = "u3", u2, re, im = "0";

  auto* basis = app.add_subcommand("basis", "P_n, eps_n, Q_n with certification");
  basis->add_option("n", n)->required();
  basis->add_option("--max", max);
  basis->callback([&] { run = [&] { return cmd_basis(cfg, n, max); }; });

  auto* nondeg = app.add_subcommand("nondeg", "non-degeneracy verdicts");
  nondeg->add_option("n", n)->required();
  nondeg->add_option("kmin", kmin)->required();
  nondeg->add_option("kmax", kmax)->required();
  nondeg->add_option("--convention", conv, "base or raised");
  nondeg->callback([&] { run = [&] { return cmd_nondeg(cfg, n, kmin, kmax, conv); }; });

  auto* seq = app.add_subcommand("sequence", "S, S1, S2 tables and the S1 recurrence");
  seq->add_option("kind", kind, "S, S1, S2 or recurrence-check")->required();
  seq->add_option("count", count);
  seq->callback([&] { run = [&] { return cmd_sequence(cfg, kind, count); }; });

  auto* axi = app.add_subcommand("axisym", "axisymmetric criterion coefficients");
  unsigned akmax = 9;
  axi->add_option("nmax", nmax);
  axi->add_option("kmax", akmax);
  axi->callback([&] { run = [&] { return cmd_axisym(cfg, nmax, akmax); }; });

  auto* dve = app.add_subcommand("dump-ve", "variational system listing");
  dve->add_option("chart", chart, "cartesian or polar")->required();
  dve->add_option("n", n)->required();
  dve->add_option("k", k)->required();
  dve->callback([&] { run = [&] { return cmd_dump_ve(cfg, chart, n, k); }; });

  auto* an = app.add_subcommand("analyze", "obstruction reports through order kmax");
  an->add_option("n", n)->required();
  an->add_option("kmax", kmax)->required();
  an->callback([&] { run = [&] { return cmd_analyze(cfg, n, kmax); }; });

  auto* p1 = app.add_subcommand("prop1", "dilogarithm obstruction at order 2k-1");
  p1->add_option("k", k)->required();
  p1->callback([&] { run = [&] { return cmd_prop1(cfg, k); }; });

  auto* pv = app.add_subcommand("polar-ve2", "order 2 polar solution and group");
  pv->add_option("u3", poly, "value of U'''(0), polynomial text");
  pv->callback([&] { run = [&] { return cmd_polar_ve2(cfg, poly); }; });

  auto* dg = app.add_subcommand("degenerate", "degenerate Darboux point");
  dg->add_option("u2", u2, "value of U''(0)")->required();
  dg->add_option("kmax", kmax)->required();
  dg->callback([&] { run = [&] { return cmd_degenerate(cfg, u2, kmax); }; });

  auto* mf = app.add_subcommand("match-family", "order 3 family match at lambda = 2");
  mf->add_option("re", re, "real part of d")->required();
  mf->add_option("--im", im, "imaginary part of d");
  mf->callback([&] { run = [&] { return cmd_match_family(cfg, re, im); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 4;
  } catch (const BasisError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 4;
  }
}
