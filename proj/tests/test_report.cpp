#include "doctest.h"
#include "hve/report.hpp"

using namespace hve;

TEST_CASE("polynomial text parses back") {
  ParamPoly b = ParamPoly::var("b"), u = ParamPoly::var("u3");
  std::vector<ParamPoly> cases{
      ParamPoly(),
      ParamPoly(Rational(-7, 3)),
      b.pow(4) + ParamPoly(Rational(920842425, 3482842)) * b.pow(2) - ParamPoly(5),
      ParamPoly(Scalar(Rational(1, 2), 3)) * b * u - ParamPoly(Scalar(0, -2)) * u.pow(2),
      ParamPoly(Scalar(Rational(-1, 2), -1)) + ParamPoly(Scalar(0, -3)) * b,
      ParamPoly(Scalar(0, 1)) - u.pow(3) * b.pow(2),
  };
  for (auto& p : cases) {
    CHECK(parse_param_poly(p.text()) == p);
    CHECK(parse_param_poly(p.text()).text() == p.text());
  }
}

TEST_CASE("report json round trips") {
  ParamPoly b = ParamPoly::var("b"), u = ParamPoly::var("u3");
  ObstructionReport r;
  r.order = 4;
  r.free = "d_4_5";
  r.conditions.push_back({b * ParamPoly(3) - ParamPoly(Scalar(1, 2)), u.pow(2), "closure"});
  r.conditions.push_back({ParamPoly(1), ParamPoly(Rational(-175)), "residue"});
  UPoly num(std::vector<ParamPoly>{u.pow(2), ParamPoly(Rational(1, 3)) * u});
  r.dilog.push_back({"y_0_0_0_1", RatFunc(num, 2, 1, 1)});
  r.dilog.push_back({"y_0_1_0_0", RatFunc(UPoly(ParamPoly(Rational(-2))), 0, 3, 0)});
  r.dilog.push_back({"y_0_0_1_0", RatFunc(UPoly(num), 0, 0, 0)});
  r.verdict = Verdict::FreeParameterConstraint;
  r.forced_values["d_3_4"] = ParamPoly(Rational(329672, 223));
  r.constraint = b.pow(2) + ParamPoly(4);
  std::string a = dump_json(to_json(r));
  ObstructionReport back = report_from_json(Json::parse(a));
  CHECK(dump_json(to_json(back)) == a);
  CHECK(back.dilog[0].coefficient == r.dilog[0].coefficient);
  CHECK(back.constraint == r.constraint);
  CHECK(back.forced_values == r.forced_values);
  CHECK(back.conditions[0].a == r.conditions[0].a);
  Json pj = poly_json(r.conditions[0].a);
  CHECK(pj["b"]["re"] == "3");
  CHECK(pj["1"]["im"] == "-2");
  Scalar s(Rational(-3, 4), 2);
  CHECK(scalar_from_json(scalar_json(s)) == s);
}
