#pragma once
#include <string>

#include "json.hpp"
#include "hve/nondeg.hpp"
#include "hve/solve.hpp"

namespace hve {

using Json = nlohmann::ordered_json;

Json scalar_json(const Scalar& s);  // {"re", "im"}
Scalar scalar_from_json(const Json& j);

// {"b^2*u3": scalar, "1": scalar}
Json poly_json(const ParamPoly& p);
ParamPoly poly_from_json(const Json& j);
// {"num": {degree: poly}, "den": {"t-1": a, "t+1": b, "t": c}}
Json ratfunc_json(const RatFunc& f);
RatFunc ratfunc_from_json(const Json& j);

Json to_json(const BasisPair& b);
Json to_json(const NonDegReport& r);
Json to_json(const ObstructionReport& r);
ObstructionReport report_from_json(const Json& j);
Json to_json(const AnalysisResult& r);
Json to_json(const DilogObstruction& r);
Json to_json(const PolarVe2& r);
Json to_json(const DegenerateReport& r);
Json to_json(const FamilyMatch& r);

// fixed 2-space layout
std::string dump_json(const Json& j);

std::string text_report(const ObstructionReport& r);
std::string text_report(const AnalysisResult& r);

// parses the ParamPoly text format ("3/2*b^2 - u3 + (1/2+3*I)")
ParamPoly parse_param_poly(const std::string& s);

}  // namespace hve
