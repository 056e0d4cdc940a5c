#include "genss/cli/report.hpp"

namespace genss::cli {

json complex_json(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

json scalar_json(const GenScalar& x) {
  const AsymptoticClass cls = classify(x);
  json j = {{"text", render(x)}, {"latex", render(x, Format::Latex)}, {"class", to_string(cls.tag)}};
  j["standard_part"] = cls.tag == AsymptoticClass::Tag::Finite ? complex_json(cls.standard_part) : json(nullptr);
  return j;
}

json coefficients_json(const std::vector<GenScalar>& c) {
  json out = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json j = scalar_json(c[i]);
    j["index"] = i;
    out.push_back(std::move(j));
  }
  return out;
}

json solvability_json(const Solvability& s) {
  json j;
  j["solvable"] = s.solvable ? json(*s.solvable) : json(nullptr);
  j["diagnosis"] = s.diagnosis;
  j["offending_order"] = s.offending_order ? json(*s.offending_order) : json(nullptr);
  j["jump"] = complex_json(s.jump);
  return j;
}

json verify_json(const VerifyReport& r) {
  json pts = json::array();
  for (const SweepPoint& p : r.points) {
    pts.push_back({{"eps", p.eps},
                   {"max_weighted_error", p.max_weighted_error},
                   {"max_abs_error", p.max_abs_error},
                   {"y0_gap", p.y0_gap},
                   {"seconds", p.seconds},
                   {"failure", p.failure.empty() ? json(nullptr) : json(p.failure)}});
  }
  return {{"passed", r.passed},
          {"decreasing", r.decreasing},
          {"order", r.order ? json(*r.order) : json(nullptr)},
          {"reason", r.reason},
          {"points", pts}};
}

json operator_json(const PolyOp& p) {
  json desc = json::array();
  const auto& a = p.coefficients();
  for (auto it = a.rbegin(); it != a.rend(); ++it) desc.push_back(complex_json(*it));
  return {{"degree", p.degree()}, {"descending", desc}};
}

json empty_report(const std::string& command) {
  json j;
  j["command"] = command;
  j["status"] = "ok";
  j["problem"] = nullptr;
  j["solution"] = nullptr;
  j["coefficients"] = json::array();
  j["distributional"] = nullptr;
  j["verify"] = nullptr;
  j["extra"] = json::object();
  return j;
}

}  // namespace genss::cli
