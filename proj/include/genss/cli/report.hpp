#pragma once

#include <json.hpp>

#include "genss/oracle.hpp"
#include "genss/render.hpp"
#include "genss/solver.hpp"

namespace genss::cli {

using json = nlohmann::ordered_json;

json complex_json(cplx c);
/// {text, latex, class, standard_part}
json scalar_json(const GenScalar& x);
json coefficients_json(const std::vector<GenScalar>& c);
json solvability_json(const Solvability& s);
json verify_json(const VerifyReport& r);
json operator_json(const PolyOp& p);

/// Report skeleton with every top-level field present.
json empty_report(const std::string& command);

}  // namespace genss::cli
