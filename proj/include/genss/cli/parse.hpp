#pragma once

#include <string_view>

#include "genss/genfunc.hpp"
#include "genss/green.hpp"

namespace genss::cli {

/// Forcing expressions, in the same grammar the text renderer emits:
///   3*delta' + H, delta(0)*delta'(t), H(t)*t^2*exp(-1.5t)*cos(2t),
///   (kc{0;1.5;0} - 0.5*s)*sin(t), delta^(4)(t), 2/delta(0)
/// Products are pointwise; a delta term may only be scaled by constants.
/// Throws ParseError with the byte offset of the offending token.
Dist parse_forcing(std::string_view src);

/// Same grammar, result must be a generalized constant (no t-dependence).
GenScalar parse_scalar(std::string_view src);

/// "a_k,...,a_0" or a product form in x such as "(x+1)^2*(x^2+4)".
PolyOp parse_operator(std::string_view src);

}  // namespace genss::cli
