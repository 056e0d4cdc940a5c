#pragma once

#include <string>

#include "genss/genfunc.hpp"
#include "genss/scalars.hpp"

namespace genss {

enum class Format { Text, Latex };

/// Text output uses the CLI grammar and parses back to the same normal form.
/// Conjugate-rate pairs are recombined into cos/sin.
std::string render(const Dist& f, Format format = Format::Text);
std::string render(const GenScalar& x, Format format = Format::Text);
std::string render_number(cplx c, Format format = Format::Text);

}  // namespace genss
