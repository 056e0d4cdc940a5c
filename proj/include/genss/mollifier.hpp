#pragma once

#include <string>
#include <string_view>

namespace genss {

/// Shape of the unit-mass bump rho on [-1, 1].
///
/// Standard is N*exp(-1/(1-x^2)). Moment4 multiplies the same bump by an even
/// polynomial p(x^2) of degree 8 so that the moments of order 2, 4, 6, 8
/// vanish; it realizes iota(f) = f for smooth f far more closely at finite eps.
enum class BumpProfile { Standard, Moment4 };

std::string_view to_string(BumpProfile p);
BumpProfile bump_profile_from_string(std::string_view name);

/// One representative of the phi-net: phi_eps(x) = rho(x/eps)/eps.
struct MollifierSpec {
  BumpProfile profile = BumpProfile::Standard;
  double eps = 1e-2;
  double quad_tol = 1e-12;

  static MollifierSpec at(double eps, BumpProfile profile = BumpProfile::Standard);
  void validate() const;
};

/// Highest derivative order supported by bump_derivative.
inline constexpr int kMaxMollifierDerivative = 12;

/// n-th derivative of the normalized bump rho at x (zero for |x| >= 1).
/// Throws OrderTooHigh for n > kMaxMollifierDerivative.
double bump_derivative(BumpProfile profile, int n, double x);

inline double bump(BumpProfile profile, double x) { return bump_derivative(profile, 0, x); }

/// 1 / integral of exp(-1/(1-x^2)) over [-1, 1].
double bump_normalizer();

/// n-th derivative of phi_eps at t.
double mollifier_derivative(const MollifierSpec& m, int n, double t);

}  // namespace genss
