#pragma once

#include <complex>
#include <functional>

namespace genss {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod over [a, b]. Throws QuadratureFailure when
/// the estimated error exceeds 100 tol * max(L1 norm, 1) after refinement.
/// Tolerances below 1e-13 are raised to 1e-13.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol);

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                       double b, double tol);

}  // namespace genss
