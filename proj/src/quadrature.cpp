#include "genss/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss {

namespace {
constexpr unsigned kMaxDepth = 18;
constexpr double kAbsFloor = 1e-300;
constexpr double kMinTol = 1e-13;
}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return {};
  // Below ~1e-13 the Kronrod estimate is round-off noise and refining makes it worse.
  tol = std::max(tol, kMinTol);
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, kMaxDepth, tol, &error, &l1);
  if (!std::isfinite(value)) {
    throw QuadratureFailure(fmt::format("non-finite integral on [{}, {}]", a, b));
  }
  // Boost stops at error <= tol * L1; allow slack for the last bisection level.
  if (error > 100.0 * tol * std::max(l1, 1.0) && error > kAbsFloor) {
    throw QuadratureFailure(
        fmt::format("quadrature on [{}, {}] reached error {:.3e} > tol {:.3e}", a, b, error, tol));
  }
  return {value, error};
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                       double b, double tol) {
  const auto re = integrate([&](double x) { return f(x).real(); }, a, b, tol);
  const auto im = integrate([&](double x) { return f(x).imag(); }, a, b, tol);
  return {re.value, im.value};
}

}  // namespace genss
