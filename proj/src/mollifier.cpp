#include "genss/mollifier.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "genss/errors.hpp"
#include "genss/quadrature.hpp"

namespace genss {

namespace {

using Poly = std::vector<double>;  // ascending powers of x

double raw_bump(double x) {
  const double u = 1.0 - x * x;
  return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly scale(Poly a, double s) {
  for (auto& c : a) c *= s;
  return a;
}

double raw_moment(int p) {
  return integrate([p](double x) { return std::pow(x, p) * raw_bump(x); }, -1.0, 1.0, 1e-13).value;
}

// Coefficients c_i of p(x^2) = sum c_i x^{2i} such that p*raw_bump has unit mass
// and vanishing moments of order 2, 4, 6, 8.
Poly moment4_prefactor() {
  constexpr int q = 4;
  std::array<double, 2 * q + 1> mu{};
  for (int i = 0; i <= 2 * q; ++i) mu[i] = raw_moment(2 * i);
  Eigen::Matrix<double, q + 1, q + 1> hankel;
  Eigen::Matrix<double, q + 1, 1> rhs = Eigen::Matrix<double, q + 1, 1>::Zero();
  rhs(0) = 1.0;
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i <= q; ++i) hankel(j, i) = mu[i + j];
  const Eigen::Matrix<double, q + 1, 1> c = hankel.fullPivLu().solve(rhs);
  Poly p(2 * q + 1, 0.0);
  for (int i = 0; i <= q; ++i) p[2 * i] = c(i);
  return p;
}

// rho^{(n)}(x) = P_n(x) * (1-x^2)^{-2n} * exp(-1/(1-x^2)).
struct DerivativeTable {
  std::array<Poly, kMaxMollifierDerivative + 1> numerators;

  explicit DerivativeTable(Poly p0) {
    numerators[0] = std::move(p0);
    const Poly u = {1.0, 0.0, -1.0};
    const Poly u2 = multiply(u, u);
    const Poly two_x = {0.0, 2.0};
    for (int n = 0; n < kMaxMollifierDerivative; ++n) {
      const Poly& p = numerators[n];
      Poly next = multiply(derivative(p), u2);
      next = add(next, scale(multiply(multiply(two_x, p), u), 2.0 * n));
      next = add(next, scale(multiply(two_x, p), -1.0));
      numerators[n + 1] = std::move(next);
    }
  }

  double eval(int n, double x) const {
    const double u = 1.0 - x * x;
    if (u <= 0.0) return 0.0;
    return horner(numerators[n], x) * std::exp(-1.0 / u - 2.0 * n * std::log(u));
  }
};

const DerivativeTable& table(BumpProfile profile) {
  static const DerivativeTable standard(Poly{bump_normalizer()});
  static const DerivativeTable moment4(moment4_prefactor());
  return profile == BumpProfile::Standard ? standard : moment4;
}

}  // namespace

std::string_view to_string(BumpProfile p) {
  return p == BumpProfile::Standard ? "standard" : "moment4";
}

BumpProfile bump_profile_from_string(std::string_view name) {
  if (name == "standard" || name == "bump") return BumpProfile::Standard;
  if (name == "moment4") return BumpProfile::Moment4;
  throw InvalidArgument(fmt::format("unknown bump profile '{}'", name));
}

MollifierSpec MollifierSpec::at(double eps, BumpProfile profile) {
  MollifierSpec m;
  m.eps = eps;
  m.profile = profile;
  m.validate();
  return m;
}

void MollifierSpec::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument(fmt::format("mollifier scale must be positive, got {}", eps));
  if (!(quad_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
}

double bump_normalizer() {
  static const double n = 1.0 / integrate(raw_bump, -1.0, 1.0, 1e-13).value;
  return n;
}

double bump_derivative(BumpProfile profile, int n, double x) {
  if (n < 0) throw InvalidArgument("negative derivative order");
  if (n > kMaxMollifierDerivative) {
    throw OrderTooHigh(fmt::format("mollifier derivative of order {} exceeds {}", n, kMaxMollifierDerivative));
  }
  if (std::abs(x) >= 1.0) return 0.0;
  return table(profile).eval(n, x);
}

double mollifier_derivative(const MollifierSpec& m, int n, double t) {
  return bump_derivative(m.profile, n, t / m.eps) / std::pow(m.eps, n + 1);
}

}  // namespace genss
