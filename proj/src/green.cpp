#include "genss/green.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss {

// ---------------------------------------------------------------- PolyOp

PolyOp::PolyOp(std::vector<cplx> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw InvalidArgument("operator must have degree >= 1 with nonzero leading coefficient");
  for (const cplx& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("operator coefficients must be finite");
}

PolyOp PolyOp::from_descending(const std::vector<cplx>& descending) {
  return PolyOp(std::vector<cplx>(descending.rbegin(), descending.rend()));
}

PolyOp PolyOp::from_roots(const std::vector<Pole>& roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const Pole& r : roots) {
    for (int i = 0; i < r.multiplicity; ++i) {
      std::vector<cplx> next(c.size() + 1, 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= r.rate * c[j];
      }
      c = std::move(next);
    }
  }
  return PolyOp(std::move(c));
}

bool PolyOp::real_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
}

double PolyOp::norm() const {
  double n = 0.0;
  for (const cplx& c : coeffs_) n = std::max(n, std::abs(c));
  return n;
}

cplx PolyOp::operator()(cplx x) const { return derivative_at(x, 0); }

cplx PolyOp::derivative_at(cplx x, int j) const {
  cplx acc = 0.0;
  for (int i = degree(); i >= j; --i) {
    double falling = 1.0;
    for (int l = 0; l < j; ++l) falling *= i - l;
    acc = acc * x + coeffs_[i] * falling;
  }
  return acc;
}

PolyOp operator*(const PolyOp& a, const PolyOp& b) {
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return PolyOp(std::move(c));
}

// ---------------------------------------------------------------- roots

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kWideClusterTol = 1e-3;
constexpr double kResidualTol = 1e-10;

std::vector<cplx> companion_eigenvalues(const PolyOp& p) {
  const int k = p.degree();
  if (k == 1) return {-p.coefficient(0) / p.coefficient(1)};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) companion(i, k - 1) = -p.coefficient(i) / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw IllConditioned("companion eigenvalue iteration did not converge");
  std::vector<cplx> out(k);
  for (int i = 0; i < k; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

double residual_scale(const PolyOp& p, cplx x) {
  return p.norm() * std::pow(std::max(1.0, std::abs(x)), p.degree());
}

// Newton step on P^(m-1), accepted only if it does not increase the residual.
cplx polish(const PolyOp& p, cplx x, int multiplicity) {
  const int j = multiplicity - 1;
  for (int iter = 0; iter < 3; ++iter) {
    const cplx d = p.derivative_at(x, j + 1);
    if (d == cplx(0.0)) break;
    const cplx next = x - p.derivative_at(x, j) / d;
    if (std::abs(p.derivative_at(next, j)) >= std::abs(p.derivative_at(x, j))) break;
    x = next;
  }
  return x;
}

bool is_multiple_root(const PolyOp& p, cplx c, int m) {
  for (int j = 0; j < m; ++j) {
    double fact = 1.0;
    for (int l = 2; l <= j; ++l) fact *= l;
    if (std::abs(p.derivative_at(c, j)) / fact > kResidualTol * residual_scale(p, c)) return false;
  }
  return true;
}

cplx mean(const std::vector<cplx>& v) {
  cplx s = 0.0;
  for (const cplx& x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<std::vector<cplx>> cluster(const std::vector<cplx>& values, double tol) {
  std::vector<std::vector<cplx>> groups;
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    std::vector<cplx> g{values[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (!used[j] && std::abs(values[j] - values[i]) <= tol * std::max(1.0, std::abs(values[i]))) {
        g.push_back(values[j]);
        used[j] = true;
      }
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

std::vector<Pole> find_roots(const PolyOp& p) {
  std::vector<cplx> eig = companion_eigenvalues(p);
  for (cplx& z : eig) z = polish(p, z, 1);
  std::sort(eig.begin(), eig.end(),
            [](cplx a, cplx b) { return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag()); });

  std::vector<Pole> roots;
  for (const auto& wide : cluster(eig, kWideClusterTol)) {
    const int m = static_cast<int>(wide.size());
    // the cluster mean is only good to ~eps_mach^(1/m); polish on P^(m-1) before testing
    const cplx c = m > 1 ? polish(p, mean(wide), m) : wide.front();
    if (m > 1 && is_multiple_root(p, c, m)) {
      roots.push_back({c, m});
      continue;
    }
    for (const auto& tight : cluster(wide, kClusterTol)) {
      const int mt = static_cast<int>(tight.size());
      roots.push_back({polish(p, mean(tight), mt), mt});
    }
  }

  const bool real_poly = p.real_coefficients();
  for (Pole& r : roots) {
    const double scale = std::max(1.0, std::abs(r.rate));
    if (real_poly && std::abs(r.rate.imag()) <= 1e-10 * scale) r.rate.imag(0.0);
    if (std::abs(r.rate.real()) <= 1e-13 * scale) r.rate.real(0.0);
    if (r.multiplicity == 1 && std::abs(p(r.rate)) > kResidualTol * residual_scale(p, r.rate)) {
      throw IllConditioned(fmt::format("root residual too large at ({}, {})", r.rate.real(), r.rate.imag()));
    }
    r.rate = snap_rate(r.rate);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double d = std::abs(roots[i].rate - roots[j].rate);
      if (d <= kClusterTol * std::max(1.0, std::abs(roots[i].rate))) {
        throw IllConditioned("ambiguous root clustering: distinct roots closer than the clustering threshold");
      }
    }
  }
  return roots;
}

// ---------------------------------------------------------------- Green functions

GreenData green_function(const PolyOp& p) {
  GreenData g;
  g.op = p;
  g.roots = find_roots(p);
  g.green = cut_partial_fractions(1.0 / p.leading(), g.roots);
  g.constants = eval_derivs_at_zero(g.green, p.degree());
  return g;
}

Dist green_derivative(const GreenData& g, int n) { return differentiate(g.green, n); }

std::vector<Dist> homogeneous_basis(const PolyOp& p, const std::vector<Pole>& roots) {
  std::vector<Dist> basis;
  const bool real_pairs = p.real_coefficients();
  for (const Pole& r : roots) {
    const cplx rate = r.rate;
    if (real_pairs && rate.imag() < 0.0) continue;  // covered by the conjugate
    for (int m = 0; m < r.multiplicity; ++m) {
      if (real_pairs && rate.imag() > 0.0) {
        const Kernel up = Kernel::smooth(m, rate);
        const Kernel down = Kernel::smooth(m, std::conj(rate));
        Dist c;
        c.add(up, cplx(0.5));
        c.add(down, cplx(0.5));
        Dist s;
        s.add(up, cplx(0.0, -0.5));
        s.add(down, cplx(0.0, 0.5));
        basis.push_back(std::move(c));
        basis.push_back(std::move(s));
      } else {
        basis.push_back(Dist::smooth(m, rate));
      }
    }
  }
  if (static_cast<int>(basis.size()) != p.degree()) {
    throw IllConditioned("root multiplicities do not add up to the operator degree");
  }
  return basis;
}

std::vector<Dist> homogeneous_basis(const PolyOp& p) { return homogeneous_basis(p, find_roots(p)); }

Dist apply_operator(const PolyOp& p, const Dist& y) {
  Dist out;
  Dist d = y;
  for (int j = 0; j <= p.degree(); ++j) {
    if (p.coefficient(j) != cplx(0.0)) out += d * GenScalar(p.coefficient(j));
    if (j < p.degree()) d = differentiate(d);
  }
  return out;
}

}  // namespace genss
