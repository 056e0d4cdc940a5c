#include "genss/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss {

namespace {

constexpr double kSingularTol = 1e-12;
constexpr double kJumpTol = 1e-10;

using Matrix = std::vector<std::vector<GenScalar>>;  // [row][col]

cplx complex_det(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = *m[i][j].constant();
  return a.determinant();
}

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<GenScalar> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

GenScalar det(const Matrix& m) {
  const std::size_t n = m.size();
  std::optional<std::size_t> generalized;
  for (std::size_t j = 0; j < n && !generalized; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!m[i][j].is_constant()) {
        generalized = j;
        break;
      }
  if (!generalized) return complex_det(m);

  const std::size_t j = *generalized;
  GenScalar total;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][j].is_zero()) continue;
    const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    total += m[i][j] * det(minor_of(m, i, j)) * sign;
  }
  return total;
}

Matrix wronskian_matrix(const std::vector<Dist>& columns) {
  const std::size_t k = columns.size();
  Matrix m(k, std::vector<GenScalar>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const auto values = eval_derivs_at_zero(columns[j], static_cast<int>(k));
    for (std::size_t i = 0; i < k; ++i) m[i][j] = values[i];
  }
  return m;
}

void classify_coefficients(Solution& s) {
  s.classes.clear();
  for (const GenScalar& c : s.coefficients) s.classes.push_back(classify(c));
}

}  // namespace

void IVProblem::validate() const {
  if (!forcing.supported_on_half_line()) {
    throw InvalidArgument("forcing must be supported on [0, inf): smooth kernels need an H(t) cut");
  }
}

Solution solve_first_order(cplx a, cplx b, const Dist& f) {
  if (a == cplx(0.0)) throw InvalidArgument("leading coefficient a must be nonzero");
  const cplx rate = -b / a;
  const Dist g = Dist(Kernel::cut(0, rate), GenScalar(1.0 / a));
  Solution s;
  s.particular = convolve(g, f);
  s.basis = {Dist::smooth(0, rate)};
  s.coefficients = {-eval_at_zero(s.particular)};
  s.dist = s.basis[0] * s.coefficients[0] + s.particular;
  classify_coefficients(s);
  return s;
}

GenScalar wronskian_at_zero(const std::vector<Dist>& columns) { return det(wronskian_matrix(columns)); }

Solution solve_ivp(const IVProblem& p) {
  p.validate();
  return solve_ivp(p, homogeneous_basis(p.op));
}

Solution solve_ivp(const IVProblem& p, const std::vector<Dist>& basis) {
  p.validate();
  const int k = p.order();
  if (static_cast<int>(basis.size()) != k) throw InvalidArgument("basis size must equal the operator degree");

  const GreenData g = green_function(p.op);
  Solution s;
  s.basis = basis;
  s.particular = convolve(g.green, p.forcing);

  const Matrix base = wronskian_matrix(basis);
  for (const auto& row : base)
    for (const GenScalar& e : row)
      if (!e.is_constant()) throw InvalidArgument("homogeneous basis must have classical values at 0");
  const cplx w = complex_det(base);
  if (std::abs(w) < kSingularTol) {
    throw SingularWronskian(fmt::format("|W(0)| = {:.3g} below {}", std::abs(w), kSingularTol));
  }

  const auto rhs = eval_derivs_at_zero(s.particular, k);
  s.coefficients.assign(k, GenScalar{});
  for (int n = 0; n < k; ++n) {
    Matrix m = base;
    for (int i = 0; i < k; ++i) m[i][n] = rhs[i];
    s.coefficients[n] = -det(m) / w;
  }

  s.dist = s.particular;
  for (int n = 0; n < k; ++n) s.dist += basis[n] * s.coefficients[n];
  classify_coefficients(s);
  return s;
}

Dist residual(const IVProblem& p, const Dist& y) { return apply_operator(p.op, y) - p.forcing; }

std::vector<GenScalar> initial_values(const IVProblem& p, const Dist& y) { return eval_derivs_at_zero(y, p.order()); }

Solvability has_distributional_solution(const IVProblem& p) {
  p.validate();
  Solvability out;
  if (!p.forcing.classical_coefficients()) {
    out.diagnosis = "forcing has generalized coefficients; the jump criterion is not decided";
    return out;
  }
  const Dist particular = convolve(green_function(p.op).green, p.forcing);
  if (particular.has_delta_terms()) {
    int worst = -1;
    for (const auto& [k, c] : particular.terms())
      if (k.kind == Kernel::Kind::Delta) worst = std::max(worst, k.order);
    out.solvable = false;
    out.diagnosis = fmt::format("G*f contains delta^({}) terms", worst);
    return out;
  }
  Dist d = particular;
  for (int j = 0; j < p.order(); ++j) {
    double scale = 0.0;
    for (const auto& [k, c] : d.terms())
      if (k.kind == Kernel::Kind::Cut && k.order == 0) scale += std::abs(*c.constant());
    const cplx jump = *jump_at_zero(d).constant();
    if (std::abs(jump) > kJumpTol * std::max(scale, 1e-300)) {
      out.solvable = false;
      out.offending_order = j;
      out.jump = jump;
      out.diagnosis = fmt::format("(G*f)^({}) jumps by {} at 0", j, std::abs(jump));
      return out;
    }
    d = differentiate(d);
  }
  out.solvable = true;
  out.diagnosis = fmt::format("G*f is C^{} near 0", p.order() - 1);
  return out;
}

CandidateCheck check_candidate(const IVProblem& p, const Dist& y) {
  CandidateCheck out;
  out.residual = residual(p, y);
  out.satisfies_equation = out.residual.is_zero();
  out.initial_values = initial_values(p, y);
  out.satisfies_initial_conditions =
      std::all_of(out.initial_values.begin(), out.initial_values.end(), [](const GenScalar& v) { return v.is_zero(); });
  return out;
}

}  // namespace genss
