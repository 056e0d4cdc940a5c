#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genss/green.hpp"

namespace genss {

/// P(d/dt) y = f with y(0) = ... = y^(k-1)(0) = 0.
struct IVProblem {
  PolyOp op;
  Dist forcing;

  int order() const { return op.degree(); }
  /// Throws InvalidArgument unless the forcing is supported on [0, inf).
  void validate() const;
};

struct Solution {
  Dist dist;
  std::vector<GenScalar> coefficients;  // c_n, weights of basis[n]
  std::vector<Dist> basis;
  Dist particular;  // G * f
  std::vector<AsymptoticClass> classes;
};

Solution solve_first_order(cplx a, cplx b, const Dist& f);

/// Determinant of (eval_derivs_at_zero(columns[j])[i]), expanded along
/// generalized columns; purely complex minors go to an LU determinant.
GenScalar wronskian_at_zero(const std::vector<Dist>& columns);

Solution solve_ivp(const IVProblem& p);
/// Same, with a caller-supplied homogeneous basis (any order).
Solution solve_ivp(const IVProblem& p, const std::vector<Dist>& basis);

/// P(d/dt) y - f
Dist residual(const IVProblem& p, const Dist& y);
/// y(0), ..., y^(k-1)(0)
std::vector<GenScalar> initial_values(const IVProblem& p, const Dist& y);

struct Solvability {
  std::optional<bool> solvable;  // nullopt when the forcing has generalized coefficients
  std::string diagnosis;
  std::optional<int> offending_order;
  cplx jump{};
};

Solvability has_distributional_solution(const IVProblem& p);

struct CandidateCheck {
  bool satisfies_equation = false;
  bool satisfies_initial_conditions = false;
  Dist residual;
  std::vector<GenScalar> initial_values;
};

CandidateCheck check_candidate(const IVProblem& p, const Dist& y);

}  // namespace genss
