#pragma once

#include <string>
#include <vector>

#include "genss/solver.hpp"

namespace genss {

/// Driving voltage V(t): A*H(t) (switch) or A*delta^(n)(t) (lightning of order n).
struct Excitation {
  enum class Kind { Switch, Lightning };
  Kind kind = Kind::Switch;
  int order = 0;
  GenScalar amplitude = GenScalar(1.0);

  static Excitation switch_on(GenScalar a = GenScalar(1.0)) { return {Kind::Switch, 0, std::move(a)}; }
  static Excitation lightning(int n, GenScalar a = GenScalar(1.0)) { return {Kind::Lightning, n, std::move(a)}; }
  /// V'(t)
  Dist derivative() const;
};

/// L I'' + R I' + I / C = V'(t), I(0) = 0, L I'(0) = 0.
struct CircuitSpec {
  GenScalar L;
  GenScalar R;
  GenScalar C = GenScalar(1.0);
  Excitation V;

  void validate() const;
};

struct Regimes {
  bool first_order = false;        // L = 0
  bool superconductivity = false;  // R zero or infinitesimal
  bool lightning_rod = false;      // L, R, C all infinitesimal
  bool underdamped = false;        // R^2 - 4L/C < 0 for classical L != 0
};

Regimes classify_regimes(const CircuitSpec& spec);

struct CircuitIVP {
  IVProblem ivp;
  /// The equation was divided by this monomial to make the operator classical.
  GenScalar cleared = GenScalar(1.0);
};

/// Throws NotReducible when generalized coefficients share no common monomial.
CircuitIVP build_ivp(const CircuitSpec& spec);

struct CircuitSolution {
  CircuitIVP problem;
  Solution solution;
  Regimes regimes;
  /// Which printed case applies: "L=0", "underdamped", "R=0", or empty when
  /// the circuit is over- or critically damped (solved by the general path).
  std::string lemma_case;
};

CircuitSolution steady_state_current(const CircuitSpec& spec);

// ---------------------------------------------------------------- lightning rod
//
// I'' + 2 lambda I' + lambda^4 I = A lambda^2 delta'(t), lambda = |ln s|,
// i.e. L = C = 1/lambda^2, R = 2/lambda under lightning of order 0.

enum class RodKernel { ExpSin, ExpCos, CutExpSin, CutExpCos };

struct RodTerm {
  GenScalar coefficient;
  RodKernel kernel;
};

struct RodSolution {
  GenScalar amplitude;
  std::vector<RodTerm> terms;  // the distributional-like form
};

RodSolution lightning_rod_solution(const GenScalar& amplitude = GenScalar(1.0));
CircuitSpec lightning_rod_circuit(const GenScalar& amplitude = GenScalar(1.0));
std::string render(const RodSolution& r, bool latex = false);

/// lambda(eps) = -ln eps and omega(eps) = lambda^2 sqrt(1 - 1/lambda^2); eps < 1/e.
double rod_lambda(double eps);
double rod_omega(double eps);

/// Integral-formula representative I_phi(t) at the given mollifier.
double rod_current(double amplitude, double t, const MollifierSpec& m);
/// Same value assembled from the distributional-like form.
double rod_current_symbolic(const RodSolution& r, double t, const MollifierSpec& m);
/// |I_phi(t)| <= this for t >= eps.
double rod_envelope(double amplitude, double t, const MollifierSpec& m);

struct RodSamples {
  RodSolution solution;
  std::vector<double> t;
  std::vector<double> current;
};

RodSamples solve_lightning_rod(const GenScalar& amplitude, const std::vector<double>& t_grid, const MollifierSpec& m);

}  // namespace genss
