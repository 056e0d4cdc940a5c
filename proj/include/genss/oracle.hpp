#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genss/integrator.hpp"
#include "genss/solver.hpp"

namespace genss {

/// Dist with coefficients evaluated at one mollifier; cheap to evaluate repeatedly.
class NumericDist {
 public:
  NumericDist(const Dist& f, const MollifierSpec& m);
  /// (f * phi_eps)(t)
  cplx operator()(double t) const;

 private:
  std::vector<std::pair<Kernel, cplx>> terms_;
  MollifierSpec m_;
};

/// Value of the representative (f * phi_eps)(t).
cplx numeric_eval_dist(const Dist& f, double t, const MollifierSpec& m);

/// OpenMP-parallel grid evaluation and its serial reference.
std::vector<cplx> evaluate_on_grid(const Dist& f, const std::vector<double>& t, const MollifierSpec& m);
std::vector<cplx> evaluate_on_grid_serial(const Dist& f, const std::vector<double>& t, const MollifierSpec& m);

std::vector<double> uniform_grid(double t0, double t1, int points);

struct Trajectory {
  std::vector<double> t;
  std::vector<cplx> y;
  OdeStats stats;
};

/// Classical solution of P y = f * phi_eps with zero data at t = 0, sampled on grid.
Trajectory integrate_regularized(const IVProblem& p, const MollifierSpec& m, const std::vector<double>& grid,
                                 const OdeOptions& options = {});

struct SweepConfig {
  std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  double T = 2.0;
  int grid = 101;
  OdeOptions ode{};
  BumpProfile profile = BumpProfile::Standard;
  double quad_tol = 1e-12;
  /// Final-eps weighted error must not exceed this.
  double threshold = 1e-3;
  /// When set, one CSV per eps is written here.
  std::string csv_dir;

  void validate() const;
  std::vector<double> times() const { return uniform_grid(0.0, T, grid); }
};

struct SweepPoint {
  double eps = 0.0;
  double max_weighted_error = 0.0;
  double max_abs_error = 0.0;
  double y0_gap = 0.0;  // |y_eps(0) - numeric value of the symbolic solution at 0|
  double seconds = 0.0;
  std::string failure;
};

struct VerifyReport {
  std::vector<SweepPoint> points;
  std::optional<double> order;  // least-squares slope of log error vs log eps
  bool decreasing = false;
  bool passed = false;
  std::string reason;
};

/// Least-squares slope of log(y) against log(x); nullopt if any y <= 0 or fewer than 2 points.
std::optional<double> fit_order(const std::vector<double>& x, const std::vector<double>& y);

VerifyReport verify_solution(const IVProblem& p, const Dist& y, const SweepConfig& cfg);

struct ConstantEstimate {
  std::vector<double> eps;
  std::vector<cplx> values;
  cplx standard_part{};
  std::vector<double> deviations;
  std::optional<double> order;
};

/// Numeric values of a finite or infinitesimal scalar across the sweep.
ConstantEstimate estimate_constant(const GenScalar& x, const SweepConfig& cfg);

void write_trajectory_csv(const std::string& path, const std::vector<double>& t, const std::vector<cplx>& y_num,
                          const std::vector<cplx>& y_sym);

}  // namespace genss
