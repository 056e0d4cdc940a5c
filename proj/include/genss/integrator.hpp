#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace genss {

using OdeState = std::vector<std::complex<double>>;
using OdeRhs = std::function<void(double t, const OdeState& y, OdeState& dydt)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  long max_steps = 5'000'000;
  /// Dense output between steps; otherwise steps are clipped to hit every output time.
  bool dense = true;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Dormand-Prince 5(4) with the 4th-order continuous extension.
/// outputs must be sorted and >= t0. Integration restarts at each breakpoint
/// (points where the right-hand side changes character). Throws
/// StiffnessFailure when the step size underflows or max_steps is exceeded.
std::vector<OdeState> integrate_dopri5(const OdeRhs& rhs, double t0, const OdeState& y0,
                                       const std::vector<double>& outputs, const OdeOptions& options = {},
                                       const std::vector<double>& breakpoints = {}, OdeStats* stats = nullptr);

}  // namespace genss
