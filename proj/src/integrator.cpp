#include "genss/integrator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss {

namespace {

using cplx = std::complex<double>;

// Dormand & Prince (1980); dense-output weights from Hairer's DOPRI5.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Stepper {
  const OdeRhs& rhs;
  const OdeOptions& opt;
  OdeStats& stats;
  std::size_t n;
  OdeState k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;
  OdeState r1, r2, r3, r4, r5;  // continuous extension

  Stepper(const OdeRhs& f, const OdeOptions& o, OdeStats& s, std::size_t dim)
      : rhs(f), opt(o), stats(s), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), tmp(dim),
        ynew(dim), err(dim), r1(dim), r2(dim), r3(dim), r4(dim), r5(dim) {}

  void eval(double t, const OdeState& y, OdeState& dy) {
    rhs(t, y, dy);
    ++stats.evaluations;
  }

  // One trial step from (t, y) with k1 = f(t, y). Returns the scaled error norm.
  double attempt(double t, const OdeState& y, double h) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    eval(t + h, ynew, k7);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      sum += std::norm(err[i]) / (sc * sc);
    }
    return std::sqrt(sum / static_cast<double>(n));
  }

  void prepare_dense(const OdeState& y, double h) {
    for (std::size_t i = 0; i < n; ++i) {
      r1[i] = y[i];
      r2[i] = ynew[i] - y[i];
      r3[i] = h * k1[i] - r2[i];
      r4[i] = r2[i] - h * k7[i] - r3[i];
      r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
  }

  OdeState dense(double theta) const {
    const double t1 = 1.0 - theta;
    OdeState out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = r1[i] + theta * (r2[i] + t1 * (r3[i] + theta * (r4[i] + t1 * r5[i])));
    return out;
  }

  double initial_step(double t, const OdeState& y, double span) {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d0 += std::norm(y[i]) / (sc * sc);
      d1n += std::norm(k1[i]) / (sc * sc);
    }
    d0 = std::sqrt(d0 / n);
    d1n = std::sqrt(d1n / n);
    double h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min(h, span);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k1[i];
    eval(t + h, tmp, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d2 += std::norm(k2[i] - k1[i]) / (sc * sc);
    }
    d2 = std::sqrt(d2 / n) / h;
    const double big = std::max(d1n, d2);
    const double h1 = big <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / big, 0.2);
    return std::min({100.0 * h, h1, span});
  }
};

}  // namespace

std::vector<OdeState> integrate_dopri5(const OdeRhs& rhs, double t0, const OdeState& y0,
                                       const std::vector<double>& outputs, const OdeOptions& options,
                                       const std::vector<double>& breakpoints, OdeStats* stats_out) {
  if (!std::is_sorted(outputs.begin(), outputs.end())) throw InvalidArgument("output times must be sorted");
  if (!outputs.empty() && outputs.front() < t0) throw InvalidArgument("output times must not precede t0");
  if (y0.empty()) throw InvalidArgument("state must be nonempty");

  OdeStats stats;
  Stepper s(rhs, options, stats, y0.size());
  std::vector<OdeState> result;
  result.reserve(outputs.size());
  std::size_t next_out = 0;
  while (next_out < outputs.size() && outputs[next_out] == t0) {
    result.push_back(y0);
    ++next_out;
  }
  if (next_out == outputs.size()) {
    if (stats_out) *stats_out = stats;
    return result;
  }

  const double t_end = outputs.back();
  std::vector<double> stops;
  for (double b : breakpoints)
    if (b > t0 && b < t_end) stops.push_back(b);
  std::sort(stops.begin(), stops.end());
  stops.push_back(t_end);

  double t = t0;
  OdeState y = y0;
  for (double seg_end : stops) {
    s.eval(t, y, s.k1);
    double h = s.initial_step(t, y, seg_end - t);
    bool last_rejected = false;
    while (t < seg_end) {
      if (stats.accepted + stats.rejected > options.max_steps) {
        throw StiffnessFailure(fmt::format("step budget exhausted at t = {}; try a larger eps", t));
      }
      double target = seg_end;
      if (!options.dense && next_out < outputs.size()) target = std::min(target, outputs[next_out]);
      bool hits = false;
      if (t + h >= target || target - (t + h) < 1e-12 * std::max(1.0, std::abs(target))) {
        h = target - t;
        hits = true;
      }
      if (h <= 1e-15 * std::max(1.0, std::abs(t))) {
        throw StiffnessFailure(fmt::format("step size underflow at t = {}; try a larger eps", t));
      }
      const double e = s.attempt(t, y, h);
      if (!std::isfinite(e)) {
        h *= 0.2;
        ++stats.rejected;
        last_rejected = true;
        continue;
      }
      if (e > 1.0) {
        h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
        ++stats.rejected;
        last_rejected = true;
        continue;
      }
      ++stats.accepted;
      const double t_new = hits ? target : t + h;
      if (options.dense) s.prepare_dense(y, h);
      while (next_out < outputs.size() && outputs[next_out] <= t_new) {
        if (options.dense) {
          const double theta = std::clamp((outputs[next_out] - t) / h, 0.0, 1.0);
          result.push_back(s.dense(theta));
        } else {
          result.push_back(s.ynew);
        }
        ++next_out;
      }
      t = t_new;
      y = s.ynew;
      s.k1 = s.k7;  // first-same-as-last
      double grow = e == 0.0 ? 10.0 : std::min(10.0, 0.9 * std::pow(e, -0.2));
      if (last_rejected) grow = std::min(grow, 1.0);
      h *= grow;
      last_rejected = false;
    }
  }
  if (stats_out) *stats_out = stats;
  return result;
}

}  // namespace genss
