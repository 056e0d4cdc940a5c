#include "genss/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "genss/errors.hpp"
#include "genss/quadrature.hpp"
#include "parallel.hpp"

namespace genss {

// ---------------------------------------------------------------- representatives

NumericDist::NumericDist(const Dist& f, const MollifierSpec& m) : m_(m) {
  m.validate();
  for (const auto& [k, c] : f.terms()) terms_.emplace_back(k, numeric_eval_scalar(c, m));
}

namespace {

cplx kernel_power(double x, int m, cplx rate) { return std::pow(x, m) * std::exp(rate * x); }

// integral of (t - eps u)^m e^{rate (t - eps u)} rho(u) over u in [-1, min(1, t/eps)]
cplx mollified_cut(const Kernel& k, double t, const MollifierSpec& m) {
  if (t <= -m.eps) return 0.0;
  const double upper = std::min(1.0, t / m.eps);
  return integrate_complex([&](double u) { return kernel_power(t - m.eps * u, k.order, k.rate) * bump(m.profile, u); },
                           -1.0, upper, m.quad_tol);
}

}  // namespace

cplx NumericDist::operator()(double t) const {
  cplx total = 0.0;
  for (const auto& [k, c] : terms_) {
    switch (k.kind) {
      case Kernel::Kind::Delta:
        total += c * mollifier_derivative(m_, k.order, t);
        break;
      case Kernel::Kind::Smooth:
        total += c * kernel_power(t, k.order, k.rate);
        break;
      case Kernel::Kind::Cut:
        total += c * mollified_cut(k, t, m_);
        break;
    }
  }
  return total;
}

cplx numeric_eval_dist(const Dist& f, double t, const MollifierSpec& m) { return NumericDist(f, m)(t); }

std::vector<cplx> evaluate_on_grid(const Dist& f, const std::vector<double>& t, const MollifierSpec& m) {
  const NumericDist nf(f, m);
  std::vector<cplx> out(t.size());
  detail::parallel_for(static_cast<long>(t.size()), [&](long i) { out[i] = nf(t[i]); });
  return out;
}

std::vector<cplx> evaluate_on_grid_serial(const Dist& f, const std::vector<double>& t, const MollifierSpec& m) {
  const NumericDist nf(f, m);
  std::vector<cplx> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = nf(t[i]);
  return out;
}

std::vector<double> uniform_grid(double t0, double t1, int points) {
  if (points < 2) throw InvalidArgument("grid needs at least 2 points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = t0 + (t1 - t0) * i / (points - 1);
  g.back() = t1;
  return g;
}

// ---------------------------------------------------------------- integration

Trajectory integrate_regularized(const IVProblem& p, const MollifierSpec& m, const std::vector<double>& grid,
                                 const OdeOptions& options) {
  p.validate();
  m.validate();
  const int k = p.order();
  const NumericDist forcing(p.forcing, m);
  const std::vector<cplx>& a = p.op.coefficients();
  const cplx inv_lead = 1.0 / p.op.leading();

  auto rhs = [&](double t, const OdeState& y, OdeState& dy) {
    for (int j = 0; j + 1 < k; ++j) dy[j] = y[j + 1];
    cplx acc = forcing(t);
    for (int j = 0; j < k; ++j) acc -= a[j] * y[j];
    dy[k - 1] = acc * inv_lead;
  };

  Trajectory tr;
  tr.t = grid;
  const auto states = integrate_dopri5(rhs, 0.0, OdeState(k, 0.0), grid, options, {m.eps}, &tr.stats);
  tr.y.reserve(states.size());
  for (const OdeState& s : states) tr.y.push_back(s[0]);
  return tr;
}

// ---------------------------------------------------------------- verification

void SweepConfig::validate() const {
  if (eps.empty()) throw InvalidArgument("sweep needs at least one eps");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidArgument("eps must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw InvalidArgument("eps list must be strictly decreasing");
  }
  if (!(T > eps.front())) throw InvalidArgument("horizon T must exceed the largest eps");
  if (grid < 2) throw InvalidArgument("grid needs at least 2 points");
}

std::optional<double> fit_order(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& t, const std::vector<cplx>& y_num,
                          const std::vector<cplx>& y_sym) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument(fmt::format("cannot write {}", path));
  out << "t,re_y_num,re_y_sym,abs_err,weighted_err\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double abs_err = std::abs(y_num[i] - y_sym[i]);
    out << fmt::format("{},{},{},{},{}\n", t[i], y_num[i].real(), y_sym[i].real(), abs_err,
                       abs_err / (1.0 + std::abs(y_num[i])));
  }
}

VerifyReport verify_solution(const IVProblem& p, const Dist& y, const SweepConfig& cfg) {
  cfg.validate();
  VerifyReport report;
  const std::vector<double> grid = cfg.times();
  if (!cfg.csv_dir.empty()) std::filesystem::create_directories(cfg.csv_dir);

  for (double eps : cfg.eps) {
    SweepPoint pt;
    pt.eps = eps;
    const auto start = std::chrono::steady_clock::now();
    try {
      MollifierSpec m{cfg.profile, eps, cfg.quad_tol};
      const Trajectory tr = integrate_regularized(p, m, grid, cfg.ode);
      const std::vector<cplx> sym = evaluate_on_grid(y, grid, m);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = std::abs(tr.y[i] - sym[i]);
        pt.max_abs_error = std::max(pt.max_abs_error, d);
        pt.max_weighted_error = std::max(pt.max_weighted_error, d / (1.0 + std::abs(tr.y[i])));
      }
      pt.y0_gap = std::abs(tr.y.front() - sym.front());
      if (!cfg.csv_dir.empty()) {
        write_trajectory_csv(fmt::format("{}/eps_{:.0e}.csv", cfg.csv_dir, eps), grid, tr.y, sym);
      }
    } catch (const std::exception& e) {
      pt.failure = e.what();
    }
    pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.points.push_back(std::move(pt));
    if (!report.points.back().failure.empty()) break;
  }

  for (const SweepPoint& pt : report.points) {
    if (!pt.failure.empty()) {
      report.reason = fmt::format("eps = {}: {}", pt.eps, pt.failure);
      return report;
    }
  }

  std::vector<double> xs, es;
  for (const SweepPoint& pt : report.points) {
    xs.push_back(pt.eps);
    es.push_back(pt.max_weighted_error);
  }
  report.order = fit_order(xs, es);
  const bool all_zero = std::all_of(es.begin(), es.end(), [](double e) { return e == 0.0; });
  report.decreasing = all_zero;
  if (!all_zero) {
    report.decreasing = true;
    for (std::size_t i = 1; i < es.size(); ++i)
      if (!(es[i] < es[i - 1])) report.decreasing = false;
  }
  const bool small = es.back() <= cfg.threshold;
  report.passed = report.decreasing && small;
  if (!report.decreasing) {
    report.reason = "weighted error does not decrease across the sweep";
  } else if (!small) {
    report.reason = fmt::format("final weighted error {:.3g} exceeds {:.3g}", es.back(), cfg.threshold);
  } else {
    report.reason = "ok";
  }
  return report;
}

ConstantEstimate estimate_constant(const GenScalar& x, const SweepConfig& cfg) {
  cfg.validate();
  const AsymptoticClass cls = classify(x);
  if (cls.tag == AsymptoticClass::Tag::Infinite || cls.tag == AsymptoticClass::Tag::Unknown) {
    throw InvalidArgument("estimate_constant needs a finite or infinitesimal scalar");
  }
  ConstantEstimate out;
  out.standard_part = cls.tag == AsymptoticClass::Tag::Finite ? cls.standard_part : cplx(0.0);
  for (double eps : cfg.eps) {
    const cplx v = numeric_eval_scalar(x, MollifierSpec{cfg.profile, eps, cfg.quad_tol});
    out.eps.push_back(eps);
    out.values.push_back(v);
    out.deviations.push_back(std::abs(v - out.standard_part));
  }
  out.order = fit_order(out.eps, out.deviations);
  return out;
}

}  // namespace genss
