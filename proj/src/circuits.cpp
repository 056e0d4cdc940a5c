#include "genss/circuits.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "genss/errors.hpp"
#include "genss/quadrature.hpp"
#include "genss/render.hpp"
#include "parallel.hpp"

namespace genss {

Dist Excitation::derivative() const {
  if (kind == Kind::Switch) return Dist::delta(0) * amplitude;
  if (order < 0) throw InvalidArgument("lightning order must be nonnegative");
  return Dist::delta(order + 1) * amplitude;
}

void CircuitSpec::validate() const {
  if (C.is_zero()) throw InvalidArgument("capacitance must be nonzero");
  if (L.is_zero() && R.is_zero()) throw InvalidArgument("L and R cannot both vanish");
  if (V.amplitude.is_zero()) throw InvalidArgument("amplitude must be nonzero");
}

namespace {

bool small_or_zero(const GenScalar& x) {
  const auto tag = classify(x).tag;
  return tag == AsymptoticClass::Tag::Zero || tag == AsymptoticClass::Tag::Infinitesimal;
}

}  // namespace

CircuitIVP build_ivp(const CircuitSpec& spec) {
  spec.validate();
  GenScalar inv_c;
  try {
    inv_c = gs_invert(spec.C);
  } catch (const NotInvertibleHere&) {
    throw NotReducible("capacitance must be a single generalized term to form 1/C");
  }
  std::vector<GenScalar> coeffs{inv_c, spec.R};
  if (!spec.L.is_zero()) coeffs.push_back(spec.L);

  CircuitIVP out;
  Dist forcing = spec.V.derivative();
  const bool classical = std::all_of(coeffs.begin(), coeffs.end(), [](const GenScalar& c) { return c.is_constant(); });
  std::vector<cplx> plain;
  if (classical) {
    for (const GenScalar& c : coeffs) plain.push_back(*c.constant());
  } else {
    std::optional<Monomial> common;
    for (const GenScalar& c : coeffs) {
      if (c.is_zero()) continue;
      if (c.terms().size() != 1) throw NotReducible("circuit coefficients are sums of generalized terms");
      const Monomial& m = c.terms().begin()->first;
      if (common && !(*common == m)) {
        throw NotReducible("circuit coefficients share no common generalized factor");
      }
      common = m;
    }
    if (!common->invertible()) throw NotReducible("common generalized factor is not invertible");
    for (const GenScalar& c : coeffs) plain.push_back(c.is_zero() ? cplx(0.0) : c.terms().begin()->second);
    out.cleared = GenScalar::term(1.0, *common);
    forcing = forcing * GenScalar::term(1.0, common->inverse());
  }
  out.ivp = IVProblem{PolyOp(plain), forcing};
  return out;
}

Regimes classify_regimes(const CircuitSpec& spec) {
  Regimes r;
  r.first_order = spec.L.is_zero();
  r.superconductivity = small_or_zero(spec.R);
  r.lightning_rod = small_or_zero(spec.L) && small_or_zero(spec.R) &&
                    classify(spec.C).tag == AsymptoticClass::Tag::Infinitesimal;
  if (!r.first_order) {
    try {
      const PolyOp& op = build_ivp(spec).ivp.op;
      if (op.real_coefficients() && op.degree() == 2) {
        const double disc = std::norm(op.coefficient(1)) - 4.0 * op.coefficient(2).real() * op.coefficient(0).real();
        r.underdamped = disc < 0.0;
      }
    } catch (const NotReducible&) {
      // parametric operators (lightning rod) have no classical discriminant
    }
  }
  return r;
}

CircuitSolution steady_state_current(const CircuitSpec& spec) {
  CircuitSolution out;
  out.problem = build_ivp(spec);
  out.regimes = classify_regimes(spec);
  const PolyOp& op = out.problem.ivp.op;
  if (op.degree() == 1) {
    out.lemma_case = "L=0";
    out.solution = solve_first_order(op.coefficient(1), op.coefficient(0), out.problem.ivp.forcing);
    return out;
  }
  if (out.regimes.underdamped) out.lemma_case = op.coefficient(1) == cplx(0.0) ? "R=0" : "underdamped";
  out.solution = solve_ivp(out.problem.ivp);
  return out;
}

// ---------------------------------------------------------------- lightning rod

double rod_lambda(double eps) {
  if (!(eps > 0.0 && eps < std::exp(-1.0))) {
    throw InvalidArgument(fmt::format("lightning rod needs 0 < eps < 1/e, got {}", eps));
  }
  return -std::log(eps);
}

double rod_omega(double eps) {
  const double lam = rod_lambda(eps);
  return lam * lam * std::sqrt(1.0 - 1.0 / (lam * lam));
}

RodSolution lightning_rod_solution(const GenScalar& amplitude) {
  const GenScalar lam = GenScalar::lambda();
  const GenScalar inv_om = GenScalar::rod_omega(-1);
  const GenScalar S = GenScalar::rod_sine();
  const GenScalar C = GenScalar::rod_cosine();
  const GenScalar pref = amplitude * GenScalar::lambda(2);

  RodSolution r;
  r.amplitude = amplitude;
  r.terms = {
      {pref * (-(GenScalar::delta0() * inv_om) - S + lam * C * inv_om), RodKernel::ExpSin},
      {pref, RodKernel::CutExpCos},
      {pref * (-C - lam * S * inv_om), RodKernel::ExpCos},
      {pref * (-(lam * inv_om)), RodKernel::CutExpSin},
  };
  return r;
}

CircuitSpec lightning_rod_circuit(const GenScalar& amplitude) {
  CircuitSpec c;
  c.L = GenScalar::lambda(-2);
  c.R = GenScalar::lambda(-1) * 2.0;
  c.C = GenScalar::lambda(-2);
  c.V = Excitation::lightning(0, amplitude);
  return c;
}

std::string render(const RodSolution& r, bool latex) {
  const Format f = latex ? Format::Latex : Format::Text;
  auto kernel_name = [latex](RodKernel k) -> std::string {
    switch (k) {
      case RodKernel::ExpSin:
        return latex ? "e^{-\\lambda t}\\sin(\\omega t)" : "exp(-lambda t)*sin(omega_rod t)";
      case RodKernel::ExpCos:
        return latex ? "e^{-\\lambda t}\\cos(\\omega t)" : "exp(-lambda t)*cos(omega_rod t)";
      case RodKernel::CutExpSin:
        return latex ? "H(t)e^{-\\lambda t}\\sin(\\omega t)" : "H(t)*exp(-lambda t)*sin(omega_rod t)";
      case RodKernel::CutExpCos:
        return latex ? "H(t)e^{-\\lambda t}\\cos(\\omega t)" : "H(t)*exp(-lambda t)*cos(omega_rod t)";
    }
    return "?";
  };
  std::string out;
  for (const RodTerm& t : r.terms) {
    if (!out.empty()) out += " + ";
    out += latex ? fmt::format("\\left({}\\right){}", render(t.coefficient, f), kernel_name(t.kernel))
                 : fmt::format("({})*{}", render(t.coefficient, f), kernel_name(t.kernel));
  }
  return out;
}

double rod_current(double amplitude, double t, const MollifierSpec& m) {
  if (t <= 0.0) return 0.0;
  const double lam = rod_lambda(m.eps);
  const double om = rod_omega(m.eps);
  const double upper = std::min(t, m.eps) / m.eps;
  const double conv = integrate(
                          [&](double u) {
                            const double tau = t - m.eps * u;
                            return std::exp(-lam * tau) * (std::cos(om * tau) - lam / om * std::sin(om * tau)) *
                                   bump(m.profile, u);
                          },
                          0.0, upper, m.quad_tol)
                          .value;
  const double phi0 = mollifier_derivative(m, 0, 0.0);
  return amplitude * lam * lam * (conv - phi0 / om * std::exp(-lam * t) * std::sin(om * t));
}

double rod_current_symbolic(const RodSolution& r, double t, const MollifierSpec& m) {
  const double lam = rod_lambda(m.eps);
  const double om = rod_omega(m.eps);
  auto cut = [&](bool sine) {
    if (t <= -m.eps) return 0.0;
    const double upper = std::min(t, m.eps) / m.eps;
    return integrate(
               [&](double u) {
                 const double tau = t - m.eps * u;
                 return std::exp(-lam * tau) * (sine ? std::sin(om * tau) : std::cos(om * tau)) * bump(m.profile, u);
               },
               -1.0, upper, m.quad_tol)
        .value;
  };
  double total = 0.0;
  for (const RodTerm& term : r.terms) {
    const double c = numeric_eval_scalar(term.coefficient, m).real();
    double k = 0.0;
    switch (term.kernel) {
      case RodKernel::ExpSin:
        k = std::exp(-lam * t) * std::sin(om * t);
        break;
      case RodKernel::ExpCos:
        k = std::exp(-lam * t) * std::cos(om * t);
        break;
      case RodKernel::CutExpSin:
        k = cut(true);
        break;
      case RodKernel::CutExpCos:
        k = cut(false);
        break;
    }
    total += c * k;
  }
  return total;
}

double rod_envelope(double amplitude, double t, const MollifierSpec& m) {
  const double lam = rod_lambda(m.eps);
  const double om = rod_omega(m.eps);
  const double phi0 = mollifier_derivative(m, 0, 0.0);
  return std::abs(amplitude) * lam * lam * std::exp(-lam * (t - m.eps)) * (0.5 * (1.0 + lam / om) + phi0 / om);
}

RodSamples solve_lightning_rod(const GenScalar& amplitude, const std::vector<double>& t_grid, const MollifierSpec& m) {
  m.validate();
  rod_lambda(m.eps);
  RodSamples out;
  out.solution = lightning_rod_solution(amplitude);
  out.t = t_grid;
  out.current.assign(t_grid.size(), 0.0);
  const double a = numeric_eval_scalar(amplitude, m).real();
  const auto n = static_cast<long>(t_grid.size());
  detail::parallel_for(n, [&](long i) { out.current[i] = rod_current(a, t_grid[i], m); });
  return out;
}

}  // namespace genss
