#include "genss/genfunc.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss {

Kernel Kernel::delta(int n) {
  if (n < 0) throw InvalidArgument("delta derivative order must be nonnegative");
  return {Kind::Delta, n, {}};
}

Kernel Kernel::cut(int m, cplx rate) {
  if (m < 0) throw InvalidArgument("kernel power must be nonnegative");
  return {Kind::Cut, m, snap_rate(rate)};
}

Kernel Kernel::smooth(int m, cplx rate) {
  if (m < 0) throw InvalidArgument("kernel power must be nonnegative");
  return {Kind::Smooth, m, snap_rate(rate)};
}

bool operator<(const Kernel& a, const Kernel& b) {
  return std::make_tuple(a.kind, a.order, a.rate.real(), a.rate.imag()) <
         std::make_tuple(b.kind, b.order, b.rate.real(), b.rate.imag());
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------- Dist

Dist::Dist(const Kernel& k, GenScalar coefficient) { add(k, coefficient); }

namespace {

Dist trig_pair(Kernel::Kind kind, double omega, double decay, bool cosine) {
  const cplx up(decay, omega);
  const cplx down(decay, -omega);
  auto make = [kind](cplx r) { return kind == Kernel::Kind::Cut ? Kernel::cut(0, r) : Kernel::smooth(0, r); };
  Dist d;
  if (cosine) {
    d.add(make(up), cplx(0.5));
    d.add(make(down), cplx(0.5));
  } else {
    d.add(make(up), cplx(0.0, -0.5));
    d.add(make(down), cplx(0.0, 0.5));
  }
  return d;
}

}  // namespace

Dist Dist::cut_cos(double omega, double decay) { return trig_pair(Kernel::Kind::Cut, omega, decay, true); }
Dist Dist::cut_sin(double omega, double decay) { return trig_pair(Kernel::Kind::Cut, omega, decay, false); }
Dist Dist::smooth_cos(double omega, double decay) { return trig_pair(Kernel::Kind::Smooth, omega, decay, true); }
Dist Dist::smooth_sin(double omega, double decay) { return trig_pair(Kernel::Kind::Smooth, omega, decay, false); }

bool Dist::supported_on_half_line() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.supported_on_half_line(); });
}

bool Dist::has_delta_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.kind == Kernel::Kind::Delta; });
}

bool Dist::classical_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_constant(); });
}

GenScalar Dist::coefficient(const Kernel& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GenScalar{} : it->second;
}

void Dist::add(const Kernel& k, const GenScalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

Dist& Dist::operator+=(const Dist& rhs) {
  if (this == &rhs) return *this *= GenScalar(2.0);
  for (const auto& [k, c] : rhs.terms_) add(k, c);
  return *this;
}

Dist& Dist::operator-=(const Dist& rhs) {
  if (this == &rhs) {
    terms_.clear();
    return *this;
  }
  for (const auto& [k, c] : rhs.terms_) add(k, -c);
  return *this;
}

Dist& Dist::operator*=(const GenScalar& c) {
  Terms out;
  for (const auto& [k, coef] : terms_) {
    GenScalar p = coef * c;
    if (!p.is_zero()) out.emplace(k, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

Dist Dist::operator-() const {
  Dist r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

bool approx_equal(const Dist& a, const Dist& b, double tol) {
  auto check = [tol](const Dist& x, const Dist& y) {
    for (const auto& [k, cx] : x.terms()) {
      if (!approx_equal(cx, y.coefficient(k), tol)) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

// ---------------------------------------------------------------- calculus

namespace {

Dist differentiate_once(const Dist& f) {
  Dist out;
  for (const auto& [k, c] : f.terms()) {
    switch (k.kind) {
      case Kernel::Kind::Delta:
        out.add(Kernel::delta(k.order + 1), c);
        break;
      case Kernel::Kind::Cut:
        if (k.order == 0) out.add(Kernel::delta(0), c);
        if (k.order > 0) out.add(Kernel::cut(k.order - 1, k.rate), c * cplx(k.order));
        out.add(k, c * k.rate);
        break;
      case Kernel::Kind::Smooth:
        if (k.order > 0) out.add(Kernel::smooth(k.order - 1, k.rate), c * cplx(k.order));
        out.add(k, c * k.rate);
        break;
    }
  }
  return out;
}

// Taylor coefficients (in h) of (d + h)^{-q}, up to h^{count-1}.
std::vector<cplx> inverse_power_series(cplx d, int q, int count) {
  std::vector<cplx> out(count);
  cplx term = std::pow(d, -q);
  for (int r = 0; r < count; ++r) {
    out[r] = term;
    // binom(-q, r+1) / binom(-q, r) = -(q + r) / (r + 1)
    term *= -static_cast<double>(q + r) / static_cast<double>(r + 1) / d;
  }
  return out;
}

std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Product of two cut kernels under convolution.
Dist convolve_cut(const Kernel& a, const Kernel& b) {
  const double scale = factorial(a.order) * factorial(b.order);
  if (a.rate == b.rate) {
    const Pole pole{a.rate, a.order + b.order + 2};
    return cut_partial_fractions(scale, std::span<const Pole>(&pole, 1));
  }
  const Pole poles[] = {{a.rate, a.order + 1}, {b.rate, b.order + 1}};
  return cut_partial_fractions(scale, poles);
}

}  // namespace

Dist differentiate(const Dist& f, int times) {
  if (times < 0) throw InvalidArgument("differentiation count must be nonnegative");
  Dist r = f;
  for (int i = 0; i < times; ++i) r = differentiate_once(r);
  return r;
}

Dist cut_partial_fractions(cplx scale, std::span<const Pole> poles) {
  Dist out;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const int mult = poles[i].multiplicity;
    std::vector<cplx> series(mult, 0.0);
    series[0] = 1.0;
    for (std::size_t l = 0; l < poles.size(); ++l) {
      if (l == i) continue;
      const cplx d = poles[i].rate - poles[l].rate;
      if (d == cplx(0.0)) throw InvalidArgument("partial fractions need distinct poles");
      series = series_product(series, inverse_power_series(d, poles[l].multiplicity, mult));
    }
    // residue of 1/(s - rate)^j is series[mult - j]; inverse transform t^{j-1} e^{rate t}/(j-1)!
    for (int j = 1; j <= mult; ++j) {
      const cplx residue = scale * series[mult - j];
      out.add(Kernel::cut(j - 1, poles[i].rate), GenScalar(residue / factorial(j - 1)));
    }
  }
  return out;
}

Dist convolve(const Dist& lhs, const Dist& rhs) {
  if (!lhs.supported_on_half_line() || !rhs.supported_on_half_line()) {
    throw UnsupportedConvolution("convolution requires both factors supported on [0, inf)");
  }
  Dist out;
  for (const auto& [ka, ca] : lhs.terms()) {
    for (const auto& [kb, cb] : rhs.terms()) {
      const GenScalar weight = ca * cb;
      if (ka.kind == Kernel::Kind::Delta) {
        out += differentiate(Dist(kb), ka.order) * weight;
      } else if (kb.kind == Kernel::Kind::Delta) {
        out += differentiate(Dist(ka), kb.order) * weight;
      } else {
        out += convolve_cut(ka, kb) * weight;
      }
    }
  }
  return out;
}

GenScalar eval_at_zero(const Dist& f) {
  GenScalar total;
  for (const auto& [k, c] : f.terms()) {
    switch (k.kind) {
      case Kernel::Kind::Delta:
        if (k.order % 2 == 0) total += c * GenScalar::delta_even(k.order / 2);
        break;
      case Kernel::Kind::Smooth:
        if (k.order == 0) total += c;
        break;
      case Kernel::Kind::Cut: {
        GenScalar value = GenScalar::kernel_odd(k.order, k.rate);
        if (k.order == 0) value += GenScalar(0.5);
        total += c * value;
        break;
      }
    }
  }
  return total;
}

std::vector<GenScalar> eval_derivs_at_zero(const Dist& f, int count) {
  std::vector<GenScalar> out;
  out.reserve(std::max(count, 0));
  Dist d = f;
  for (int j = 0; j < count; ++j) {
    out.push_back(eval_at_zero(d));
    if (j + 1 < count) d = differentiate_once(d);
  }
  return out;
}

GenScalar jump_at_zero(const Dist& f) {
  GenScalar jump;
  for (const auto& [k, c] : f.terms())
    if (k.kind == Kernel::Kind::Cut && k.order == 0) jump += c;
  return jump;
}

}  // namespace genss
