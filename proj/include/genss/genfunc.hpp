#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "genss/scalars.hpp"

namespace genss {

/// Canonical kernels of the generalized-function class:
///   Delta(n)     delta^(n)(t)
///   Cut(m, r)    H(t) t^m e^{r t}
///   Smooth(m, r) t^m e^{r t}
/// Trigonometric kernels are stored as conjugate-rate pairs.
struct Kernel {
  enum class Kind : std::uint8_t { Delta, Cut, Smooth };

  Kind kind = Kind::Delta;
  int order = 0;  // n for Delta, m for Cut / Smooth
  cplx rate{};    // snapped; zero for Delta

  static Kernel delta(int n = 0);
  static Kernel cut(int m, cplx rate);
  static Kernel smooth(int m, cplx rate);

  bool supported_on_half_line() const { return kind != Kind::Smooth; }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.kind == b.kind && a.order == b.order && a.rate == b.rate;
  }
  friend bool operator<(const Kernel& a, const Kernel& b);
};

/// A pole of a rational function: (s - rate)^multiplicity.
struct Pole {
  cplx rate{};
  int multiplicity = 1;
};

/// Finite GenScalar-weighted sum of kernels, no duplicates, no zero weights.
class Dist {
 public:
  using Terms = std::map<Kernel, GenScalar>;

  Dist() = default;
  Dist(const Kernel& k, GenScalar coefficient = GenScalar(1.0));

  static Dist delta(int n = 0) { return Dist(Kernel::delta(n)); }
  static Dist heaviside() { return Dist(Kernel::cut(0, 0.0)); }
  static Dist cut(int m, cplx rate) { return Dist(Kernel::cut(m, rate)); }
  static Dist smooth(int m, cplx rate) { return Dist(Kernel::smooth(m, rate)); }
  /// H(t) e^{decay t} cos(omega t) and the sine analogue, as conjugate pairs.
  static Dist cut_cos(double omega, double decay = 0.0);
  static Dist cut_sin(double omega, double decay = 0.0);
  static Dist smooth_cos(double omega, double decay = 0.0);
  static Dist smooth_sin(double omega, double decay = 0.0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True iff every kernel is a delta derivative or a cut kernel.
  bool supported_on_half_line() const;
  bool has_delta_terms() const;
  /// True iff every coefficient is a plain complex number.
  bool classical_coefficients() const;
  GenScalar coefficient(const Kernel& k) const;

  void add(const Kernel& k, const GenScalar& coefficient);

  Dist& operator+=(const Dist& rhs);
  Dist& operator-=(const Dist& rhs);
  Dist& operator*=(const GenScalar& c);
  friend Dist operator+(Dist a, const Dist& b) { return a += b; }
  friend Dist operator-(Dist a, const Dist& b) { return a -= b; }
  friend Dist operator*(const GenScalar& c, Dist a) { return a *= c; }
  friend Dist operator*(Dist a, const GenScalar& c) { return a *= c; }
  Dist operator-() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  Terms terms_;
};

bool approx_equal(const Dist& a, const Dist& b, double tol = kEqualTol);

Dist differentiate(const Dist& f, int times = 1);

/// Convolution on D'_+. Throws UnsupportedConvolution if either side has smooth kernels.
Dist convolve(const Dist& lhs, const Dist& rhs);

/// iota(f)(0) under the even-mollifier rules.
GenScalar eval_at_zero(const Dist& f);

/// Entry j is eval_at_zero(differentiate(f, j)), j = 0..count-1.
std::vector<GenScalar> eval_derivs_at_zero(const Dist& f, int count);

/// Inverse Laplace transform of scale / prod (s - rate_i)^{mult_i} as cut kernels.
Dist cut_partial_fractions(cplx scale, std::span<const Pole> poles);

/// Jump of f at 0: sum over cut kernels of coefficient times kernel value at 0+.
GenScalar jump_at_zero(const Dist& f);

double factorial(int n);

}  // namespace genss
