#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "genss/mollifier.hpp"

namespace genss {

using cplx = std::complex<double>;

/// Merged coefficients below this fraction of the operands are dropped.
inline constexpr double kCancelTol = 1e-11;
/// Per-monomial relative tolerance for normal-form equality.
inline constexpr double kEqualTol = 1e-9;
/// Exponential rates closer than this (relative) share one interned key.
inline constexpr double kRateSnapTol = 1e-9;

/// Returns the interned representative of an exponential rate. Rates reached by
/// different arithmetic routes (root finding, hand transcription) snap to one key,
/// and the table keeps conj(rate) and -rate bit-identical to their partners.
cplx snap_rate(cplx rate);

enum class AtomKind : std::uint8_t {
  S,          // canonical infinitesimal s
  DeltaEven,  // iota(delta^(2k))(0)
  KernelOddCos,  // int_0^inf oddpart(y^m e^{a y} cos(w y)) phi(y) dy
  KernelOddSin,  // same with sin
  Lambda,     // |ln s|
  RodOmega,   // lambda^2 sqrt(1 - 1/lambda^2)
  RodSine,    // integral over (-inf, 0] of e^{lambda x} sin(omega x) phi(x)
  RodCosine,  // same with cos
};

struct AtomInfo {
  AtomKind kind = AtomKind::S;
  int index = 0;  // k for DeltaEven, m for the kernel constants
  cplx rate{};    // kernel constants only: a + i w with a, w >= 0
};

using AtomId = std::uint32_t;

/// Asymptotic size eps^eps_power * |ln eps|^log_power.
struct Order {
  int eps_power = 0;
  int log_power = 0;

  bool infinitesimal() const { return eps_power > 0 || (eps_power == 0 && log_power < 0); }
  bool infinite() const { return eps_power < 0 || (eps_power == 0 && log_power > 0); }
  bool finite_scale() const { return eps_power == 0 && log_power == 0; }

  friend bool operator==(Order, Order) = default;
};

/// Negative when a vanishes faster than b, positive when it grows faster.
int compare_magnitude(Order a, Order b);

AtomInfo atom_info(AtomId id);
Order atom_order(AtomId id);
/// S, DeltaEven, Lambda and RodOmega may carry negative exponents.
bool atom_invertible(AtomId id);

class Monomial {
 public:
  using Factor = std::pair<AtomId, int>;

  Monomial() = default;
  static Monomial atom(AtomId id, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  Order order() const;
  bool invertible() const;
  Monomial inverse() const;
  bool contains(AtomKind kind) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by atom id, nonzero exponents
};

struct AsymptoticClass {
  enum class Tag { Zero, Infinitesimal, Finite, Infinite, Unknown };
  Tag tag = Tag::Zero;
  cplx standard_part{};  // meaningful for Finite only
};

const char* to_string(AsymptoticClass::Tag tag);

/// Element of the generalized-scalar field: a finite sum of complex
/// coefficients times monomials in the atoms, kept in normal form.
class GenScalar {
 public:
  using Terms = std::map<Monomial, cplx>;

  GenScalar() = default;
  GenScalar(cplx c);  // NOLINT: implicit embedding of C
  GenScalar(double c) : GenScalar(cplx(c)) {}

  static GenScalar term(cplx coefficient, Monomial m);
  static GenScalar s(int exponent = 1);
  static GenScalar delta0() { return delta_even(0); }
  static GenScalar delta_even(int k);
  /// Odd-part constant of iota(H t^m e^{rate t})(0):
  /// kernel_odd_cos(m, a, w) + i kernel_odd_sin(m, a, w) for rate = a + i w.
  static GenScalar kernel_odd(int m, cplx rate);
  /// Real components, reduced to the canonical atom with a, w >= 0.
  static GenScalar kernel_odd_cos(int m, double a, double w);
  static GenScalar kernel_odd_sin(int m, double a, double w);
  static GenScalar lambda(int exponent = 1);
  static GenScalar rod_omega(int exponent = 1);
  static GenScalar rod_sine();
  static GenScalar rod_cosine();

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant expression; nullopt when any atom appears.
  std::optional<cplx> constant() const;
  bool contains(AtomKind kind) const;
  /// Largest |coefficient|; used as the scale for tolerance checks.
  double scale() const;

  GenScalar& operator+=(const GenScalar& rhs);
  GenScalar& operator-=(const GenScalar& rhs);
  GenScalar& operator*=(const GenScalar& rhs);
  GenScalar& operator*=(cplx c);
  GenScalar& operator*=(double c) { return *this *= cplx(c); }

  friend GenScalar operator+(GenScalar a, const GenScalar& b) { return a += b; }
  friend GenScalar operator-(GenScalar a, const GenScalar& b) { return a -= b; }
  friend GenScalar operator*(const GenScalar& a, const GenScalar& b);
  friend GenScalar operator*(GenScalar a, cplx c) { return a *= c; }
  friend GenScalar operator*(cplx c, GenScalar a) { return a *= c; }
  friend GenScalar operator*(GenScalar a, double c) { return a *= cplx(c); }
  friend GenScalar operator*(double c, GenScalar a) { return a *= cplx(c); }
  friend GenScalar operator/(GenScalar a, cplx c) { return a *= (1.0 / c); }
  friend GenScalar operator/(GenScalar a, double c) { return a *= cplx(1.0 / c); }
  GenScalar operator-() const;

  /// Exact equality of normal forms (bitwise coefficients).
  friend bool operator==(const GenScalar&, const GenScalar&) = default;

 private:
  void add_term(const Monomial& m, cplx c);
  Terms terms_;
};

GenScalar gs_from_complex(cplx c);
/// Inverts a single invertible monomial term or a nonzero constant.
/// Throws NotInvertibleHere otherwise.
GenScalar gs_invert(const GenScalar& x);
GenScalar pow(const GenScalar& x, int n);

/// Normal-form equality up to kEqualTol relative per monomial.
bool approx_equal(const GenScalar& a, const GenScalar& b, double tol = kEqualTol);

AsymptoticClass classify(const GenScalar& x);

/// Image of x under the representative phi_eps of the phi-net.
cplx numeric_eval_scalar(const GenScalar& x, const MollifierSpec& m);
cplx numeric_eval_atom(AtomId id, const MollifierSpec& m);

/// Leading-order bound for an infinitesimal: C with |x| <= C*s + o(s).
/// Uses O(0, r) ~ r*mu1, O(1, r) ~ mu1 and mu1 = int_0^inf y phi <= s/2 for a
/// nonnegative even bump. nullopt when x has terms of order <= 0.
std::optional<double> first_order_bound(const GenScalar& x);

}  // namespace genss
