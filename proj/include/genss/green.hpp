#pragma once

#include <vector>

#include "genss/genfunc.hpp"

namespace genss {

/// Constant-coefficient operator P(d/dt), coefficients stored lowest order first.
class PolyOp {
 public:
  PolyOp() = default;
  /// a_0, a_1, ..., a_k. Trailing zeros are stripped; throws if the result has degree 0.
  explicit PolyOp(std::vector<cplx> ascending);
  /// a_k, ..., a_0 as written in "a_k,...,a_0".
  static PolyOp from_descending(const std::vector<cplx>& descending);
  /// lead * prod (x - r_i)^{m_i}
  static PolyOp from_roots(const std::vector<Pole>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx coefficient(int j) const { return coeffs_.at(j); }
  cplx leading() const { return coeffs_.back(); }
  bool real_coefficients() const;
  double norm() const;

  cplx operator()(cplx x) const;
  /// j-th derivative of the polynomial evaluated at x.
  cplx derivative_at(cplx x, int j) const;

  friend PolyOp operator*(const PolyOp& a, const PolyOp& b);
  friend bool operator==(const PolyOp&, const PolyOp&) = default;

 private:
  std::vector<cplx> coeffs_;
};

/// Roots with multiplicities. Companion-matrix eigenvalues, Newton polish,
/// clustering of near-equal eigenvalues into multiple roots.
/// Throws IllConditioned when the clustering is ambiguous.
std::vector<Pole> find_roots(const PolyOp& p);

struct GreenData {
  PolyOp op;
  Dist green;
  std::vector<GenScalar> constants;  // iota(G^(n))(0), n = 0..k-1
  std::vector<Pole> roots;
};

GreenData green_function(const PolyOp& p);
Dist green_derivative(const GreenData& g, int n);

/// t^m e^{rate t} per root; conjugate pairs of a real operator give
/// t^m e^{at} cos(bt), t^m e^{at} sin(bt).
std::vector<Dist> homogeneous_basis(const PolyOp& p, const std::vector<Pole>& roots);
std::vector<Dist> homogeneous_basis(const PolyOp& p);

/// sum_j a_j y^(j)
Dist apply_operator(const PolyOp& p, const Dist& y);

}  // namespace genss
