#pragma once

#include <random>
#include <vector>

#include "genss/green.hpp"

namespace rnd {

using genss::cplx;
using genss::Dist;
using genss::GenScalar;
using genss::Pole;
using genss::PolyOp;

class Source {
 public:
  explicit Source(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  // small dyadic values keep products exactly representable more often
  double coefficient() { return integer(-8, 8) / 4.0 + (integer(0, 1) ? 0.0 : 0.125); }
  std::mt19937& engine() { return gen_; }

  GenScalar atom() {
    switch (integer(0, 5)) {
      case 0: return GenScalar::s(integer(-2, 3));
      case 1: return GenScalar::delta_even(integer(0, 2));
      case 2: return GenScalar::kernel_odd_cos(integer(0, 2), integer(0, 3) * 0.5, integer(0, 2));
      case 3: return GenScalar::kernel_odd_sin(integer(0, 2), integer(0, 3) * 0.5, integer(1, 2));
      case 4: return GenScalar::delta0() * GenScalar::s(integer(1, 2));
      default: return GenScalar(1.0);
    }
  }

  GenScalar scalar(int max_terms = 3) {
    GenScalar x;
    const int n = integer(0, max_terms);
    for (int i = 0; i < n; ++i) x += coefficient() * atom();
    if (integer(0, 3) == 0) x += cplx(coefficient(), coefficient());
    return x;
  }

  cplx rate() {
    const double re = integer(-4, 2) * 0.5;
    return integer(0, 2) == 0 ? cplx(re, integer(1, 3)) : cplx(re, 0.0);
  }

  /// Random element of D'_+ built from delta and cut kernels.
  Dist causal(int max_terms = 3, bool generalized = true) {
    Dist d;
    const int n = integer(1, max_terms);
    for (int i = 0; i < n; ++i) {
      const GenScalar c = generalized && integer(0, 2) == 0 ? scalar(2) + GenScalar(1.0) : GenScalar(coefficient() + 0.5);
      if (integer(0, 2) == 0) {
        d += Dist::delta(integer(0, 2)) * c;
      } else {
        d += Dist::cut(integer(0, 2), rate()) * c;
      }
    }
    return d;
  }

  /// Real operator with well separated roots; degree 1..3.
  PolyOp op() {
    std::vector<Pole> roots;
    const int shape = integer(0, 4);
    const double r1 = integer(-6, 3) * 0.5 - 0.25;
    switch (shape) {
      case 0: roots = {{r1, 1}}; break;
      case 1: roots = {{r1, 1}, {r1 - 1.5, 1}}; break;
      case 2: roots = {{cplx(r1, 1.5), 1}, {cplx(r1, -1.5), 1}}; break;
      case 3: roots = {{r1, 2}}; break;
      default: roots = {{r1, 1}, {cplx(r1 + 0.5, 2.0), 1}, {cplx(r1 + 0.5, -2.0), 1}}; break;
    }
    return PolyOp::from_roots(roots, integer(1, 3));
  }

 private:
  std::mt19937 gen_;
};

}  // namespace rnd
