#include <doctest.h>

#include <cmath>

#include "genss/errors.hpp"
#include "genss/scalars.hpp"
#include "support/random_objects.hpp"

using namespace genss;

TEST_CASE("constants embed and cancel") {
  const GenScalar a(2.0), b(-2.0);
  CHECK((a + b).is_zero());
  CHECK((a * GenScalar(0.5)).constant() == cplx(1.0));
  CHECK(GenScalar(cplx(0.0, 1.0)) * GenScalar(cplx(0.0, 1.0)) == GenScalar(-1.0));
}

TEST_CASE("asymptotic classes") {
  // s*delta(0) is finite but its standard part rho(0) depends on the mollifier
  CHECK(classify(GenScalar::s() * GenScalar::delta0()).tag == AsymptoticClass::Tag::Unknown);
  CHECK(classify(GenScalar::s()).tag == AsymptoticClass::Tag::Infinitesimal);
  CHECK(classify(GenScalar::delta0()).tag == AsymptoticClass::Tag::Infinite);
  // delta^(4)(0) has order eps^-5
  CHECK(classify(GenScalar::delta_even(2) * GenScalar::s(4)).tag == AsymptoticClass::Tag::Infinite);
  CHECK(classify(GenScalar::delta_even(2) * GenScalar::s(6)).tag == AsymptoticClass::Tag::Infinitesimal);
}

TEST_CASE("standard part of a finite scalar") {
  const GenScalar x = GenScalar(0.25) - 0.5 * GenScalar::kernel_odd_cos(0, 1.5, 0.0) + 3.0 * GenScalar::s(2);
  const AsymptoticClass c = classify(x);
  REQUIRE(c.tag == AsymptoticClass::Tag::Finite);
  CHECK(c.standard_part.real() == doctest::Approx(0.25));
}

TEST_CASE("kernel constant sign rules") {
  // oddpart of e^{-ay}: O(0,-a) = -O(0,a); sine part is odd in w
  CHECK(approx_equal(GenScalar::kernel_odd_cos(0, -1.5, 0.0), -GenScalar::kernel_odd_cos(0, 1.5, 0.0)));
  CHECK(approx_equal(GenScalar::kernel_odd_sin(0, 0.0, -2.0), -GenScalar::kernel_odd_sin(0, 0.0, 2.0)));
  // m odd: y cosh(ay) is odd in y for every a
  CHECK(approx_equal(GenScalar::kernel_odd_cos(1, -1.0, 0.0), GenScalar::kernel_odd_cos(1, 1.0, 0.0)));
  // the odd part of cos(wy) with m = 0 vanishes
  CHECK(GenScalar::kernel_odd_cos(0, 0.0, 3.0).is_zero());
}

TEST_CASE("complex kernel constant splits into real atoms") {
  const GenScalar z = GenScalar::kernel_odd(0, cplx(-0.5, 2.0));
  const GenScalar expected =
      GenScalar::kernel_odd_cos(0, -0.5, 2.0) + cplx(0.0, 1.0) * GenScalar::kernel_odd_sin(0, -0.5, 2.0);
  CHECK(approx_equal(z, expected));
}

TEST_CASE("inversion") {
  const GenScalar x = 4.0 * GenScalar::s(2) * GenScalar::delta0();
  CHECK(approx_equal(x * gs_invert(x), GenScalar(1.0)));
  CHECK_THROWS_AS(gs_invert(GenScalar::s() + GenScalar(1.0)), NotInvertibleHere);
  CHECK_THROWS_AS(gs_invert(GenScalar()), NotInvertibleHere);
  CHECK_THROWS_AS(gs_invert(GenScalar::kernel_odd_cos(0, 1.0, 0.0)), NotInvertibleHere);
}

TEST_CASE("integer powers") {
  const GenScalar x = GenScalar(1.0) + GenScalar::s();
  CHECK(approx_equal(pow(x, 3), x * x * x));
  CHECK(approx_equal(pow(GenScalar::s(), -2) * GenScalar::s(2), GenScalar(1.0)));
}

TEST_CASE("rod atoms are ordered by log scale") {
  CHECK(classify(GenScalar::lambda()).tag == AsymptoticClass::Tag::Infinite);
  CHECK(classify(GenScalar::lambda(-2)).tag == AsymptoticClass::Tag::Infinitesimal);
  CHECK(classify(GenScalar::lambda(-1) * GenScalar::delta0()).tag == AsymptoticClass::Tag::Infinite);
  CHECK(compare_magnitude(atom_order(GenScalar::s().terms().begin()->first.factors()[0].first), Order{0, -1}) < 0);
}

// mpmath, 30 digits, standard bump
TEST_CASE("numeric atom values at eps = 0.1") {
  const MollifierSpec m = MollifierSpec::at(0.1);
  CHECK(numeric_eval_scalar(GenScalar::s(), m).real() == doctest::Approx(0.1));
  CHECK(numeric_eval_scalar(GenScalar::delta0(), m).real() == doctest::Approx(8.28568839869105151).epsilon(1e-12));
  CHECK(numeric_eval_scalar(GenScalar::kernel_odd_cos(0, 1.5, 0.0), m).real() ==
        doctest::Approx(0.02510864093175002574).epsilon(1e-11));
  CHECK(numeric_eval_scalar(GenScalar::kernel_odd_sin(0, 0.0, 1.0), m).real() ==
        doctest::Approx(0.01671541826129871811).epsilon(1e-11));
  CHECK(numeric_eval_scalar(GenScalar::kernel_odd_cos(1, 0.0, 1.0), m).real() ==
        doctest::Approx(0.01670085786028399239).epsilon(1e-11));
  CHECK(numeric_eval_scalar(GenScalar::lambda(), m).real() == doctest::Approx(-std::log(0.1)));
}

TEST_CASE("delta''(0) from the bump's second derivative") {
  const MollifierSpec m = MollifierSpec::at(0.5);
  CHECK(numeric_eval_scalar(GenScalar::delta_even(1), m).real() ==
        doctest::Approx(-1.65713767973821030 / 0.125).epsilon(1e-10));
}

TEST_CASE("first order bound covers the numeric value") {
  const GenScalar x = 2.0 * GenScalar::kernel_odd_cos(0, 1.5, 0.0) + GenScalar::kernel_odd_cos(1, 0.0, 2.0);
  const auto c = first_order_bound(x);
  REQUIRE(c.has_value());
  for (double eps : {1e-2, 1e-3}) {
    CHECK(std::abs(numeric_eval_scalar(x, MollifierSpec::at(eps))) <= *c * eps * 1.01);
  }
  CHECK_FALSE(first_order_bound(GenScalar(1.0) + x).has_value());
}

TEST_CASE("ring identities on random scalars") {
  rnd::Source src(7u);
  for (int i = 0; i < 300; ++i) {
    const GenScalar x = src.scalar(), y = src.scalar(), z = src.scalar();
    CHECK(approx_equal(x * (y + z), x * y + x * z));
    CHECK(approx_equal((x * y) * z, x * (y * z)));
    CHECK(approx_equal(x + y - y, x));
  }
}
