#include <doctest.h>

#include "genss/errors.hpp"
#include "genss/genfunc.hpp"
#include "genss/render.hpp"
#include "support/random_objects.hpp"

using namespace genss;

TEST_CASE("derivative of H is delta") {
  CHECK(approx_equal(differentiate(Dist::heaviside()), Dist::delta(0)));
  CHECK(approx_equal(differentiate(Dist::delta(1), 2), Dist::delta(3)));
}

TEST_CASE("product rule across the cut") {
  // (H t e^{2t})' = H e^{2t} + 2 H t e^{2t}; no delta since t vanishes at 0
  const Dist d = differentiate(Dist::cut(1, 2.0));
  CHECK(approx_equal(d, Dist::cut(0, 2.0) + Dist::cut(1, 2.0) * GenScalar(2.0)));
  // (H cos t)' = delta - H sin t
  CHECK(approx_equal(differentiate(Dist::cut_cos(1.0)), Dist::delta(0) - Dist::cut_sin(1.0)));
}

TEST_CASE("convolution of exponentials") {
  // H e^{at} * H e^{bt} = (H e^{at} - H e^{bt}) / (a - b)
  const Dist c = convolve(Dist::cut(0, -1.0), Dist::cut(0, -3.0));
  CHECK(approx_equal(c, (Dist::cut(0, -1.0) - Dist::cut(0, -3.0)) * GenScalar(0.5)));
  // equal rates raise the power
  CHECK(approx_equal(convolve(Dist::cut(0, 2.0), Dist::cut(0, 2.0)), Dist::cut(1, 2.0)));
  CHECK(approx_equal(convolve(Dist::delta(1), Dist::cut(0, 0.0)), Dist::delta(0)));
}

TEST_CASE("convolution needs causal factors") {
  CHECK_THROWS_AS(convolve(Dist::smooth(0, 1.0), Dist::delta(0)), UnsupportedConvolution);
}

TEST_CASE("values at zero") {
  CHECK(approx_equal(eval_at_zero(Dist::delta(0)), GenScalar::delta0()));
  CHECK(eval_at_zero(Dist::delta(1)).is_zero());
  CHECK(approx_equal(eval_at_zero(Dist::delta(4)), GenScalar::delta_even(2)));
  CHECK(approx_equal(eval_at_zero(Dist::smooth(0, -2.0)), GenScalar(1.0)));
  CHECK(eval_at_zero(Dist::smooth(2, -2.0)).is_zero());
  CHECK(approx_equal(eval_at_zero(Dist::heaviside()), GenScalar(0.5)));
  CHECK(approx_equal(eval_at_zero(Dist::cut_cos(4.0)), GenScalar(0.5)));
  CHECK(approx_equal(eval_at_zero(Dist::cut(0, -1.5)),
                     GenScalar(0.5) - GenScalar::kernel_odd_cos(0, 1.5, 0.0)));
}

TEST_CASE("jump at zero") {
  const Dist f = Dist::cut_cos(2.0) * GenScalar(3.0) + Dist::cut_sin(2.0) + Dist::smooth(0, 1.0);
  CHECK(approx_equal(jump_at_zero(f), GenScalar(3.0)));
}

TEST_CASE("partial fractions") {
  const std::vector<Pole> poles{{-1.0, 1}, {-2.0, 2}};
  const Dist d = cut_partial_fractions(1.0, poles);
  // 1/((s+1)(s+2)^2) = 1/(s+1) - 1/(s+2) - 1/(s+2)^2
  CHECK(approx_equal(d, Dist::cut(0, -1.0) - Dist::cut(0, -2.0) - Dist::cut(1, -2.0)));
}

TEST_CASE("random convolution and differentiation commute") {
  rnd::Source src(11u);
  for (int i = 0; i < 100; ++i) {
    const Dist f = src.causal(), g = src.causal();
    CHECK(approx_equal(differentiate(convolve(f, g)), convolve(differentiate(f), g)));
    CHECK(approx_equal(convolve(f, g), convolve(g, f)));
  }
}

TEST_CASE("cos and sin pairs render recombined") {
  CHECK(render(Dist::cut_cos(2.0, -0.5)) == "H(t)*exp(-0.5t)*cos(2t)");
  CHECK(render(Dist::smooth_sin(1.0)) == "sin(t)");
}
