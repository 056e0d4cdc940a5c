#include <doctest.h>

#include <cmath>

#include "genss/circuits.hpp"
#include "genss/errors.hpp"
#include "support/reference_forms.hpp"

using namespace genss;

TEST_CASE("regime classification") {
  CHECK(classify_regimes({0.0, 2.0, 1.0, Excitation::switch_on()}).first_order);
  const Regimes lc = classify_regimes({1.0, 0.0, 1.0, Excitation::switch_on()});
  CHECK(lc.superconductivity);
  CHECK(lc.underdamped);
  CHECK(classify_regimes({1.0, GenScalar::s(), 1.0, Excitation::switch_on()}).superconductivity);
  CHECK_FALSE(classify_regimes({1.0, 3.0, 1.0, Excitation::switch_on()}).underdamped);
  const Regimes rod = classify_regimes(lightning_rod_circuit());
  CHECK(rod.lightning_rod);
}

TEST_CASE("case labels") {
  CHECK(steady_state_current({0.0, 2.0, 1.0, Excitation::switch_on()}).lemma_case == "L=0");
  CHECK(steady_state_current({1.0, 1.0, 1.0, Excitation::switch_on()}).lemma_case == "underdamped");
  CHECK(steady_state_current({1.0, 0.0, 1.0, Excitation::switch_on()}).lemma_case == "R=0");
  CHECK(steady_state_current({1.0, 3.0, 1.0, Excitation::switch_on()}).lemma_case.empty());
}

TEST_CASE("overdamped circuit still satisfies the problem") {
  const CircuitSolution cs = steady_state_current({1.0, 3.0, 1.0, Excitation::lightning(1, 2.0)});
  CHECK(approx_equal(residual(cs.problem.ivp, cs.solution.dist), Dist()));
  for (const GenScalar& v : initial_values(cs.problem.ivp, cs.solution.dist)) CHECK(approx_equal(v, GenScalar()));
}

TEST_CASE("generalized coefficients are cleared") {
  const GenScalar d0 = GenScalar::delta0();
  const CircuitIVP c = build_ivp({0.0, 2.0 * gs_invert(d0), d0, Excitation::lightning(0)});
  CHECK(c.ivp.op.coefficient(1) == cplx(2.0));
  CHECK(c.ivp.op.coefficient(0) == cplx(1.0));
  CHECK(approx_equal(c.ivp.forcing, Dist::delta(1) * d0));
}

TEST_CASE("invalid circuits") {
  CHECK_THROWS_AS(CircuitSpec({0.0, 0.0, 1.0, Excitation::switch_on()}).validate(), InvalidArgument);
  CHECK_THROWS_AS(CircuitSpec({1.0, 1.0, 0.0, Excitation::switch_on()}).validate(), InvalidArgument);
  CHECK_THROWS_AS(build_ivp({GenScalar::s() + GenScalar(1.0), 1.0, 1.0, Excitation::switch_on()}), NotReducible);
}

TEST_CASE("switch current with a generalized amplitude") {
  const GenScalar A = GenScalar::delta0();
  const CircuitSolution cs = steady_state_current({0.0, 2.0, 0.75, Excitation::switch_on(A)});
  CHECK(approx_equal(cs.solution.dist, ref::rc_switch(2.0, 0.75, A)));
}

TEST_CASE("rod scales") {
  const double eps = 1e-2;
  const double lam = std::log(100.0);
  CHECK(rod_lambda(eps) == doctest::Approx(lam));
  CHECK(rod_omega(eps) == doctest::Approx(lam * lam * std::sqrt(1.0 - 1.0 / (lam * lam))));
  CHECK_THROWS_AS(rod_lambda(0.5), InvalidArgument);
}

TEST_CASE("rod formula agrees with its distributional-like form") {
  const MollifierSpec m = MollifierSpec::at(1e-2);
  const RodSolution r = lightning_rod_solution(2.0);
  for (double t : {0.0, 0.005, 0.02, 0.3, 0.9}) {
    const double a = rod_current(2.0, t, m);
    CHECK(rod_current_symbolic(r, t, m) == doctest::Approx(a).epsilon(1e-9).scale(1.0));
    if (t >= m.eps) CHECK(std::abs(a) <= rod_envelope(2.0, t, m) * (1 + 1e-12));
  }
  CHECK(rod_current(1.0, 0.0, m) == doctest::Approx(0.0).epsilon(1e-12));
}
