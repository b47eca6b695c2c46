#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mgcp/special_functions.hpp"

using namespace mgcp;

TEST_CASE("mlf3 reduces to exp at alpha=beta=gamma=1") {
  for (double x : {-30.0, -12.5, -4.0, -1.0, -0.1, 0.0, 0.5, 2.0, 5.0}) {
    const SeriesResult r = mlf3({1.0, 1.0, 1.0}, x);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::exp(x)).epsilon(1e-12));
  }
}

TEST_CASE("mlf3 matches the erfc identity at alpha=1/2") {
  // E_{1/2,1}(-x) = e^{x^2} erfc(x)
  for (double x = 0.0; x <= 3.0; x += 0.25) {
    const SeriesResult r = mlf3({0.5, 1.0, 1.0}, -x);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - std::exp(x * x) * std::erfc(x)) < 1e-10);
  }
}

TEST_CASE("mlf3 frozen values") {
  CHECK(mlf3({0.5, 1.0, 1.0}, -1.0).value ==
        doctest::Approx(0.42758357615580700).epsilon(1e-13));
  CHECK(mlf3({0.5, 1.5, 2.0}, -1.0).value ==
        doctest::Approx(0.27321201478389857).epsilon(1e-13));
}

TEST_CASE("mlf3 at zero is 1/Gamma(beta)") {
  CHECK(mlf3({0.7, 2.0, 3.0}, 0.0).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mlf3({0.7, 1.5, 3.0}, 0.0).value ==
        doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-14));
}

TEST_CASE("mlf3 flags out-of-range arguments instead of guessing") {
  const SeriesResult r = mlf3({0.5, 1.0, 1.0}, -40.0);
  CHECK_FALSE(r.converged);
  CHECK(std::isinf(r.tail_bound));
}

TEST_CASE("mlf3 reports a finite tail bound when converged") {
  const SeriesResult r = mlf3({0.8, 1.0, 2.0}, -3.0);
  CHECK(r.converged);
  CHECK(r.tail_bound >= 0.0);
  CHECK(r.tail_bound < 1e-10);
  CHECK(r.terms_used > 5);
}

TEST_CASE("mlf3 rejects non-positive parameters") {
  CHECK_THROWS_AS(mlf3({0.0, 1.0, 1.0}, 0.5), std::domain_error);
  CHECK_THROWS_AS(mlf3({1.0, -1.0, 1.0}, 0.5), std::domain_error);
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(0.5) ==
        doctest::Approx(0.57236494292470008).epsilon(1e-14));
  CHECK(log_gamma(10.0) ==
        doctest::Approx(12.801827480081469).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
}

TEST_CASE("falling factorial handles the Gamma-pole cases") {
  // integer a < m gives exactly zero
  CHECK(falling_factorial(2.0, 3) == 0.0);
  CHECK(falling_factorial(3.0, 2) == doctest::Approx(6.0));
  CHECK(falling_factorial(0.5, 2) == doctest::Approx(-0.25));
  CHECK(falling_factorial(4.0, 0) == doctest::Approx(1.0));
}

TEST_CASE("generalized binomial") {
  CHECK(generalized_binomial(0.5, 2) == doctest::Approx(-0.125));
  CHECK(generalized_binomial(3.0, 3) == doctest::Approx(1.0));
  CHECK(generalized_binomial(3.0, 4) == doctest::Approx(0.0));
}
