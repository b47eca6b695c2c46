#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mgcp/fractional.hpp"

using namespace mgcp;

namespace {

RateMatrix make_rates(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(r.size(), r.begin()->size());
  int row = 0;
  for (const auto& line : r) {
    int col = 0;
    for (double v : line) m(row, col++) = v;
    ++row;
  }
  return RateMatrix(m);
}

MultiTime make_time(std::initializer_list<double> t) {
  MultiTime out(t.size());
  int i = 0;
  for (double v : t) out[i++] = v;
  return out;
}

FractionalOrders make_orders(std::initializer_list<double> a) {
  FractionalOrders out(a.size());
  int i = 0;
  for (double v : a) out[i++] = v;
  return out;
}

}  // namespace

TEST_CASE("order validation") {
  CHECK_THROWS_AS(validate_orders(make_orders({0.5, 1.2}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_orders(make_orders({0.0}), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_orders(make_orders({0.5}), 2),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_orders(make_orders({0.5, 1.0}), 2));
}

TEST_CASE("stable-subordinated pmf frozen values (fractional Poisson)") {
  const RateMatrix rates = make_rates({{1.0}});
  const MultiTime t = make_time({1.0});
  const FractionalOrders a = make_orders({0.5});
  const double expected[] = {0.36787944117144232, 0.18393972058572116,
                             0.09196986029286058, 0.05364908517083534,
                             0.03544671698787335, 0.02548331545614679};
  for (int n = 0; n <= 5; ++n) {
    const SeriesResult r = space_frac_pmf(rates, t, a, n);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - expected[n]) < 1e-12);
  }
}

TEST_CASE("stable-subordinated pmf reduces to the base pmf at order 1") {
  const RateMatrix rates = make_rates({{0.6, 1.1}, {0.9, 0.4}});
  const MultiTime t = make_time({0.7, 1.2});
  const FractionalOrders ones = make_orders({1.0, 1.0});
  for (int n = 0; n <= 12; ++n)
    CHECK(std::fabs(space_frac_pmf(rates, t, ones, n).value -
                    pmf_direct(rates, t, n)) < 1e-10);
}

TEST_CASE("stable-subordinated pgf") {
  const RateMatrix rates = make_rates({{1.0}});
  const MultiTime t = make_time({1.0});
  CHECK(space_frac_pgf(rates, t, make_orders({0.5}), 1.0) ==
        doctest::Approx(1.0));
  CHECK(space_frac_pgf(rates, t, make_orders({0.5}), 0.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  const RateMatrix r2 = make_rates({{0.8, 0.5}, {0.3, 0.9}});
  const MultiTime t2 = make_time({1.0, 0.6});
  CHECK(space_frac_pgf(r2, t2, make_orders({1.0, 1.0}), 0.5) ==
        doctest::Approx(pgf(r2, t2, 0.5)).epsilon(1e-14));
}

TEST_CASE("multivariate scalar-time wrappers") {
  const RateMatrix rates = make_rates({{0.8, 0.5}, {0.3, 0.9}});
  const FractionalOrders a = make_orders({0.6, 0.9});
  CHECK(space_frac_pgf_multivariate(rates, 0.7, a, 0.5) ==
        doctest::Approx(
            space_frac_pgf(rates, make_time({0.7, 0.7}), a, 0.5)));
  const double eta = 1.3;
  CHECK(space_frac_laplace_multivariate(rates, 0.7, a, eta) ==
        doctest::Approx(
            space_frac_pgf_multivariate(rates, 0.7, a, std::exp(-eta))));
  CHECK(time_frac_pmf_multivariate(rates, 0.7, a, 2) ==
        doctest::Approx(time_frac_pmf(rates, make_time({0.7, 0.7}), a, 2)));
}

TEST_CASE("inverse-stable-subordinated pmf frozen values") {
  const RateMatrix rates = make_rates({{1.0}});
  const MultiTime t = make_time({1.0});
  const FractionalOrders a = make_orders({0.5});
  CHECK(std::fabs(time_frac_pmf(rates, t, a, 0) - 0.42758357615580700) <
        1e-13);
  CHECK(std::fabs(time_frac_pmf(rates, t, a, 1) - 0.27321201478389857) <
        1e-13);
}

TEST_CASE("inverse-stable-subordinated pmf reduces at order 1") {
  const RateMatrix rates = make_rates({{0.6, 1.1}, {0.9, 0.4}});
  const MultiTime t = make_time({0.7, 1.2});
  const FractionalOrders ones = make_orders({1.0, 1.0});
  for (int n = 0; n <= 12; ++n)
    CHECK(std::fabs(time_frac_pmf(rates, t, ones, n) -
                    pmf_direct(rates, t, n)) < 1e-10);
}

TEST_CASE("the two summation orders of the time-changed pmf agree") {
  const RateMatrix rates = make_rates({{0.7, 1.3}, {0.4, 0.2}});
  const MultiTime t = make_time({0.8, 1.4});
  const FractionalOrders a = make_orders({0.5, 0.8});
  for (int n = 0; n <= 8; ++n)
    CHECK(std::fabs(time_frac_pmf(rates, t, a, n) -
                    time_frac_pmf_omega_order(rates, t, a, n)) < 1e-10);
}

TEST_CASE("time-changed pgf") {
  const RateMatrix rates = make_rates({{0.8, 0.5}, {0.3, 0.9}});
  const MultiTime t = make_time({1.0, 0.6});
  CHECK(time_frac_pgf(rates, t, make_orders({0.5, 0.8}), 1.0) ==
        doctest::Approx(1.0));
  CHECK(time_frac_pgf(rates, t, make_orders({1.0, 1.0}), 0.5) ==
        doctest::Approx(pgf(rates, t, 0.5)).epsilon(1e-12));
  // pgf at u=0 is the zero-class probability
  const FractionalOrders a = make_orders({0.5, 0.8});
  CHECK(time_frac_pgf(rates, t, a, 0.0) ==
        doctest::Approx(time_frac_pmf(rates, t, a, 0)).epsilon(1e-12));
}

TEST_CASE("time-changed moments, frozen and closed-form") {
  const RateMatrix rates = make_rates({{1.0}});
  const MultiTime t = make_time({1.0});
  const FractionalOrders a = make_orders({0.5});
  CHECK(time_frac_mean(rates, t, a) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-13));
  CHECK(time_frac_variance(rates, t, a) ==
        doctest::Approx(1.8551396223603497).epsilon(1e-12));
}

TEST_CASE("factorial moments tie out with mean and variance") {
  const RateMatrix rates = make_rates({{0.9}, {0.5}});
  const MultiTime t = make_time({1.3});
  const FractionalOrders a = make_orders({0.6});
  CHECK(time_frac_factorial_moment(rates, t, a, 0) == doctest::Approx(1.0));
  const double m = time_frac_mean(rates, t, a);
  CHECK(time_frac_factorial_moment(rates, t, a, 1) ==
        doctest::Approx(m).epsilon(1e-12));
  const double fm2 = time_frac_factorial_moment(rates, t, a, 2);
  CHECK(fm2 + m - m * m ==
        doctest::Approx(time_frac_variance(rates, t, a)).epsilon(1e-10));
}

TEST_CASE("overdispersion for orders below 1") {
  const RateMatrix rates = make_rates({{1.2, 0.7}, {0.5, 0.9}});
  const MultiTime t = make_time({1.0, 1.5});
  const FractionalOrders a = make_orders({0.5, 0.8});
  CHECK(time_frac_variance(rates, t, a) > time_frac_mean(rates, t, a));
}

TEST_CASE("fractional derivative against monomial closed forms") {
  // D^a t^p = Gamma(p+1)/Gamma(p+1-a) t^{p-a}
  const double got = caputo_derivative(
      [](double s) { return s * s; }, 0.5, 1.0);
  CHECK(std::fabs(got - 2.0 / std::tgamma(2.5)) < 1e-6);
  // derivative singular at 0
  const double got2 = caputo_derivative(
      [](double s) { return std::sqrt(s); }, 0.5, 1.0);
  CHECK(std::fabs(got2 - std::tgamma(1.5)) < 1e-4);
  // order 1 is the classical derivative
  const double got3 = caputo_derivative(
      [](double s) { return std::exp(s); }, 1.0, 0.5);
  CHECK(got3 == doctest::Approx(std::exp(0.5)).epsilon(1e-6));
}

TEST_CASE("governing residuals") {
  const RateMatrix rates = make_rates({{0.8}, {0.6}});
  const MultiTime t = make_time({1.1});
  const FractionalOrders a = make_orders({0.5});
  const FractionalOrders ones = make_orders({1.0});
  CHECK(governing_system_residual(rates, t, ones, 2, VariantKind::base) <
        1e-6);
  CHECK(governing_system_residual(rates, t, a, 2,
                                  VariantKind::space_multiparameter) < 1e-6);
  CHECK(governing_system_residual(rates, t, a, 2,
                                  VariantKind::time_multiparameter) < 1e-3);
  CHECK_THROWS_AS(governing_system_residual(
                      rates, make_time({1.0}), a, 2,
                      VariantKind::time_multivariate),
                  std::invalid_argument);
}

TEST_CASE("multivariate governing residual takes a scalar time") {
  const RateMatrix rates = make_rates({{0.8, 0.5}});
  const FractionalOrders a = make_orders({0.6, 0.9});
  CHECK(governing_system_residual(rates, make_time({0.9}), a, 1,
                                  VariantKind::space_multivariate) < 1e-6);
  CHECK_THROWS_AS(governing_system_residual(rates, make_time({0.9, 0.9}), a, 1,
                                            VariantKind::space_multivariate),
                  std::invalid_argument);
}
