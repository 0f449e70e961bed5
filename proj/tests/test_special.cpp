#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "gdd/quadrature.hpp"
#include "gdd/special.hpp"

using namespace gdd;

TEST_CASE("inc_gamma")
{
    SUBCASE("zero argument is one for every order")
    {
        for (int k = 0; k < 50; ++k)
            CHECK(inc_gamma(k, 0.0) == 1.0);
    }
    SUBCASE("order one is exp(-a)")
    {
        for (double a : {1e-8, 0.3, 1.0, 7.5, 40.0})
            CHECK(inc_gamma(0, a) == doctest::Approx(std::exp(-a)).epsilon(1e-14));
    }
    SUBCASE("IG_2(1) = 2/e")
    {
        CHECK(inc_gamma(1, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));
        CHECK(inc_gamma(1, 1.0) == doctest::Approx(0.735759).epsilon(1e-6));
    }
    SUBCASE("matches the regularized upper incomplete gamma function")
    {
        for (int k : {0, 1, 2, 5, 17, 60, 150})
            for (double a : {0.01, 0.5, 2.0, 10.0, 55.0, 140.0, 600.0}) {
                const double oracle = boost::math::gamma_q(k + 1.0, a);
                CHECK(std::abs(inc_gamma(k, a) - oracle) <= 1e-13 + 1e-12 * oracle);
            }
    }
    SUBCASE("large argument underflows gracefully")
    {
        CHECK(inc_gamma(3, 1e6) == 0.0);
        CHECK(inc_gamma(3, INFINITY) == 0.0);
    }
    SUBCASE("negative argument is rejected")
    {
        CHECK_THROWS_AS(inc_gamma(2, -0.5), std::domain_error);
        CHECK_THROWS_AS(inc_gamma(-1, 0.5), std::domain_error);
    }
}

TEST_CASE("log_binom")
{
    // Pascal's triangle as the exact oracle.
    std::vector<std::vector<double>> pascal(31);
    for (int n = 0; n <= 30; ++n) {
        pascal[n].assign(n + 1, 1.0);
        for (int m = 1; m < n; ++m)
            pascal[n][m] = pascal[n - 1][m - 1] + pascal[n - 1][m];
    }
    for (int n = 0; n <= 30; ++n)
        for (int m = 0; m <= n; ++m)
            CHECK(std::exp(log_binom(n, m)) == doctest::Approx(pascal[n][m]).epsilon(1e-12));

    CHECK(std::round(std::exp(log_binom(5, 3))) == 10.0);
    CHECK(log_binom(17, 0) == 0.0);
    CHECK(log_binom(17, 17) == 0.0);
    CHECK(std::round(std::exp(log_binom(20, 10))) == 184756.0);
    CHECK_THROWS_AS(log_binom(3, 4), std::domain_error);
    CHECK_THROWS_AS(log_binom(3, -1), std::domain_error);
}

TEST_CASE("log_beta with integer arguments")
{
    // B(m,n) = (m−1)!(n−1)!/(m+n−1)!
    CHECK(std::exp(log_beta(1, 1)) == doctest::Approx(1.0));
    CHECK(std::exp(log_beta(6, 11)) == doctest::Approx(120.0 * 3628800.0 / 20922789888000.0).epsilon(1e-12));
    CHECK_THROWS_AS(log_beta(0, 3), std::domain_error);
}

TEST_CASE("CompensatedSum recovers small terms lost to naive summation")
{
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i)
        s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}

TEST_CASE("Gauss-Legendre rule on [0,1]")
{
    for (int order : {1, 2, 3, 7, 48, 96, 192}) {
        const QuadratureRule& rule = gauss_legendre(order);
        REQUIRE(rule.order() == order);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            CHECK(rule.weights[i] > 0.0);
            CHECK(rule.nodes[i] > 0.0);
            CHECK(rule.nodes[i] < 1.0);
            sum += rule.weights[i];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-14);
        // exact through degree 2·order − 1
        for (int degree : {0, 1, order, 2 * order - 1}) {
            const double exact = 1.0 / (degree + 1);
            const double approx = rule.apply([degree](double x) { return std::pow(x, degree); });
            CHECK(std::abs(approx - exact) <= 1e-13);
        }
    }
    CHECK(&gauss_legendre(96) == &gauss_legendre(96));
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("integrate_unit")
{
    SUBCASE("smooth integrand converges")
    {
        CHECK(integrate_unit([](double x) { return std::exp(-3.0 * x) * std::cos(5.0 * x); }) ==
              doctest::Approx((3.0 - std::exp(-3.0) * (3.0 * std::cos(5.0) - 5.0 * std::sin(5.0))) / 34.0)
                  .epsilon(1e-12));
    }
    SUBCASE("discontinuous integrand fails the doubling check")
    {
        CHECK_THROWS_AS(integrate_unit([](double x) { return x < 1.0 / 3.0 ? 1.0 : 0.0; }), QuadratureError);
    }
    SUBCASE("single evaluation when convergence checking is off")
    {
        QuadratureOptions o;
        o.order = 4;
        o.check_convergence = false;
        CHECK(integrate_unit([](double x) { return x * x * x * x * x * x * x; }, o) == doctest::Approx(0.125));
    }
}
