#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "rmtcross/quadrature.hpp"

namespace quad = rmtcross::quadrature;

TEST_CASE("finite intervals") {
    auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    REQUIRE(r.converged);
    REQUIRE(r.value == Catch::Approx(1.0 / 3.0).margin(1e-13));

    r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
    REQUIRE(r.value == Catch::Approx(2.0).margin(1e-12));

    REQUIRE(quad::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    REQUIRE_THROWS_AS(quad::integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0),
                      std::invalid_argument);
}

TEST_CASE("half line handles exponential and algebraic tails") {
    auto r = quad::integrate_half_line([](double x) { return std::exp(-x); }, 1e-12);
    REQUIRE(r.converged);
    REQUIRE(r.value == Catch::Approx(1.0).margin(1e-11));

    // Algebraic x^-2 tail, exactly the decay class of the ratio densities.
    r = quad::integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, 1e-12);
    REQUIRE(r.value == Catch::Approx(std::numbers::pi / 2.0).margin(1e-11));

    // Steep but smooth integrand forces subdivision.
    r = quad::integrate_half_line([](double x) { return std::exp(-50.0 * (x - 2.0) * (x - 2.0)); },
                                  1e-12);
    REQUIRE(r.value == Catch::Approx(std::sqrt(std::numbers::pi / 50.0)).margin(1e-11));
    REQUIRE(r.subdivisions > 0);
}

TEST_CASE("real line") {
    auto r = quad::integrate_real_line([](double x) { return std::exp(-x * x); }, 1e-12);
    REQUIRE(r.value == Catch::Approx(std::sqrt(std::numbers::pi)).margin(1e-11));
}
