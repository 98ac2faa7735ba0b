#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "rmtcross/crossover_param.hpp"

using rmtcross::CrossoverParam;

TEST_CASE("alpha/lambda round trips hold to 1e-14") {
    for (double alpha : {0.0, 1e-8, 0.01, 0.22, 0.4, 0.5, 0.9, 0.999, 1.0}) {
        const auto p = CrossoverParam::from_alpha(alpha);
        REQUIRE(p.alpha() == alpha);
        if (alpha < 1.0) {
            const auto q = CrossoverParam::from_lambda(p.lambda());
            REQUIRE(std::abs(q.alpha() - alpha) <= 1e-14 * std::max(1.0, alpha));
        }
    }
    for (double lambda : {0.0, 1e-6, 0.02, 0.3, 1.0, 50.0, 1e6}) {
        const auto p = CrossoverParam::from_lambda(lambda);
        const auto q = CrossoverParam::from_alpha(p.alpha());
        // Conversions must be consistent through the stable formulas.
        REQUIRE(p.lambda() == lambda);
        REQUIRE(std::abs(p.alpha() - lambda / std::sqrt(1.0 + lambda * lambda)) <=
                1e-14);
        REQUIRE(q.alpha() == p.alpha());
    }
}

TEST_CASE("lambda view is infinite at alpha=1 and exact at the GOE end") {
    REQUIRE(std::isinf(CrossoverParam::from_alpha(1.0).lambda()));
    REQUIRE(CrossoverParam::from_alpha(0.0).lambda() == 0.0);
    REQUIRE(CrossoverParam::from_lambda(std::numeric_limits<double>::infinity()).alpha() == 1.0);
}

TEST_CASE("one_minus_alpha_sq stays accurate near alpha=1") {
    const auto p = CrossoverParam::from_lambda(1e6);
    REQUIRE(p.one_minus_alpha_sq() == Catch::Approx(1e-12).epsilon(1e-12));
    const auto q = CrossoverParam::from_alpha(0.3);
    REQUIRE(q.one_minus_alpha_sq() == Catch::Approx(0.91).epsilon(1e-15));
}

TEST_CASE("out-of-range parameters are rejected") {
    REQUIRE_THROWS_AS(CrossoverParam::from_alpha(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(CrossoverParam::from_alpha(1.1), std::domain_error);
    REQUIRE_THROWS_AS(CrossoverParam::from_lambda(-1.0), std::domain_error);
    REQUIRE_THROWS_AS(CrossoverParam::from_alpha(std::nan("")), std::domain_error);
}
