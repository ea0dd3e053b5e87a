#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gmaint/reward.hpp"

using namespace gmaint;

TEST_CASE("derived b2 and critical level, first dataset") {
    const RewardSpec g(0.1, 0.25, 1.0, 1.0, 11.0, 4.0);
    REQUIRE_THAT(g.b2(), Catch::Matchers::WithinAbs(12.2265, 5e-5));
    REQUIRE_THAT(g.critical_level(), Catch::Matchers::WithinAbs(10.0144, 5e-5));
}

TEST_CASE("derived b2 and critical level, second dataset") {
    const RewardSpec g(0.4, 0.5, 1.05, 1.07, 800.0, 8.0);
    REQUIRE_THAT(g.b2(), Catch::Matchers::WithinAbs(832.6609, 5e-5));
    REQUIRE_THAT(g.critical_level(), Catch::Matchers::WithinAbs(13.3139, 5e-5));
}

TEST_CASE("pointwise values and continuity at c") {
    const RewardSpec g(0.1, 0.25, 1.0, 1.0, 11.0, 4.0);
    REQUIRE_THAT(g(0.0), Catch::Matchers::WithinAbs(11.0 - 1.0, 1e-14));
    const double eps = 1e-9;
    REQUIRE_THAT(g(4.0 - eps), Catch::Matchers::WithinAbs(g(4.0 + eps), 1e-6));
    REQUIRE_THROWS_AS(g(-0.1), std::domain_error);
}

TEST_CASE("strictly decreasing, concave, zero exactly at L") {
    const RewardSpec g(0.4, 0.5, 1.05, 1.07, 800.0, 8.0);
    const double L = g.critical_level();
    REQUIRE(std::fabs(g(L)) < 1e-10);
    REQUIRE(g(L - 0.01) > 0.0);
    REQUIRE(g(L + 0.01) < 0.0);

    double prev = g(0.0);
    for (int i = 1; i <= 300; ++i) {
        const double x = 20.0 * i / 300.0;
        REQUIRE(g(x) < prev);
        prev = g(x);
    }
    // concavity by second differences
    const double h = 20.0 / 300.0;
    for (int i = 1; i < 300; ++i) {
        const double x = 20.0 * i / 300.0;
        REQUIRE(g(x - h) - 2.0 * g(x) + g(x + h) <= 1e-9);
    }
}

TEST_CASE("parameter validation") {
    // positivity of the first branch up to c
    REQUIRE_THROWS_AS(RewardSpec(1.0, 1.0, 1.0, 1.0, 2.0, 4.0), std::invalid_argument);
    // alpha1 <= alpha2 and k1 <= k2
    REQUIRE_THROWS_AS(RewardSpec(0.5, 0.25, 1.0, 1.0, 11.0, 4.0), std::invalid_argument);
    REQUIRE_THROWS_AS(RewardSpec(0.1, 0.25, 2.0, 1.0, 11.0, 4.0), std::invalid_argument);
    REQUIRE_THROWS_AS(RewardSpec(0.1, 0.25, 1.0, 1.0, -1.0, 4.0), std::invalid_argument);
}
