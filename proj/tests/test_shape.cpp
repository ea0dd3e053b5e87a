#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gmaint/rng.hpp"
#include "gmaint/shape.hpp"

using namespace gmaint;

TEST_CASE("closed-form evaluations") {
    const auto p = ShapeFunction::power_law(1.0, 2.0);
    REQUIRE_THAT(p(1.9), Catch::Matchers::WithinAbs(3.61, 1e-14));

    REQUIRE(ShapeFunction::exp_growth()(0.0) == 0.0);

    const auto s = ShapeFunction::sum(
        {ShapeFunction::power_law(1.0, 0.5), ShapeFunction::power_law(1.0, 0.75)});
    REQUIRE_THAT(s(4.0), Catch::Matchers::WithinAbs(2.0 + 2.8284271247461903, 1e-12));
}

TEST_CASE("A(0) = 0 for every variant") {
    const std::vector<ShapeFunction> all = {
        ShapeFunction::power_law(2.3, 0.7), ShapeFunction::linear(1.3),
        ShapeFunction::exp_growth(), ShapeFunction::exp_saturating(),
        ShapeFunction::sum({ShapeFunction::linear(2.0), ShapeFunction::exp_growth()})};
    for (const auto& f : all) REQUIRE(f(0.0) == 0.0);
}

TEST_CASE("non-decreasing on random grids") {
    RngStream rng(77, 0);
    const std::vector<ShapeFunction> all = {
        ShapeFunction::power_law(0.4, 0.3), ShapeFunction::power_law(2.0, 3.0),
        ShapeFunction::linear(0.9), ShapeFunction::exp_growth(), ShapeFunction::exp_saturating(),
        ShapeFunction::sum({ShapeFunction::power_law(1.0, 0.5), ShapeFunction::exp_growth()})};
    for (const auto& f : all) {
        for (int i = 0; i < 200; ++i) {
            const double a = 10.0 * rng.uniform01();
            const double b = a + 10.0 * rng.uniform01();
            REQUIRE(f(a) <= f(b) + 1e-12);
        }
    }
}

TEST_CASE("sum evaluates as the exact sum of its terms") {
    RngStream rng(3, 3);
    const auto f = ShapeFunction::power_law(1.7, 0.6);
    const auto g = ShapeFunction::exp_saturating();
    const auto s = ShapeFunction::sum({f, g});
    for (int i = 0; i < 100; ++i) {
        const double t = 20.0 * rng.uniform01();
        REQUIRE(s(t) == f(t) + g(t));
    }
}

TEST_CASE("curvature flags") {
    REQUIRE(ShapeFunction::power_law(1.0, 0.5).concave());
    REQUIRE_FALSE(ShapeFunction::power_law(1.0, 0.5).convex());
    REQUIRE(ShapeFunction::power_law(1.0, 2.0).convex());
    REQUIRE_FALSE(ShapeFunction::power_law(1.0, 2.0).concave());
    // beta = 1 reports both, like the linear variant
    REQUIRE(ShapeFunction::power_law(3.0, 1.0).concave());
    REQUIRE(ShapeFunction::power_law(3.0, 1.0).convex());
    REQUIRE(ShapeFunction::linear(2.0).concave());
    REQUIRE(ShapeFunction::linear(2.0).convex());
    REQUIRE(ShapeFunction::exp_growth().convex());
    REQUIRE_FALSE(ShapeFunction::exp_growth().concave());
    REQUIRE(ShapeFunction::exp_saturating().concave());

    const auto concave_sum = ShapeFunction::sum(
        {ShapeFunction::power_law(1.0, 0.5), ShapeFunction::power_law(1.0, 0.75)});
    REQUIRE(concave_sum.concave());
    REQUIRE_FALSE(concave_sum.convex());
    const auto mixed = ShapeFunction::sum(
        {ShapeFunction::power_law(1.0, 0.5), ShapeFunction::exp_growth()});
    REQUIRE_FALSE(mixed.concave());
    REQUIRE_FALSE(mixed.convex());
}

TEST_CASE("domain and parameter validation") {
    REQUIRE_THROWS_AS(ShapeFunction::power_law(1.0, 2.0)(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(ShapeFunction::power_law(0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ShapeFunction::power_law(1.0, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ShapeFunction::linear(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ShapeFunction::sum({}), std::invalid_argument);
}
