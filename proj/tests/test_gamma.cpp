#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "gmaint/gamma_dist.hpp"
#include "gmaint/process.hpp"
#include "gmaint/quadrature.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/shape.hpp"
#include "gmaint/stats.hpp"

using namespace gmaint;

namespace {

// Independent oracle: integrate the density by adaptive quadrature without
// touching the incomplete-gamma code path. The substitution u = s^{1/a}
// flattens the u^{a-1} endpoint singularity when a < 1.
double cdf_by_quadrature(double a, double b, double x) {
    const double logc = a * std::log(b) - std::lgamma(a);
    if (a >= 1.0)
        return adaptive_simpson(
            [&](double u) {
                return u <= 0.0 ? 0.0 : std::exp(logc + (a - 1.0) * std::log(u) - b * u);
            },
            0.0, x, 1e-13);
    return adaptive_simpson(
        [&](double s) { return std::exp(logc - b * std::pow(s, 1.0 / a)) / a; }, 0.0,
        std::pow(x, a), 1e-13);
}

}  // namespace

TEST_CASE("cdf closed forms and frozen quadrature value") {
    const GammaDistribution exp1(1.0, 1.0);
    REQUIRE_THAT(exp1.cdf(1.0), Catch::Matchers::WithinAbs(1.0 - std::exp(-1.0), 1e-13));
    REQUIRE(exp1.cdf(0.0) == 0.0);
    REQUIRE(GammaDistribution(2.5, 1.3).cdf(0.0) == 0.0);

    // frozen oracle value, adaptive quadrature of f_{2.5,1.3} over [0,2]
    REQUIRE_THAT(GammaDistribution(2.5, 1.3).cdf(2.0),
                 Catch::Matchers::WithinAbs(0.608037108396352, 1e-9));

    // fresh quadrature cross-checks on scattered parameters
    for (const auto& [a, b, x] : std::vector<std::array<double, 3>>{
             {0.5, 2.0, 0.3}, {1.7, 0.4, 5.0}, {7.0, 1.0, 9.0}, {2.5, 1.3, 2.0}}) {
        REQUIRE_THAT(GammaDistribution(a, b).cdf(x),
                     Catch::Matchers::WithinAbs(cdf_by_quadrature(a, b, x), 1e-9));
    }
}

TEST_CASE("cdf monotone with limit 1; survival complements without cancellation") {
    const GammaDistribution d(2.5, 1.3);
    double prev = 0.0;
    for (double x = 0.0; x <= 40.0; x += 0.25) {
        const double c = d.cdf(x);
        REQUIRE(c >= prev - 1e-15);
        REQUIRE_THAT(c + d.survival(x), Catch::Matchers::WithinAbs(1.0, 1e-12));
        prev = c;
    }
    REQUIRE(std::fabs(d.cdf(1000.0) - 1.0) < 1e-10);

    // integer-shape closed form survival: Q(2,x) = e^{-x}(1+x), far tail
    const GammaDistribution g2(2.0, 1.0);
    const double x = 50.0;
    REQUIRE_THAT(g2.survival(x) / (std::exp(-x) * (1.0 + x)),
                 Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("quantile inverts cdf") {
    const GammaDistribution d(0.7, 2.2);
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999, 1.0 - 1e-8}) {
        REQUIRE_THAT(d.cdf(d.quantile(p)), Catch::Matchers::WithinAbs(p, 1e-10));
    }
    REQUIRE(d.quantile(0.0) == 0.0);
}

TEST_CASE("stop-loss and lower-partial identities") {
    const GammaDistribution d(1.8, 0.9);
    REQUIRE_THAT(d.stop_loss(0.0), Catch::Matchers::WithinAbs(d.mean(), 1e-12));
    REQUIRE(d.lower_partial(0.0) == 0.0);
    for (double x : {0.3, 1.0, 2.5, 6.0}) {
        // E[(X-x)^+] - E[(x-X)^+] = mean - x
        REQUIRE_THAT(d.stop_loss(x) - d.lower_partial(x),
                     Catch::Matchers::WithinAbs(d.mean() - x, 1e-11));
        // oracle: quadrature of the survival over [x, far]
        const double far = d.quantile(1.0 - 1e-13);
        const double sl_quad =
            adaptive_simpson([&](double u) { return d.survival(u); }, x, far, 1e-12);
        REQUIRE_THAT(d.stop_loss(x), Catch::Matchers::WithinAbs(sl_quad, 1e-9));
    }
}

TEST_CASE("sampler matches analytic moments") {
    const std::size_t n = 1000000;

    // exponential special case: a=1, b=2 has mean 1/2
    {
        RngStream rng(101, 0);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma(rng, 1.0, 2.0);
        const auto m = summarize_moments(xs);
        REQUIRE(std::fabs(m.mean - 0.5) < 3.0 * m.se_mean());
    }
    // small shape, the boosted branch: a=0.3, b=1
    {
        RngStream rng(102, 0);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma(rng, 0.3, 1.0);
        const auto m = summarize_moments(xs);
        REQUIRE(std::fabs(m.mean - 0.3) < 3.0 * m.se_mean());
    }
}

TEST_CASE("sampler mean and variance within 4 standard errors across shapes") {
    const std::size_t n = 1000000;
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{
             {0.3, 1.0}, {1.0, 2.0}, {2.5, 1.3}, {7.0, 0.5}}) {
        RngStream rng(stream_key(static_cast<std::uint64_t>(a * 100)), 5);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_gamma(rng, a, b);
        const auto m = summarize_moments(xs);
        REQUIRE(std::fabs(m.mean - a / b) < 4.0 * m.se_mean());
        REQUIRE(std::fabs(m.variance - a / (b * b)) < 4.0 * m.se_variance());
    }
}

TEST_CASE("sampler determinism") {
    RngStream a(7, 3), b(7, 3);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(sample_gamma(a, 0.7, 1.1) == sample_gamma(b, 0.7, 1.1));
}

TEST_CASE("process increments") {
    const auto lin = ShapeFunction::linear(1.3);

    SECTION("zero shape gives exactly zero") {
        RngStream rng(1, 1);
        REQUIRE(process_increment(lin, 0.8, 2.0, 2.0, rng) == 0.0);
    }
    SECTION("mean of the Linear(1.3), b=0.8 increment over [0,1] is 1.625") {
        RngStream rng(11, 0);
        const std::size_t n = 1000000;
        std::vector<double> xs(n);
        for (auto& x : xs) x = process_increment(lin, 0.8, 0.0, 1.0, rng);
        const auto m = summarize_moments(xs);
        REQUIRE(std::fabs(m.mean - 1.625) < 3.0 * m.se_mean());
    }
    SECTION("independent increments add in distribution (two-sample KS)") {
        const auto shape = ShapeFunction::power_law(1.0, 0.75);
        RngStream rng(12, 0);
        const std::size_t n = 100000;
        std::vector<double> direct(n), summed(n);
        for (auto& x : direct) x = process_increment(shape, 1.0, 0.0, 2.0, rng);
        for (auto& x : summed)
            x = process_increment(shape, 1.0, 0.0, 1.0, rng) +
                process_increment(shape, 1.0, 1.0, 2.0, rng);
        const double d = ks_statistic_two_sample(direct, summed);
        const double crit = ks_critical_factor(0.01) * std::sqrt(2.0 / static_cast<double>(n));
        REQUIRE(d < crit);
    }
    SECTION("t1 < t0 is a domain error") {
        RngStream rng(1, 1);
        REQUIRE_THROWS_AS(process_increment(lin, 0.8, 2.0, 1.0, rng), std::domain_error);
    }
}

TEST_CASE("parameter validation") {
    REQUIRE_THROWS_AS(GammaDistribution(-1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(GammaDistribution(1.0, 0.0), std::invalid_argument);
}
