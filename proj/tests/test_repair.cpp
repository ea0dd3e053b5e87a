#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gmaint/repair.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/stats.hpp"

using namespace gmaint;

namespace {

RepairProcessSpec make_spec(ShapeFunction s, double b, RepairKind k, double rho, double T) {
    return RepairProcessSpec(std::move(s), b, k, rho, T);
}

}  // namespace

TEST_CASE("closed-form moments, linear shape") {
    const auto ard = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
    REQUIRE_THAT(mean_at(ard, 1.5), Catch::Matchers::WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(variance_at(ard, 1.5), Catch::Matchers::WithinAbs(0.75, 1e-14));

    const auto ara = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARA1, 0.5, 1.0);
    REQUIRE_THAT(mean_at(ara, 1.5), Catch::Matchers::WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(variance_at(ara, 1.5), Catch::Matchers::WithinAbs(1.0, 1e-14));
}

TEST_CASE("post-repair convention at t = nT, pre via the flag") {
    const auto ard = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
    REQUIRE_THAT(mean_at(ard, 2.0), Catch::Matchers::WithinAbs(1.0, 1e-12));  // (1-rho) A(2T)
    REQUIRE_THAT(mean_at(ard, 2.0, EpochSide::pre),
                 Catch::Matchers::WithinAbs(2.0 - 0.5 * 1.0, 1e-12));
}

TEST_CASE("marginal laws") {
    SECTION("ARA1 between repairs is an exact gamma") {
        const auto ara =
            make_spec(ShapeFunction::power_law(1.0, 0.5), 1.0, RepairKind::ARA1, 0.5, 1.0);
        const auto law = marginal(ara, 1.5);
        REQUIRE(law.kind() == DistributionDescriptor::Kind::ExactGamma);
        REQUIRE_THAT(law.component1().shape(), Catch::Matchers::WithinAbs(1.0, 1e-14));
        REQUIRE_THAT(law.mean(), Catch::Matchers::WithinAbs(1.0, 1e-14));
    }
    SECTION("ARD1 at t=0 is the unit mass at zero") {
        const auto ard = make_spec(ShapeFunction::linear(2.0), 1.5, RepairKind::ARD1, 0.3, 1.0);
        const auto law = marginal(ard, 0.0);
        REQUIRE(law.cdf(0.0) == 1.0);
        REQUIRE(law.cdf(5.0) == 1.0);
    }
    SECTION("ARD1 between repairs is the two-gamma convolution") {
        const auto ard = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
        const auto law = marginal(ard, 1.5);
        REQUIRE(law.kind() == DistributionDescriptor::Kind::GammaConvolution);
        REQUIRE_THAT(law.mean(), Catch::Matchers::WithinAbs(1.0, 1e-12));
        // survival at 1 cross-checked by Monte Carlo on 1e6 draws
        RngStream rng(31, 0);
        std::size_t beyond = 0;
        const std::size_t n = 1000000;
        for (std::size_t i = 0; i < n; ++i)
            if (law.sample(rng) > 1.0) ++beyond;
        const double p = static_cast<double>(beyond) / static_cast<double>(n);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        REQUIRE(std::fabs(law.survival(1.0) - p) < 4.0 * se);
    }
    SECTION("ARD1 at a repair time is gamma with rescaled rate") {
        const auto ard = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
        const auto law = marginal(ard, 2.0);
        REQUIRE(law.kind() == DistributionDescriptor::Kind::ExactGamma);
        REQUIRE_THAT(law.component1().shape(), Catch::Matchers::WithinAbs(2.0, 1e-12));
        REQUIRE_THAT(law.component1().rate(), Catch::Matchers::WithinAbs(2.0, 1e-12));
    }
}

TEST_CASE("simulate: structure of the trajectory") {
    const auto ard =
        make_spec(ShapeFunction::power_law(1.0, 0.75), 1.0, RepairKind::ARD1, 0.4, 1.0);
    RngStream rng(7, 0);
    const auto traj = simulate(ard, 5.0, 0.25, rng);

    REQUIRE(traj.repair_epochs.size() == 5);  // repairs at T..5T, horizon included
    for (std::size_t k = 0; k < traj.repair_epochs.size(); ++k) {
        const std::size_t i = traj.repair_epochs[k];
        REQUIRE_THAT(traj.times[i], Catch::Matchers::WithinAbs(static_cast<double>(k + 1), 1e-12));
        REQUIRE(traj.times[i] == traj.times[i - 1]);  // pre entry precedes at the same time
        // ARD1 repair removes exactly rho * (accumulated since the last repair)
        const double pre = traj.levels[i - 1];
        const double post = traj.levels[i];
        double start = 0.0;
        if (k > 0) start = traj.levels[traj.repair_epochs[k - 1]];
        REQUIRE_THAT(post, Catch::Matchers::WithinAbs(pre - 0.4 * (pre - start), 1e-10));
    }
    // levels non-decreasing between repair entries
    std::size_t r = 0;
    for (std::size_t i = 1; i < traj.levels.size(); ++i) {
        const bool is_repair = r < traj.repair_epochs.size() && traj.repair_epochs[r] == i;
        if (is_repair) {
            ++r;
            continue;
        }
        REQUIRE(traj.levels[i] >= traj.levels[i - 1] - 1e-12);
    }
    // virtual age equals calendar time for ARD1
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        REQUIRE(traj.virtual_ages[i] == traj.times[i]);
}

TEST_CASE("simulate: ARA1 virtual age and level rewind") {
    const auto ara =
        make_spec(ShapeFunction::power_law(1.0, 1.5), 1.0, RepairKind::ARA1, 0.6, 1.0);
    RngStream rng(8, 0);
    const auto traj = simulate(ara, 3.0, 0.2, rng);

    // V(t) = t - rho n T between repairs
    std::size_t r = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const bool is_repair = r < traj.repair_epochs.size() && traj.repair_epochs[r] == i;
        const double t = traj.times[i];
        long n = static_cast<long>(std::floor(t / 1.0 + 1e-9));
        if (!is_repair && n >= 1 && std::fabs(t - static_cast<double>(n)) < 1e-9) --n;  // pre entry
        if (is_repair) ++r;
        const double expected = is_repair ? t - 0.6 * t : t - 0.6 * static_cast<double>(n);
        REQUIRE_THAT(traj.virtual_ages[i], Catch::Matchers::WithinAbs(expected, 1e-9));
    }
    // the post-repair level equals the path's own value at the rewound age
    for (std::size_t k = 0; k < traj.repair_epochs.size(); ++k) {
        const std::size_t i = traj.repair_epochs[k];
        const double target_va = traj.virtual_ages[i];
        bool found = false;
        for (std::size_t j = 0; j < i; ++j)
            if (std::fabs(traj.virtual_ages[j] - target_va) < 1e-9 &&
                std::fabs(traj.levels[j] - traj.levels[i]) < 1e-12)
                found = true;
        REQUIRE(found);
        REQUIRE(traj.levels[i] <= traj.levels[i - 1] + 1e-12);  // non-increasing jump
    }
}

TEST_CASE("simulate: domain errors") {
    const auto spec = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
    RngStream rng(1, 1);
    REQUIRE_THROWS_AS(simulate(spec, 0.0, 0.1, rng), std::domain_error);
    REQUIRE_THROWS_AS(simulate(spec, 5.0, 0.0, rng), std::domain_error);
    REQUIRE_THROWS_AS(simulate(spec, 5.0, 1.5, rng), std::domain_error);  // dt > T
}

TEST_CASE("before the first repair ARD1 and ARA1 coincide path by path") {
    const auto shape = ShapeFunction::power_law(1.0, 0.8);
    const auto ard = make_spec(shape, 1.0, RepairKind::ARD1, 0.5, 2.0);
    const auto ara = make_spec(shape, 1.0, RepairKind::ARA1, 0.5, 2.0);
    RngStream r1(55, 9), r2(55, 9);
    const auto t1 = simulate(ard, 1.9, 0.1, r1);
    const auto t2 = simulate(ara, 1.9, 0.1, r2);
    REQUIRE(t1.levels.size() == t2.levels.size());
    for (std::size_t i = 0; i < t1.levels.size(); ++i) REQUIRE(t1.levels[i] == t2.levels[i]);
}

TEST_CASE("rho -> 0 limit matches the unmaintained process (two-sample KS)") {
    const auto shape = ShapeFunction::power_law(1.0, 0.75);
    const std::size_t n = 10000;
    for (RepairKind kind : {RepairKind::ARD1, RepairKind::ARA1}) {
        const auto spec = make_spec(shape, 1.0, kind, 1e-12, 1.0);
        std::vector<double> maintained(n), plain(n);
        for (std::size_t i = 0; i < n; ++i) {
            RngStream rng(60, stream_key(static_cast<std::uint64_t>(kind), i));
            maintained[i] = sample_level_at(spec, 3.0, rng);
            plain[i] = sample_gamma(rng, shape(3.0), 1.0);
        }
        const double d = ks_statistic_two_sample(maintained, plain);
        const double crit = ks_critical_factor(0.01) * std::sqrt(2.0 / static_cast<double>(n));
        REQUIRE(d < crit);
    }
}

TEST_CASE("ARD1 mean level at 2T: Linear(1), b=1, rho=0.5, T=1 gives 1.0") {
    const auto spec = make_spec(ShapeFunction::linear(1.0), 1.0, RepairKind::ARD1, 0.5, 1.0);
    const std::size_t n = 100000;
    std::vector<double> xs(n);
    MaintainedTrajectory traj;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(61, i);
        simulate_into(spec, 2.0, 0.5, rng, traj);
        xs[i] = traj.levels.back();
    }
    const auto m = summarize_moments(xs);
    REQUIRE(std::fabs(m.mean - 1.0) < 3.0 * m.se_mean());
}

TEST_CASE("simulate() agrees with the closed-form moments on a (t, rho, T) grid") {
    const auto shape =
        ShapeFunction::sum({ShapeFunction::power_law(1.0, 0.5), ShapeFunction::power_law(1.0, 0.75)});
    const std::size_t n = 20000;
    std::size_t combo = 0;
    for (RepairKind kind : {RepairKind::ARD1, RepairKind::ARA1})
        for (double rho : {0.2, 0.5, 0.8})
            for (double T : {0.7, 1.3})
                for (double t : {1.0, 3.1}) {
                    ++combo;
                    const auto spec = make_spec(shape, 1.0, kind, rho, T);
                    std::vector<double> xs(n);
                    MaintainedTrajectory traj;
                    for (std::size_t i = 0; i < n; ++i) {
                        RngStream rng(62, stream_key(combo, i));
                        simulate_into(spec, t, std::min(T, t) * 0.5, rng, traj);
                        xs[i] = traj.levels.back();
                    }
                    const auto m = summarize_moments(xs);
                    REQUIRE(std::fabs(m.mean - mean_at(spec, t)) < 4.0 * m.se_mean());
                    REQUIRE(std::fabs(m.variance - variance_at(spec, t)) < 4.0 * m.se_variance());
                }
}

TEST_CASE("distribution-law checks via KS at level 0.01") {
    const std::size_t n = 10000;
    SECTION("ARA1 marginal is Gamma(A(t - rho nT), b)") {
        const auto spec =
            make_spec(ShapeFunction::power_law(1.0, 0.7), 1.3, RepairKind::ARA1, 0.45, 1.0);
        const double t = 3.6;
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            RngStream rng(63, i);
            xs[i] = sample_level_at(spec, t, rng);
        }
        const auto law = marginal(spec, t);
        const double d = ks_statistic(std::move(xs), [&](double x) { return law.cdf(x); });
        REQUIRE(d < ks_critical_factor(0.01) / std::sqrt(static_cast<double>(n)));
    }
    SECTION("ARD1 at a repair time is Gamma(A(nT), b/(1-rho))") {
        const auto spec =
            make_spec(ShapeFunction::power_law(1.0, 0.7), 1.3, RepairKind::ARD1, 0.45, 1.0);
        const double t = 3.0;
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            RngStream rng(64, i);
            xs[i] = sample_level_at(spec, t, rng);
        }
        const auto law = marginal(spec, t);
        REQUIRE(law.kind() == DistributionDescriptor::Kind::ExactGamma);
        const double d = ks_statistic(std::move(xs), [&](double x) { return law.cdf(x); });
        REQUIRE(d < ks_critical_factor(0.01) / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("moments are non-increasing in rho (both models)") {
    const auto shape = ShapeFunction::power_law(1.2, 0.9);
    for (RepairKind kind : {RepairKind::ARD1, RepairKind::ARA1}) {
        for (double t : {1.4, 2.0, 3.7}) {
            double prev_mean = std::numeric_limits<double>::infinity();
            double prev_var = std::numeric_limits<double>::infinity();
            for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const auto spec = make_spec(shape, 1.1, kind, rho, 1.0);
                REQUIRE(mean_at(spec, t) <= prev_mean + 1e-12);
                REQUIRE(variance_at(spec, t) <= prev_var + 1e-12);
                prev_mean = mean_at(spec, t);
                prev_var = variance_at(spec, t);
            }
        }
    }
}

TEST_CASE("conditional mean above a threshold") {
    const auto spec = make_spec(ShapeFunction::power_law(1.0, 2.0), 1.0, RepairKind::ARD1, 0.95, 0.2);
    SECTION("h = 0 recovers the unconditional mean") {
        RngStream rng(65, 0);
        const auto est = conditional_mean_above(spec, 1.9, 0.0, 200000, rng);
        REQUIRE(std::fabs(est.value - mean_at(spec, 1.9)) < 4.0 * est.std_error);
    }
    SECTION("too few exceedances raise insufficient_sample_error") {
        RngStream rng(66, 0);
        REQUIRE_THROWS_AS(conditional_mean_above(spec, 1.9, 50.0, 2000, rng),
                          insufficient_sample_error);
    }
}
