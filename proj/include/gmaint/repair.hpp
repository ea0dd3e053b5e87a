#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmaint/distribution.hpp"
#include "gmaint/errors.hpp"
#include "gmaint/gamma_dist.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/shape.hpp"

namespace gmaint {

// ARD1: the repair removes fraction rho of the deterioration accumulated since
// the last repair. ARA1: the repair removes fraction rho of the (virtual) age
// accumulated since the last repair; the system resumes from an earlier point
// of its own degradation history.
enum class RepairKind { ARD1, ARA1 };

inline const char* to_string(RepairKind k) { return k == RepairKind::ARD1 ? "ARD1" : "ARA1"; }

struct RepairProcessSpec {
    ShapeFunction shape;
    double rate_b;
    RepairKind repair;
    double rho;       // repair efficiency, in (0,1)
    double period_T;  // time between maintenance actions

    RepairProcessSpec(ShapeFunction s, double b, RepairKind k, double r, double T)
        : shape(std::move(s)), rate_b(b), repair(k), rho(r), period_T(T) {
        if (!(rate_b > 0.0)) throw std::invalid_argument("RepairProcessSpec: rate_b must be > 0");
        if (!(rho > 0.0 && rho < 1.0))
            throw std::invalid_argument("RepairProcessSpec: rho must lie in (0,1)");
        if (!(period_T > 0.0)) throw std::invalid_argument("RepairProcessSpec: period_T must be > 0");
    }
};

// The value at a repair time nT is post-repair by convention; EpochSide::pre
// exposes the left limit t -> nT^-.
enum class EpochSide { pre, post };

namespace detail {

// Number of completed repairs strictly before or at time t (post convention),
// robust to t = nT falling a few ulps off the exact multiple.
inline long completed_repairs(double t, double T) {
    long n = static_cast<long>(std::floor(t / T + 1e-9));
    if (n < 0) n = 0;
    return n;
}

inline bool on_epoch(double t, double T) {
    const long n = completed_repairs(t, T);
    return n >= 1 && std::fabs(t - static_cast<double>(n) * T) <= 1e-9 * std::max(1.0, T);
}

}  // namespace detail

// Closed-form marginal moments.
//   ARD1:  E = (A(t) - rho A(nT)) / b,   Var = (A(t) - rho (2-rho) A(nT)) / b^2
//   ARA1:  E = A(t - rho nT) / b,        Var = A(t - rho nT) / b^2
inline double mean_at(const RepairProcessSpec& spec, double t, EpochSide side = EpochSide::post) {
    if (!(t >= 0.0)) throw std::domain_error("mean_at: require t >= 0");
    long n = detail::completed_repairs(t, spec.period_T);
    if (side == EpochSide::pre && detail::on_epoch(t, spec.period_T)) --n;
    const double nT = static_cast<double>(n) * spec.period_T;
    if (spec.repair == RepairKind::ARD1)
        return (spec.shape(t) - spec.rho * spec.shape(nT)) / spec.rate_b;
    return spec.shape(t - spec.rho * nT) / spec.rate_b;
}

inline double variance_at(const RepairProcessSpec& spec, double t, EpochSide side = EpochSide::post) {
    if (!(t >= 0.0)) throw std::domain_error("variance_at: require t >= 0");
    long n = detail::completed_repairs(t, spec.period_T);
    if (side == EpochSide::pre && detail::on_epoch(t, spec.period_T)) --n;
    const double nT = static_cast<double>(n) * spec.period_T;
    const double b2 = spec.rate_b * spec.rate_b;
    if (spec.repair == RepairKind::ARD1)
        return (spec.shape(t) - spec.rho * (2.0 - spec.rho) * spec.shape(nT)) / b2;
    return spec.shape(t - spec.rho * nT) / b2;
}

// Exact marginal law.
//   ARA1: Gamma(A(t - rho nT), b) for every t.
//   ARD1 at t = nT: Gamma(A(nT), b/(1-rho)); between repairs the independent sum
//   Gamma(A(nT), b/(1-rho)) + Gamma(A(t) - A(nT), b), which is not gamma.
inline DistributionDescriptor marginal(const RepairProcessSpec& spec, double t,
                                       EpochSide side = EpochSide::post) {
    if (!(t >= 0.0)) throw std::domain_error("marginal: require t >= 0");
    long n = detail::completed_repairs(t, spec.period_T);
    const bool epoch = detail::on_epoch(t, spec.period_T);
    if (side == EpochSide::pre && epoch) --n;
    const double nT = static_cast<double>(n) * spec.period_T;

    if (spec.repair == RepairKind::ARA1)
        return DistributionDescriptor::exact_gamma(
            GammaDistribution(spec.shape(t - spec.rho * nT), spec.rate_b));

    const double a_repaired = spec.shape(nT);
    const GammaDistribution repaired(a_repaired, spec.rate_b / (1.0 - spec.rho));
    if (epoch && side == EpochSide::post) return DistributionDescriptor::exact_gamma(repaired);
    const double a_inc = spec.shape(t) - a_repaired;
    return DistributionDescriptor::convolution(repaired,
                                               GammaDistribution(std::max(a_inc, 0.0), spec.rate_b));
}

// One sampled path of the maintained process. Repair epochs carry two entries,
// the pre-repair level followed by the post-repair level at the same time;
// repair_epochs indexes the post entries.
struct MaintainedTrajectory {
    std::vector<double> times;
    std::vector<double> levels;
    std::vector<double> virtual_ages;  // equals calendar time for ARD1
    std::vector<std::size_t> repair_epochs;

    void clear() {
        times.clear();
        levels.clear();
        virtual_ages.clear();
        repair_epochs.clear();
    }
};

// Exact-in-distribution path on a dt grid. Repair times nT are always grid
// points; for ARA1 the rewind target nT + (1-rho)T is inserted as well, so the
// post-repair level is the path's own value at the reduced virtual age.
inline void simulate_into(const RepairProcessSpec& spec, double horizon, double dt, RngStream& rng,
                          MaintainedTrajectory& out) {
    if (!(horizon > 0.0)) throw std::domain_error("simulate: horizon must be > 0");
    if (!(dt > 0.0) || dt > spec.period_T)
        throw std::domain_error("simulate: require 0 < dt <= period_T");
    out.clear();

    const double T = spec.period_T;
    const bool ara = spec.repair == RepairKind::ARA1;
    const double rewind_off = (1.0 - spec.rho) * T;
    double level = 0.0;
    out.times.push_back(0.0);
    out.levels.push_back(0.0);
    out.virtual_ages.push_back(0.0);

    std::vector<double> offsets;
    long n = 0;  // completed repairs
    for (;;) {
        const double period_start = static_cast<double>(n) * T;
        if (period_start >= horizon - 1e-12) break;
        const double span = std::min(T, horizon - period_start);
        const bool full_period = span >= T - 1e-12;

        offsets.clear();
        for (double off = dt; off < span - 1e-12; off += dt) offsets.push_back(off);
        if (ara && full_period && rewind_off < span - 1e-12) {
            bool present = false;
            for (double off : offsets)
                if (std::fabs(off - rewind_off) < 1e-12) present = true;
            if (!present) offsets.push_back(rewind_off);
        }
        offsets.push_back(span);
        std::sort(offsets.begin(), offsets.end());

        const double v0 = ara ? (1.0 - spec.rho) * period_start : period_start;
        const double start_level = level;
        double level_at_rewind = std::numeric_limits<double>::quiet_NaN();
        double prev_off = 0.0;
        for (double off : offsets) {
            const double da = spec.shape(v0 + off) - spec.shape(v0 + prev_off);
            level += sample_gamma(rng, std::max(da, 0.0), spec.rate_b);
            out.times.push_back(period_start + off);
            out.levels.push_back(level);
            out.virtual_ages.push_back(ara ? v0 + off : period_start + off);
            if (ara && std::fabs(off - rewind_off) < 1e-12) level_at_rewind = level;
            prev_off = off;
        }
        if (!full_period) break;  // horizon reached inside the period

        // repair at (n+1)T; the horizon endpoint itself still gets its repair
        ++n;
        if (ara)
            level = std::isnan(level_at_rewind) ? level : level_at_rewind;
        else
            level -= spec.rho * (level - start_level);
        out.times.push_back(static_cast<double>(n) * T);
        out.levels.push_back(level);
        out.virtual_ages.push_back(ara ? (1.0 - spec.rho) * static_cast<double>(n) * T
                                       : static_cast<double>(n) * T);
        out.repair_epochs.push_back(out.times.size() - 1);
    }
}

inline MaintainedTrajectory simulate(const RepairProcessSpec& spec, double horizon, double dt,
                                     RngStream& rng) {
    MaintainedTrajectory traj;
    simulate_into(spec, horizon, dt, rng, traj);
    return traj;
}

// Draw the level at a single time by the period recursion (no dt grid); exact
// in distribution and the cheap path for moment/Monte-Carlo work.
inline double sample_level_at(const RepairProcessSpec& spec, double t, RngStream& rng) {
    if (!(t >= 0.0)) throw std::domain_error("sample_level_at: require t >= 0");
    const long n = detail::completed_repairs(t, spec.period_T);
    const double T = spec.period_T;
    double level = 0.0;
    if (spec.repair == RepairKind::ARD1) {
        for (long i = 1; i <= n; ++i) {
            const double da = spec.shape(static_cast<double>(i) * T) -
                              spec.shape(static_cast<double>(i - 1) * T);
            level += (1.0 - spec.rho) * sample_gamma(rng, std::max(da, 0.0), spec.rate_b);
        }
        const double nT = static_cast<double>(n) * T;
        if (t > nT + 1e-12)
            level += sample_gamma(rng, std::max(spec.shape(t) - spec.shape(nT), 0.0), spec.rate_b);
    } else {
        const double v = t - spec.rho * static_cast<double>(n) * T;
        level = sample_gamma(rng, spec.shape(v), spec.rate_b);
    }
    return level;
}

struct ConditionalMeanEstimate {
    double value;
    double std_error;
    std::size_t n_exceedances;
};

// Monte-Carlo estimate of E[level_t | level_t > h].
inline ConditionalMeanEstimate conditional_mean_above(const RepairProcessSpec& spec, double t,
                                                      double h, std::size_t n_reps, RngStream& rng) {
    if (!(h >= 0.0)) throw std::domain_error("conditional_mean_above: require h >= 0");
    const DistributionDescriptor law = marginal(spec, t);
    double sum = 0.0, sum2 = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_reps; ++i) {
        const double y = law.sample(rng);
        if (y > h) {
            sum += y;
            sum2 += y * y;
            ++k;
        }
    }
    if (k < 100)
        throw insufficient_sample_error(
            "conditional_mean_above: fewer than 100 exceedances above h=" + std::to_string(h));
    const double m = sum / static_cast<double>(k);
    const double var = (sum2 - static_cast<double>(k) * m * m) / static_cast<double>(k - 1);
    return {m, std::sqrt(var / static_cast<double>(k)), k};
}

}  // namespace gmaint
