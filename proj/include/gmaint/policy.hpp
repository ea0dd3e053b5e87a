#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmaint/distribution.hpp"
#include "gmaint/orders.hpp"
#include "gmaint/parallel.hpp"
#include "gmaint/repair.hpp"
#include "gmaint/reward.hpp"
#include "gmaint/rng.hpp"

namespace gmaint {

struct CostSpec {
    double repair = 0.0;       // per imperfect repair (both policies)
    double replacement = 0.0;  // full replacement at the n-th repair ((n,T) policy)
    double preventive = 0.0;   // preventive replacement ((M,T) policy)
    double corrective = 0.0;   // corrective replacement ((M,T) policy)

    bool preventive_exceeds_corrective() const { return preventive > corrective; }
};

struct NtMcConfig {
    std::size_t n_reps = 5000;      // marginal draws per Simpson node
    int simpson_subintervals = 20;  // must be even
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct MtMcConfig {
    std::size_t n_cycles = 10000;
    int steps_per_period = 50;  // path grid between inspections, dt = T/steps
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t max_periods = 100000;  // safety cap per cycle
};

struct RateEstimate {
    double rate;
    double std_error;
};

// Profit-rate surface over a policy grid plus the argmax cell. Ties break
// toward the smaller axis1 value, then the smaller axis2 value.
struct PolicyResult {
    std::vector<double> axis1;  // n values for (n,T); M values for (M,T)
    std::vector<double> axis2;  // T values
    std::vector<std::vector<double>> rates;       // [axis1][axis2]
    std::vector<std::vector<double>> std_errors;  // same layout
    std::size_t argmax_i = 0;
    std::size_t argmax_j = 0;
    std::size_t n_replications = 0;
    std::uint64_t seed = 0;

    void locate_argmax() {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rates.size(); ++i)
            for (std::size_t j = 0; j < rates[i].size(); ++j)
                if (rates[i][j] > best) {
                    best = rates[i][j];
                    argmax_i = i;
                    argmax_j = j;
                }
    }
};

namespace detail {

struct NodeEstimate {
    double mean;
    double var_of_mean;
};

// E[g(level_s)] by n_reps marginal draws.
template <class Reward>
NodeEstimate estimate_node(const RepairProcessSpec& spec, double s, EpochSide side,
                           const Reward& reward, std::size_t n_reps, RngStream& rng) {
    if (s <= 1e-12) return {reward(0.0), 0.0};
    const DistributionDescriptor law = marginal(spec, s, side);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t r = 0; r < n_reps; ++r) {
        const double v = reward(law.sample(rng));
        sum += v;
        sum2 += v * v;
    }
    const double m = sum / static_cast<double>(n_reps);
    const double var = std::max(0.0, (sum2 - static_cast<double>(n_reps) * m * m) /
                                         static_cast<double>(n_reps - 1));
    return {m, var / static_cast<double>(n_reps)};
}

}  // namespace detail

// Long-run profit rate of the (n,T) policy:
//   rate = ( int_0^{nT} E[g(level_s)] ds - (n-1) C_r - C ) / (nT)
// The integral uses composite Simpson with an even number of subintervals; the
// integrand at each node is a fresh Monte-Carlo estimate from the exact
// marginal law. Nodes that land on an interior repair epoch average the pre-
// and post-repair estimates (the integrand jumps there; the average is the
// Riemann-correct node value), and the endpoint nT uses the pre-repair law
// because the cycle ends with the old system. The spec's period_T is replaced
// by the policy's T.
template <class Reward>
RateEstimate evaluate_nt(const RepairProcessSpec& spec, const Reward& reward, const CostSpec& costs,
                         long n, double T, const NtMcConfig& cfg,
                         std::uint64_t cell_tag = 0) {
    if (n < 1) throw std::invalid_argument("evaluate_nt: n must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("evaluate_nt: T must be > 0");
    if (cfg.simpson_subintervals < 2 || cfg.simpson_subintervals % 2 != 0)
        throw std::invalid_argument("evaluate_nt: simpson_subintervals must be even and >= 2");
    if (cfg.n_reps < 2) throw std::invalid_argument("evaluate_nt: n_reps must be >= 2");

    const RepairProcessSpec run_spec(spec.shape, spec.rate_b, spec.repair, spec.rho, T);
    const int m = cfg.simpson_subintervals;
    const double horizon = static_cast<double>(n) * T;
    const double h = horizon / m;

    std::vector<detail::NodeEstimate> nodes(static_cast<std::size_t>(m) + 1);
    parallel_for_blocks(nodes.size(), 1, cfg.threads, [&](std::size_t, std::size_t lo, std::size_t) {
        const std::size_t j = lo;
        const double s = (j == static_cast<std::size_t>(m)) ? horizon : h * static_cast<double>(j);
        RngStream rng(cfg.seed, stream_key(cell_tag, static_cast<std::uint64_t>(j)));
        const long k = detail::completed_repairs(s, T);
        const bool interior_epoch = detail::on_epoch(s, T) && k >= 1 && k < n;
        if (interior_epoch) {
            const auto pre = detail::estimate_node(run_spec, s, EpochSide::pre, reward, cfg.n_reps, rng);
            const auto post =
                detail::estimate_node(run_spec, s, EpochSide::post, reward, cfg.n_reps, rng);
            nodes[j] = {0.5 * (pre.mean + post.mean), 0.25 * (pre.var_of_mean + post.var_of_mean)};
        } else {
            const EpochSide side =
                (j == static_cast<std::size_t>(m)) ? EpochSide::pre : EpochSide::post;
            nodes[j] = detail::estimate_node(run_spec, s, side, reward, cfg.n_reps, rng);
        }
    });

    double integral = 0.0, var_integral = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        integral += w * nodes[static_cast<std::size_t>(j)].mean;
        var_integral += w * w * nodes[static_cast<std::size_t>(j)].var_of_mean;
    }
    integral *= h / 3.0;
    var_integral *= (h / 3.0) * (h / 3.0);

    const double rate =
        (integral - static_cast<double>(n - 1) * costs.repair - costs.replacement) / horizon;
    return {rate, std::sqrt(var_integral) / horizon};
}

struct NtSurfaces {
    PolicyResult ard;
    PolicyResult ara;
};

// Full (n,T) surfaces for both repair models. The two models share node
// streams (common random numbers), which tightens the difference surface.
template <class Reward>
NtSurfaces optimize_nt(const ComparisonScenario& scenario, const Reward& reward,
                       const CostSpec& costs, const std::vector<long>& n_grid,
                       const std::vector<double>& T_grid, const NtMcConfig& cfg) {
    if (n_grid.empty() || T_grid.empty()) throw std::invalid_argument("optimize_nt: empty grid");
    NtSurfaces out;
    for (PolicyResult* r : {&out.ard, &out.ara}) {
        r->axis1.assign(n_grid.begin(), n_grid.end());
        r->axis2 = T_grid;
        r->rates.assign(n_grid.size(), std::vector<double>(T_grid.size(), 0.0));
        r->std_errors = r->rates;
        r->n_replications = cfg.n_reps;
        r->seed = cfg.seed;
    }

    const std::size_t n_cells = n_grid.size() * T_grid.size();
    NtMcConfig cell_cfg = cfg;
    cell_cfg.threads = 1;  // parallelism lives at the cell level
    parallel_for_blocks(n_cells, 1, cfg.threads, [&](std::size_t, std::size_t c, std::size_t) {
        const std::size_t i = c / T_grid.size();
        const std::size_t j = c % T_grid.size();
        const std::uint64_t tag = stream_key(static_cast<std::uint64_t>(i),
                                             static_cast<std::uint64_t>(j));
        const auto ard = evaluate_nt(scenario.ard_spec(), reward, costs, n_grid[i], T_grid[j],
                                     cell_cfg, tag);
        const auto ara = evaluate_nt(scenario.ara_spec(), reward, costs, n_grid[i], T_grid[j],
                                     cell_cfg, tag);
        out.ard.rates[i][j] = ard.rate;
        out.ard.std_errors[i][j] = ard.std_error;
        out.ara.rates[i][j] = ara.rate;
        out.ara.std_errors[i][j] = ara.std_error;
    });
    out.ard.locate_argmax();
    out.ara.locate_argmax();
    return out;
}

namespace detail {

struct CycleSums {
    double n = 0.0, d = 0.0, nn = 0.0, dd = 0.0, nd = 0.0;
    std::size_t count = 0;
    void add(double num, double dur) {
        n += num;
        d += dur;
        nn += num * num;
        dd += dur * dur;
        nd += num * dur;
        ++count;
    }
    void merge(const CycleSums& o) {
        n += o.n;
        d += o.d;
        nn += o.nn;
        dd += o.dd;
        nd += o.nd;
        count += o.count;
    }
};

// One renewal cycle of the (M,T) policy. Returns (net reward, duration).
// Inspections at iT check the pre-repair level: <= M repair, in (M, L)
// preventive replacement, >= L corrective replacement. The reward integral is
// a trapezoid along the simulated path, negative stretches included.
template <class Reward>
std::pair<double, double> run_mt_cycle(const RepairProcessSpec& spec, const Reward& reward,
                                       const CostSpec& costs, double M, double T,
                                       const MtMcConfig& cfg, RngStream& rng) {
    const bool ara = spec.repair == RepairKind::ARA1;
    const double L = reward.critical_level();
    const int steps = cfg.steps_per_period;
    const double dt = T / steps;
    const double rewind_off = (1.0 - spec.rho) * T;

    // per-period grid offsets; the ARA1 rewind point is a mandatory node
    std::vector<double> offsets;
    offsets.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 1; k <= steps; ++k) offsets.push_back(dt * k);
    std::size_t rewind_idx = offsets.size();  // sentinel: no rewind tracking
    if (ara) {
        std::size_t at = offsets.size();
        for (std::size_t k = 0; k < offsets.size(); ++k)
            if (std::fabs(offsets[k] - rewind_off) < 1e-12 * T) at = k;
        if (at == offsets.size() && rewind_off < T - 1e-12 * T) {
            offsets.insert(std::upper_bound(offsets.begin(), offsets.end(), rewind_off), rewind_off);
            for (std::size_t k = 0; k < offsets.size(); ++k)
                if (offsets[k] == rewind_off) at = k;
        }
        rewind_idx = at;
    }

    const bool linear = spec.shape.kind() == ShapeFunction::Kind::Linear;
    std::vector<double> da(offsets.size());
    if (linear) {
        const double slope = spec.shape.linear_slope();
        double prev = 0.0;
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            da[k] = slope * (offsets[k] - prev);
            prev = offsets[k];
        }
    }

    double level = 0.0;
    double reward_acc = 0.0;
    double cost_acc = 0.0;
    for (std::size_t period = 1; period <= cfg.max_periods; ++period) {
        const double v0 = ara ? (1.0 - spec.rho) * static_cast<double>(period - 1) * T
                              : static_cast<double>(period - 1) * T;
        if (!linear) {
            double prev = 0.0;
            for (std::size_t k = 0; k < offsets.size(); ++k) {
                da[k] = spec.shape(v0 + offsets[k]) - spec.shape(v0 + prev);
                prev = offsets[k];
            }
        }
        const double start_level = level;
        double level_at_rewind = level;
        double g_prev = reward(level);
        double prev_off = 0.0;
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            level += sample_gamma_standard(rng, std::max(da[k], 0.0)) / spec.rate_b;
            const double g_here = reward(level);
            reward_acc += 0.5 * (g_prev + g_here) * (offsets[k] - prev_off);
            g_prev = g_here;
            prev_off = offsets[k];
            if (k == rewind_idx) level_at_rewind = level;
        }

        const double pre = level;
        if (pre <= M) {
            cost_acc += costs.repair;
            level = ara ? (rewind_idx < offsets.size() ? level_at_rewind : pre)
                        : start_level + (1.0 - spec.rho) * (pre - start_level);
        } else {
            cost_acc += (pre < L) ? costs.preventive : costs.corrective;
            return {reward_acc - cost_acc, static_cast<double>(period) * T};
        }
    }
    throw std::runtime_error("evaluate_mt: cycle exceeded the period cap; "
                             "check that M < L and the degradation drifts upward");
}

}  // namespace detail

// Long-run profit rate of the (M,T) condition-based policy via independent
// renewal cycles: ratio-of-means estimator (renewal reward theorem) with a
// delta-method standard error.
template <class Reward>
RateEstimate evaluate_mt(const RepairProcessSpec& spec, const Reward& reward, const CostSpec& costs,
                         double M, double T, const MtMcConfig& cfg, std::uint64_t cell_tag = 0) {
    if (!(M >= 0.0) || M >= reward.critical_level())
        throw std::domain_error("evaluate_mt: requires 0 <= M < critical level L");
    if (!(T > 0.0)) throw std::invalid_argument("evaluate_mt: T must be > 0");
    if (cfg.steps_per_period < 1)
        throw std::invalid_argument("evaluate_mt: steps_per_period must be >= 1");
    if (cfg.n_cycles < 2) throw std::invalid_argument("evaluate_mt: n_cycles must be >= 2");

    const RepairProcessSpec run_spec(spec.shape, spec.rate_b, spec.repair, spec.rho, T);
    constexpr std::size_t kBlock = 256;
    const std::size_t n_blocks = (cfg.n_cycles + kBlock - 1) / kBlock;
    std::vector<detail::CycleSums> blocks(n_blocks);
    parallel_for_blocks(cfg.n_cycles, kBlock, cfg.threads,
                        [&](std::size_t b, std::size_t lo, std::size_t hi) {
                            detail::CycleSums sums;
                            for (std::size_t cyc = lo; cyc < hi; ++cyc) {
                                RngStream rng(cfg.seed, stream_key(cell_tag, cyc));
                                const auto [num, dur] =
                                    detail::run_mt_cycle(run_spec, reward, costs, M, T, cfg, rng);
                                sums.add(num, dur);
                            }
                            blocks[b] = sums;
                        });
    detail::CycleSums total;
    for (const auto& b : blocks) total.merge(b);

    const double n = static_cast<double>(total.count);
    const double mn = total.n / n, md = total.d / n;
    const double vn = (total.nn - n * mn * mn) / (n - 1.0);
    const double vd = (total.dd - n * md * md) / (n - 1.0);
    const double cnd = (total.nd - n * mn * md) / (n - 1.0);
    const double rate = mn / md;
    const double var_rate =
        (vn / (md * md) - 2.0 * mn * cnd / (md * md * md) + mn * mn * vd / (md * md * md * md)) / n;
    return {rate, std::sqrt(std::max(0.0, var_rate))};
}

struct MtSurfaces {
    PolicyResult ard;
    PolicyResult ara;
};

template <class Reward>
MtSurfaces optimize_mt(const ComparisonScenario& scenario, const Reward& reward,
                       const CostSpec& costs, const std::vector<double>& M_grid,
                       const std::vector<double>& T_grid, const MtMcConfig& cfg) {
    if (M_grid.empty() || T_grid.empty()) throw std::invalid_argument("optimize_mt: empty grid");
    for (double M : M_grid)
        if (!(M >= 0.0) || M >= reward.critical_level())
            throw std::invalid_argument("optimize_mt: M grid must stay inside [0, L)");
    MtSurfaces out;
    for (PolicyResult* r : {&out.ard, &out.ara}) {
        r->axis1 = M_grid;
        r->axis2 = T_grid;
        r->rates.assign(M_grid.size(), std::vector<double>(T_grid.size(), 0.0));
        r->std_errors = r->rates;
        r->n_replications = cfg.n_cycles;
        r->seed = cfg.seed;
    }

    // Parallelise cycles inside each cell (cells vary wildly in cost).
    for (std::size_t i = 0; i < M_grid.size(); ++i)
        for (std::size_t j = 0; j < T_grid.size(); ++j) {
            const std::uint64_t tag =
                stream_key(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
            const auto ard =
                evaluate_mt(scenario.ard_spec(), reward, costs, M_grid[i], T_grid[j], cfg, tag);
            const auto ara =
                evaluate_mt(scenario.ara_spec(), reward, costs, M_grid[i], T_grid[j], cfg, tag);
            out.ard.rates[i][j] = ard.rate;
            out.ard.std_errors[i][j] = ard.std_error;
            out.ara.rates[i][j] = ara.rate;
            out.ara.std_errors[i][j] = ara.std_error;
        }
    out.ard.locate_argmax();
    out.ara.locate_argmax();
    return out;
}

// Evenly spaced inclusive grid, the construction used for the policy studies.
inline std::vector<double> linspace(double from, double to, std::size_t count) {
    if (count == 0) throw std::invalid_argument("linspace: count must be >= 1");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = from;
        return v;
    }
    for (std::size_t i = 0; i < count; ++i)
        v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

}  // namespace gmaint
