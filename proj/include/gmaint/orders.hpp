#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmaint/distribution.hpp"
#include "gmaint/errors.hpp"
#include "gmaint/repair.hpp"

namespace gmaint {

enum class StochasticOrder { sto, lr, lc, icx, icv, cx, cv };
enum class OrderRelation { less_than, greater_than, not_comparable, equal };

inline const char* to_string(StochasticOrder o) {
    switch (o) {
        case StochasticOrder::sto: return "sto";
        case StochasticOrder::lr: return "lr";
        case StochasticOrder::lc: return "lc";
        case StochasticOrder::icx: return "icx";
        case StochasticOrder::icv: return "icv";
        case StochasticOrder::cx: return "cx";
        case StochasticOrder::cv: return "cv";
    }
    return "?";
}
inline const char* to_string(OrderRelation r) {
    switch (r) {
        case OrderRelation::less_than: return "less_than";
        case OrderRelation::greater_than: return "greater_than";
        case OrderRelation::not_comparable: return "not_comparable";
        case OrderRelation::equal: return "equal";
    }
    return "?";
}

// Outcome of an order comparison between a first and a second distribution.
// relation = less_than means first < second in the given order. grid/values
// hold the signed criterion curve where one was evaluated (empty for purely
// analytic verdicts); crossings are the x where the criterion changes sign.
// For the lc order the values are the log-density ratio itself and the
// relation derives from its second differences.
struct OrderVerdict {
    StochasticOrder order;
    OrderRelation relation;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> crossings;
};

// One ARD1 process (efficiency rho_ard) against one ARA1 process (rho_ara),
// sharing the shape, rate and maintenance period.
struct ComparisonScenario {
    ShapeFunction shape;
    double rate_b;
    double period_T;
    double rho_ard;
    double rho_ara;

    RepairProcessSpec ard_spec() const {
        return RepairProcessSpec(shape, rate_b, RepairKind::ARD1, rho_ard, period_T);
    }
    RepairProcessSpec ara_spec() const {
        return RepairProcessSpec(shape, rate_b, RepairKind::ARA1, rho_ara, period_T);
    }
};

namespace detail {

inline OrderRelation classify_curve(const std::vector<double>& grid, const std::vector<double>& values,
                                    double tol, std::vector<double>& crossings) {
    bool any_pos = false, any_neg = false;
    crossings.clear();
    int last_sign = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        int sign = 0;
        if (values[i] > tol) sign = 1;
        if (values[i] < -tol) sign = -1;
        if (sign > 0) any_pos = true;
        if (sign < 0) any_neg = true;
        if (sign != 0 && last_sign != 0 && sign != last_sign) {
            // linear interpolation back to the previous signed point
            std::size_t j = i;
            while (j > 0 && !(std::fabs(values[j - 1]) > tol)) --j;
            const double x0 = grid[j - 1], x1 = grid[i];
            const double y0 = values[j - 1], y1 = values[i];
            crossings.push_back(x0 + (x1 - x0) * (-y0) / (y1 - y0));
        }
        if (sign != 0) last_sign = sign;
    }
    if (any_pos && any_neg) return OrderRelation::not_comparable;
    if (any_pos) return OrderRelation::less_than;
    if (any_neg) return OrderRelation::greater_than;
    return OrderRelation::equal;
}

}  // namespace detail

// Evaluation grid for the integral criteria: 400 points from 0 to the
// (1 - 1e-8)-quantile of the heavier-tailed distribution.
inline std::vector<double> make_order_grid(const DistributionDescriptor& a,
                                           const DistributionDescriptor& b, std::size_t n = 400) {
    const double hi = std::max(a.quantile(1.0 - 1e-8), b.quantile(1.0 - 1e-8));
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = hi * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

inline double order_sign_tolerance(const DistributionDescriptor& a, const DistributionDescriptor& b) {
    return 1e-9 * (1.0 + a.mean() + b.mean());
}

// Increasing convex order: A < B iff int_x^inf survival_A <= int_x^inf survival_B
// for all x, i.e. the stop-loss difference D(x) = sl_B(x) - sl_A(x) stays >= 0.
inline OrderVerdict icx_curve(const DistributionDescriptor& a, const DistributionDescriptor& b,
                              const std::vector<double>& x_grid) {
    OrderVerdict v{StochasticOrder::icx, OrderRelation::equal, x_grid, {}, {}};
    v.values.reserve(x_grid.size());
    for (double x : x_grid) v.values.push_back(b.stop_loss(x) - a.stop_loss(x));
    v.relation = detail::classify_curve(v.grid, v.values, order_sign_tolerance(a, b), v.crossings);
    return v;
}
inline OrderVerdict icx_curve(const DistributionDescriptor& a, const DistributionDescriptor& b) {
    return icx_curve(a, b, make_order_grid(a, b));
}

// Increasing concave order: A < B iff int_0^x F_A >= int_0^x F_B for all x;
// criterion D(x) = lp_A(x) - lp_B(x) >= 0.
inline OrderVerdict icv_curve(const DistributionDescriptor& a, const DistributionDescriptor& b,
                              const std::vector<double>& x_grid) {
    OrderVerdict v{StochasticOrder::icv, OrderRelation::equal, x_grid, {}, {}};
    v.values.reserve(x_grid.size());
    for (double x : x_grid) v.values.push_back(a.lower_partial(x) - b.lower_partial(x));
    v.relation = detail::classify_curve(v.grid, v.values, order_sign_tolerance(a, b), v.crossings);
    return v;
}
inline OrderVerdict icv_curve(const DistributionDescriptor& a, const DistributionDescriptor& b) {
    return icv_curve(a, b, make_order_grid(a, b));
}

// Sufficient pairwise-gamma criteria:
//   lr : a1 <= a2 and b1 >= b2            =>  X1 < X2
//   icx: a1 >= a2 and a1/b1 <= a2/b2      =>  X1 < X2
//   icv: a1 <= a2, b1 <= b2, a1/b1<=a2/b2 =>  X1 < X2
// Only verdicts whose condition holds (in either direction) are returned.
inline std::vector<OrderVerdict> gamma_order(const GammaDistribution& d1,
                                             const GammaDistribution& d2) {
    std::vector<OrderVerdict> out;
    const double a1 = d1.shape(), b1 = d1.rate(), a2 = d2.shape(), b2 = d2.rate();
    if (a1 == a2 && b1 == b2) {
        for (auto o : {StochasticOrder::lr, StochasticOrder::icx, StochasticOrder::icv})
            out.push_back({o, OrderRelation::equal, {}, {}, {}});
        return out;
    }
    const double m1 = d1.mean(), m2 = d2.mean();
    if (a1 <= a2 && b1 >= b2)
        out.push_back({StochasticOrder::lr, OrderRelation::less_than, {}, {}, {}});
    else if (a2 <= a1 && b2 >= b1)
        out.push_back({StochasticOrder::lr, OrderRelation::greater_than, {}, {}, {}});
    if (a1 >= a2 && m1 <= m2)
        out.push_back({StochasticOrder::icx, OrderRelation::less_than, {}, {}, {}});
    else if (a2 >= a1 && m2 <= m1)
        out.push_back({StochasticOrder::icx, OrderRelation::greater_than, {}, {}, {}});
    if (a1 <= a2 && b1 <= b2 && m1 <= m2)
        out.push_back({StochasticOrder::icv, OrderRelation::less_than, {}, {}, {}});
    else if (a2 <= a1 && b2 <= b1 && m2 <= m1)
        out.push_back({StochasticOrder::icv, OrderRelation::greater_than, {}, {}, {}});
    return out;
}

// Gamma shapes of the two between-repair increments over [nT, t): the ARD1
// increment has shape A(t) - A(nT), the ARA1 increment A(t - r2 nT) - A((1-r2) nT),
// both at rate b.
struct IncrementShapes {
    double ard;
    double ara;
};
inline IncrementShapes increment_shapes(const ComparisonScenario& s, long n, double t) {
    const double nT = static_cast<double>(n) * s.period_T;
    if (!(t >= nT - 1e-12) || !(t < nT + s.period_T))
        throw std::domain_error("increment comparison requires nT <= t < (n+1)T");
    return {s.shape(t) - s.shape(nT),
            s.shape(t - s.rho_ara * nT) - s.shape((1.0 - s.rho_ara) * nT)};
}

// Analytic lr and lc verdicts for the increments, oriented (ARD-inc, ARA-inc).
// Equal rates make the density ratio y^{a_ara - a_ard}: monotone by shape
// comparison; log of the ratio has second derivative -(a_ard - a_ara)/y^2.
struct IncrementOrderVerdicts {
    OrderVerdict lr;
    OrderVerdict lc;
};
inline IncrementOrderVerdicts lr_lc_increment_compare(const ComparisonScenario& s, long n, double t) {
    const IncrementShapes a = increment_shapes(s, n, t);
    const double tol = 1e-12 * (1.0 + a.ard + a.ara);
    OrderVerdict lr{StochasticOrder::lr, OrderRelation::equal, {}, {}, {}};
    OrderVerdict lc{StochasticOrder::lc, OrderRelation::equal, {}, {}, {}};
    if (a.ard < a.ara - tol) {
        lr.relation = OrderRelation::less_than;     // ARD-inc < ARA-inc in lr
        lc.relation = OrderRelation::greater_than;  // ARA-inc < ARD-inc in lc
    } else if (a.ard > a.ara + tol) {
        lr.relation = OrderRelation::greater_than;
        lc.relation = OrderRelation::less_than;
    }
    return {lr, lc};
}

// Numerical log-concavity comparison of the full marginals at t: evaluates
// h(x) = log f_ARD(x) - log f_ARA(x) on the grid and classifies the sign of its
// second differences. Points where either density underflows are dropped; the
// verdict reports the restricted grid actually used.
inline OrderVerdict lc_full_compare(const ComparisonScenario& s, long n, double t,
                                    const std::vector<double>& x_grid) {
    const double nT = static_cast<double>(n) * s.period_T;
    if (!(t >= nT) || !(t < nT + s.period_T))
        throw std::domain_error("lc_full_compare requires nT <= t < (n+1)T");
    const DistributionDescriptor fy = marginal(s.ard_spec(), t);
    const DistributionDescriptor fz = marginal(s.ara_spec(), t);

    OrderVerdict v{StochasticOrder::lc, OrderRelation::equal, {}, {}, {}};
    for (double x : x_grid) {
        if (x <= 0.0) continue;
        const double ly = fy.log_pdf(x), lz = fz.log_pdf(x);
        if (!std::isfinite(ly) || !std::isfinite(lz) || ly < -700.0 || lz < -700.0) continue;
        v.grid.push_back(x);
        v.values.push_back(ly - lz);
    }
    if (v.grid.size() < 3) throw std::runtime_error("lc_full_compare: usable grid too small");

    // second differences on the (possibly nonuniform) restricted grid
    std::vector<double> d2(v.grid.size() - 2);
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < v.grid.size(); ++i) {
        const double h1 = v.grid[i] - v.grid[i - 1];
        const double h2 = v.grid[i + 1] - v.grid[i];
        const double dd = 2.0 * (v.values[i - 1] / (h1 * (h1 + h2)) - v.values[i] / (h1 * h2) +
                                 v.values[i + 1] / (h2 * (h1 + h2)));
        d2[i - 1] = dd;
        scale = std::max(scale, std::fabs(dd));
    }
    std::vector<double> interior(v.grid.begin() + 1, v.grid.end() - 1);
    const double tol = 1e-7 * (1.0 + scale);
    std::vector<double> cr;
    const OrderRelation sign = detail::classify_curve(interior, d2, tol, cr);
    v.crossings = cr;
    // concave log-ratio (second differences <= 0) means ARD < ARA in lc
    if (sign == OrderRelation::greater_than)
        v.relation = OrderRelation::less_than;
    else if (sign == OrderRelation::less_than)
        v.relation = OrderRelation::greater_than;
    else if (sign == OrderRelation::not_comparable)
        v.relation = OrderRelation::not_comparable;
    else
        v.relation = OrderRelation::equal;
    return v;
}

enum class DominanceDirection { z_ge_y, y_ge_z, equal, neither };

inline const char* to_string(DominanceDirection d) {
    switch (d) {
        case DominanceDirection::z_ge_y: return "ara_ge_ard";
        case DominanceDirection::y_ge_z: return "ard_ge_ara";
        case DominanceDirection::equal: return "equal";
        case DominanceDirection::neither: return "neither";
    }
    return "?";
}

struct DominanceResult {
    DominanceDirection direction;
    std::vector<double> witnesses_forward;   // t where A((1-r2)t) >= k A(t) fails
    std::vector<double> witnesses_reverse;   // t where the reversed inequality fails
};

namespace detail {

// Shared engine for the mean (k = 1-r1) and variance (k = (1-r1)^2) dominance
// tests: checks A((1-r2) t) >= k A(t) and its reverse, exactly for power laws,
// on 200 log-spaced points of [T/100, 100 T] otherwise; combines with the
// curvature flags for sufficiency.
inline DominanceResult dominance_engine(const ComparisonScenario& s, double k) {
    DominanceResult res{DominanceDirection::neither, {}, {}};
    bool forward_all = true, reverse_all = true;
    if (s.shape.is_power_law()) {
        const double beta = s.shape.power_beta();
        const double lhs = std::pow(1.0 - s.rho_ara, beta);
        forward_all = lhs >= k * (1.0 - 1e-14);
        reverse_all = lhs <= k * (1.0 + 1e-14);
        if (!forward_all) res.witnesses_forward.push_back(s.period_T);
        if (!reverse_all) res.witnesses_reverse.push_back(s.period_T);
    } else {
        const double lo = std::log(s.period_T / 100.0), hi = std::log(s.period_T * 100.0);
        for (int i = 0; i < 200; ++i) {
            const double t = std::exp(lo + (hi - lo) * i / 199.0);
            const double lhs = s.shape((1.0 - s.rho_ara) * t);
            const double rhs = k * s.shape(t);
            const double tol = 1e-12 * (1.0 + std::fabs(rhs));
            if (lhs < rhs - tol) {
                forward_all = false;
                if (res.witnesses_forward.size() < 8) res.witnesses_forward.push_back(t);
            }
            if (lhs > rhs + tol) {
                reverse_all = false;
                if (res.witnesses_reverse.size() < 8) res.witnesses_reverse.push_back(t);
            }
        }
    }
    const bool z_ge_y = s.shape.concave() && forward_all;
    const bool y_ge_z = s.shape.convex() && reverse_all;
    if (z_ge_y && y_ge_z)
        res.direction = DominanceDirection::equal;
    else if (z_ge_y)
        res.direction = DominanceDirection::z_ge_y;
    else if (y_ge_z)
        res.direction = DominanceDirection::y_ge_z;
    return res;
}

}  // namespace detail

// Does E(Z_t) >= E(Y_t) hold for all t (or the reverse)? Certified via the
// condition A((1-r2)t) >= (1-r1)A(t) plus concavity, exact for power laws.
inline DominanceResult mean_dominance(const ComparisonScenario& s) {
    return detail::dominance_engine(s, 1.0 - s.rho_ard);
}

// Same for the variances with the squared-efficiency criterion.
inline DominanceResult variance_dominance(const ComparisonScenario& s) {
    const double c = 1.0 - s.rho_ard;
    return detail::dominance_engine(s, c * c);
}

// Hypothesis-driven icx/icv comparison of the full marginals at time t:
//   shape concave + A((1-r2)t) >= (1-r1)A(t) for all t  =>  Y < Z (icx)
//   shape convex  + reversed inequality                 =>  Z < Y (icv)
// Equal means upgrade the pair to cx/cv. Every certified verdict is
// cross-validated against the numeric integral curve; disagreement throws.
// With no hypothesis satisfied the numeric curves are returned as evidence.
// Verdicts are oriented (ARD marginal, ARA marginal).
inline std::vector<OrderVerdict> theorem_icx_icv(const ComparisonScenario& s, double t) {
    const DominanceResult dom = mean_dominance(s);
    const bool icx_hyp = s.shape.concave() && (dom.direction == DominanceDirection::z_ge_y ||
                                               dom.direction == DominanceDirection::equal);
    const bool icv_hyp = s.shape.convex() && (dom.direction == DominanceDirection::y_ge_z ||
                                              dom.direction == DominanceDirection::equal);

    const DistributionDescriptor y = marginal(s.ard_spec(), t);
    const DistributionDescriptor z = marginal(s.ara_spec(), t);
    const std::vector<double> grid = make_order_grid(y, z);
    OrderVerdict icx_num = icx_curve(y, z, grid);
    OrderVerdict icv_num = icv_curve(y, z, grid);

    std::vector<OrderVerdict> out;
    const bool means_equal =
        std::fabs(y.mean() - z.mean()) <= 1e-9 * (1.0 + y.mean() + z.mean());
    if (icx_hyp) {
        if (icx_num.relation != OrderRelation::less_than && icx_num.relation != OrderRelation::equal)
            throw internal_consistency_error(
                "theorem_icx_icv: icx hypothesis certified but numeric curve disagrees");
        OrderVerdict v = icx_num;
        v.order = means_equal ? StochasticOrder::cx : StochasticOrder::icx;
        v.relation = OrderRelation::less_than;
        out.push_back(std::move(v));
    }
    if (icv_hyp) {
        if (icv_num.relation != OrderRelation::greater_than &&
            icv_num.relation != OrderRelation::equal)
            throw internal_consistency_error(
                "theorem_icx_icv: icv hypothesis certified but numeric curve disagrees");
        OrderVerdict v = icv_num;
        v.order = means_equal ? StochasticOrder::cv : StochasticOrder::icv;
        v.relation = OrderRelation::greater_than;  // ARA < ARD in icv
        out.push_back(std::move(v));
    }
    if (out.empty()) {
        out.push_back(std::move(icx_num));
        out.push_back(std::move(icv_num));
    }
    return out;
}

}  // namespace gmaint
