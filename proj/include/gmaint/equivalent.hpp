#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmaint/errors.hpp"
#include "gmaint/orders.hpp"
#include "gmaint/repair.hpp"
#include "gmaint/shape.hpp"

namespace gmaint {

// For a power-law shape A(t) = alpha t^beta, the ARD1 efficiency that matches
// the ARA1 expected level at every repair time: 1 - rho1 = (1 - rho2)^beta.
inline double equivalent_rho1(double rho2, double beta) {
    if (!(rho2 > 0.0 && rho2 < 1.0))
        throw std::invalid_argument("equivalent_rho1: rho2 must lie in (0,1)");
    if (!(beta > 0.0)) throw std::invalid_argument("equivalent_rho1: beta must be > 0");
    return 1.0 - std::pow(1.0 - rho2, beta);
}

// Matching is only defined for power-law shapes.
inline double equivalent_rho1(double rho2, const ShapeFunction& shape) {
    if (!shape.is_power_law())
        throw std::invalid_argument(
            "equivalent_rho1: efficiency matching is only defined for power-law shapes");
    return equivalent_rho1(rho2, shape.power_beta());
}

// g(x) = x^beta - (x - rho2)^beta - (1 - (1-rho2)^{2 beta}) on [1,2);
// its root locates where the ARD1/ARA1 variance ranking flips inside a period.
inline double variance_gap_g(double x, double beta, double rho2) {
    return std::pow(x, beta) - std::pow(x - rho2, beta) -
           (1.0 - std::pow(1.0 - rho2, 2.0 * beta));
}

struct CrossingReport {
    double beta;
    double rho2;
    double period_T;
    double g_at_two;                  // left limit g(2^-)
    std::optional<double> x_star;     // root in (1,2), present iff g(2^-) > 0
    std::optional<double> t_star;     // ceil(1/(x*-1)) * T
    long n_star = 0;                  // ceil(1/(x*-1)), 0 when no crossing
    // per repair interval [nT, (n+1)T): the time x* n T where Var(Y)-Var(Z)
    // switches sign, or nothing when Var(Y) <= Var(Z) throughout
    std::vector<std::pair<long, std::optional<double>>> interval_classification;
};

// Variance-crossing analysis in the equivalent case, beta > 1. If g(2^-) <= 0
// the ARA1 variance dominates for all t. Otherwise the single root x* in (1,2)
// splits each early interval [nT, x* nT) / [x* nT, (n+1)T) for n < 1/(x*-1),
// and the domination is restored from t* = ceil(1/(x*-1)) T onward.
inline CrossingReport variance_crossing(double beta, double rho2, double T,
                                        long max_intervals = 12) {
    if (!(beta > 1.0))
        throw std::domain_error("variance_crossing: requires beta > 1 (for beta <= 1 the ARA1 "
                                "variance dominates at all times, no crossing exists)");
    if (!(rho2 > 0.0 && rho2 < 1.0))
        throw std::invalid_argument("variance_crossing: rho2 must lie in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("variance_crossing: T must be > 0");

    CrossingReport rep{beta, rho2, T, variance_gap_g(2.0 - 1e-12, beta, rho2), {}, {}, 0, {}};
    if (rep.g_at_two <= 0.0) {
        for (long n = 1; n <= max_intervals; ++n)
            rep.interval_classification.emplace_back(n, std::nullopt);
        return rep;
    }

    // g increases on [1,2) with g(1) < 0 < g(2^-): bisect for the root.
    double lo = 1.0, hi = 2.0 - 1e-12;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (variance_gap_g(mid, beta, rho2) < 0.0 ? lo : hi) = mid;
    }
    const double x_star = 0.5 * (lo + hi);
    rep.x_star = x_star;
    rep.n_star = static_cast<long>(std::ceil(1.0 / (x_star - 1.0)));
    rep.t_star = static_cast<double>(rep.n_star) * T;
    const long n_hi = std::min(max_intervals, rep.n_star);
    for (long n = 1; n <= n_hi; ++n) {
        if (static_cast<double>(n) < 1.0 / (x_star - 1.0))
            rep.interval_classification.emplace_back(n, x_star * static_cast<double>(n) * T);
        else
            rep.interval_classification.emplace_back(n, std::nullopt);
    }
    return rep;
}

// Order verdicts in the equivalent case (rho1 derived from rho2). At repair
// times the marginals have equal means and compare in cx/cv; at arbitrary t
// beta <= 1 gives ARD < ARA in icx and beta >= 1 gives ARA < ARD in icv.
// All certified verdicts are cross-validated numerically.
inline std::vector<OrderVerdict> equivalent_case_orders(double beta, double rho2, double T,
                                                        double t, double alpha = 1.0) {
    const double rho1 = equivalent_rho1(rho2, beta);
    const ComparisonScenario s{ShapeFunction::power_law(alpha, beta), 1.0, T, rho1, rho2};
    const DistributionDescriptor y = marginal(s.ard_spec(), t);
    const DistributionDescriptor z = marginal(s.ara_spec(), t);
    const std::vector<double> grid = make_order_grid(y, z);
    const OrderVerdict icx_num = icx_curve(y, z, grid);
    const OrderVerdict icv_num = icv_curve(y, z, grid);

    std::vector<OrderVerdict> out;
    const bool at_epoch = detail::on_epoch(t, T);
    auto certify = [&](StochasticOrder order, OrderRelation relation, const OrderVerdict& num) {
        const bool num_ok = num.relation == relation || num.relation == OrderRelation::equal;
        if (!num_ok)
            throw internal_consistency_error("equivalent_case_orders: analytic verdict for order " +
                                             std::string(to_string(order)) +
                                             " contradicts the numeric curve");
        OrderVerdict v = num;
        v.order = order;
        v.relation = relation;
        out.push_back(std::move(v));
    };

    if (at_epoch) {
        certify(StochasticOrder::cx, OrderRelation::less_than, icx_num);
        certify(StochasticOrder::cv, OrderRelation::greater_than, icv_num);
    } else {
        if (beta <= 1.0) certify(StochasticOrder::icx, OrderRelation::less_than, icx_num);
        if (beta >= 1.0) certify(StochasticOrder::icv, OrderRelation::greater_than, icv_num);
    }
    return out;
}

}  // namespace gmaint
