#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gmaint {

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;           // unbiased
    double fourth_central = 0.0;     // biased (moment) estimate
    std::size_t n = 0;

    double se_mean() const { return std::sqrt(variance / static_cast<double>(n)); }
    // standard error of the sample variance, using the empirical fourth moment
    // (gamma laws are far from normal; the normal-theory 2 sigma^4/(n-1) is not safe)
    double se_variance() const {
        const double nn = static_cast<double>(n);
        const double v = (fourth_central - variance * variance * (nn - 3.0) / (nn - 1.0)) / nn;
        return std::sqrt(std::max(v, 0.0));
    }
};

inline MomentSummary summarize_moments(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("summarize_moments: need at least 2 samples");
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - m;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    return {m, m2 / (n - 1.0), m4 / n, xs.size()};
}

// Kolmogorov-Smirnov critical value c(alpha) with D_crit = c / sqrt(n) for the
// one-sample test and c * sqrt((n+m)/(n m)) for the two-sample test.
inline double ks_critical_factor(double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

// One-sample KS distance of a sample against a cdf. Sorts a copy.
template <class Cdf>
double ks_statistic(std::vector<double> sample, const Cdf& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

// Two-sample KS distance.
inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace gmaint
