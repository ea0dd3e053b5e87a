#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmaint/gamma_dist.hpp"
#include "gmaint/quadrature.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/special_functions.hpp"

namespace gmaint {

// Marginal law of a maintained process: an exact gamma, the sum of two
// independent gammas with different rates (the ARD1 between-repairs law, which
// is not gamma), or an empirical sample. All variants expose cdf / survival /
// stop-loss / lower-partial uniformly; pdf where it exists.
class DistributionDescriptor {
  public:
    enum class Kind { ExactGamma, GammaConvolution, Empirical };

    static DistributionDescriptor exact_gamma(GammaDistribution g) {
        DistributionDescriptor d(Kind::ExactGamma);
        d.g1_ = g;
        return d;
    }

    static DistributionDescriptor convolution(GammaDistribution g1, GammaDistribution g2) {
        // Collapse degenerate or equal-rate cases to an exact gamma.
        if (g1.degenerate()) return exact_gamma(g2);
        if (g2.degenerate()) return exact_gamma(g1);
        if (g1.rate() == g2.rate())
            return exact_gamma(GammaDistribution(g1.shape() + g2.shape(), g1.rate()));
        DistributionDescriptor d(Kind::GammaConvolution);
        // Order so that g1 carries the larger rate; the Kummer series below needs
        // a non-negative argument and the tail is governed by the smaller rate.
        if (g1.rate() >= g2.rate()) {
            d.g1_ = g1;
            d.g2_ = g2;
        } else {
            d.g1_ = g2;
            d.g2_ = g1;
        }
        d.trunc_hi_ = d.g1_.quantile(1.0 - 1e-12);
        return d;
    }

    static DistributionDescriptor empirical(std::vector<double> sample) {
        if (sample.empty()) throw std::invalid_argument("DistributionDescriptor: empty sample");
        DistributionDescriptor d(Kind::Empirical);
        std::sort(sample.begin(), sample.end());
        d.sample_ = std::move(sample);
        d.prefix_.resize(d.sample_.size() + 1, 0.0);
        for (std::size_t i = 0; i < d.sample_.size(); ++i)
            d.prefix_[i + 1] = d.prefix_[i] + d.sample_[i];
        return d;
    }

    Kind kind() const { return kind_; }
    const GammaDistribution& component1() const { return g1_; }
    const GammaDistribution& component2() const { return g2_; }
    const std::vector<double>& sample_data() const { return sample_; }

    double mean() const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.mean();
            case Kind::GammaConvolution: return g1_.mean() + g2_.mean();
            case Kind::Empirical: return prefix_.back() / static_cast<double>(sample_.size());
        }
        return 0.0;
    }

    double variance() const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.variance();
            case Kind::GammaConvolution: return g1_.variance() + g2_.variance();
            case Kind::Empirical: {
                const double m = mean();
                double acc = 0.0;
                for (double v : sample_) acc += (v - m) * (v - m);
                return acc / static_cast<double>(sample_.size() - 1);
            }
        }
        return 0.0;
    }

    double cdf(double x) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.cdf(x);
            case Kind::GammaConvolution: {
                if (x <= 0.0) return 0.0;
                return integrate_against_g1([&](double u) { return g2_.cdf(x - u); }, 0.0,
                                            std::min(x, trunc_hi_), 1e-11);
            }
            case Kind::Empirical: {
                const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
                return static_cast<double>(it - sample_.begin()) / static_cast<double>(sample_.size());
            }
        }
        return 0.0;
    }

    double survival(double x) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.survival(x);
            case Kind::GammaConvolution: {
                if (x <= 0.0) return 1.0;
                // P(S > x) = E[Q2(x - G1)] with Q2 = 1 on (-inf,0); splitting off
                // P(G1 > x) keeps both pieces small for large x.
                const double body = integrate_against_g1(
                    [&](double u) { return g2_.survival(x - u); }, 0.0, std::min(x, trunc_hi_), 1e-11);
                return body + g1_.survival(x);
            }
            case Kind::Empirical: return 1.0 - cdf(x);
        }
        return 0.0;
    }

    // E[(X - x)^+]; finite-range quadrature plus an exact tail remainder.
    double stop_loss(double x) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.stop_loss(x);
            case Kind::GammaConvolution: {
                if (x <= 0.0) return mean() - x;
                const double u_hi = std::min(x, trunc_hi_);
                const double body = integrate_against_g1(
                    [&](double u) { return g2_.stop_loss(x - u); }, 0.0, u_hi, 1e-10);
                // For G1 = u > x the inner value is m2 + u - x exactly.
                const double tail = g2_.mean() * g1_.survival(x) + g1_.stop_loss(x);
                double trunc_rem = 0.0;
                if (u_hi < x)  // mass of G1 beyond the truncation point, inside (u_hi, x]
                    trunc_rem = (g2_.mean() + x) * (g1_.survival(u_hi) - g1_.survival(x));
                return body + tail + trunc_rem;
            }
            case Kind::Empirical: {
                const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - sample_.begin());
                const std::size_t n = sample_.size();
                const double beyond = prefix_[n] - prefix_[i];
                return (beyond - x * static_cast<double>(n - i)) / static_cast<double>(n);
            }
        }
        return 0.0;
    }

    // E[(x - X)^+] = int_0^x F; direct form, no cancellation at small x.
    double lower_partial(double x) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.lower_partial(x);
            case Kind::GammaConvolution: {
                if (x <= 0.0) return 0.0;
                return integrate_against_g1([&](double u) { return g2_.lower_partial(x - u); }, 0.0,
                                            std::min(x, trunc_hi_), 1e-10);
            }
            case Kind::Empirical: {
                const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - sample_.begin());
                return (x * static_cast<double>(i) - prefix_[i]) / static_cast<double>(sample_.size());
            }
        }
        return 0.0;
    }

    double log_pdf(double x) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.log_pdf(x);
            case Kind::GammaConvolution: {
                if (x <= 0.0) return -std::numeric_limits<double>::infinity();
                // f(x) = b1^a1 b2^a2 / Gamma(a1+a2) * x^{a1+a2-1} e^{-b1 x}
                //        * M(a2, a1+a2, (b1-b2) x),  b1 >= b2.
                const double a1 = g1_.shape(), b1 = g1_.rate();
                const double a2 = g2_.shape(), b2 = g2_.rate();
                return a1 * std::log(b1) + a2 * std::log(b2) - std::lgamma(a1 + a2) +
                       (a1 + a2 - 1.0) * std::log(x) - b1 * x +
                       log_kummer_m(a2, a1 + a2, (b1 - b2) * x);
            }
            case Kind::Empirical:
                throw std::logic_error("DistributionDescriptor: pdf undefined for empirical variant");
        }
        return 0.0;
    }
    double pdf(double x) const { return std::exp(log_pdf(x)); }

    double quantile(double p) const {
        if (!(p >= 0.0 && p < 1.0))
            throw std::domain_error("DistributionDescriptor::quantile: p in [0,1)");
        switch (kind_) {
            case Kind::ExactGamma: return g1_.quantile(p);
            case Kind::GammaConvolution: {
                if (p == 0.0) return 0.0;
                double hi = mean() + 10.0 * std::sqrt(variance()) + 1.0;
                while (cdf(hi) < p) hi *= 2.0;
                double lo = 0.0;
                for (int i = 0; i < 100; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    (cdf(mid) < p ? lo : hi) = mid;
                }
                return 0.5 * (lo + hi);
            }
            case Kind::Empirical: {
                const std::size_t n = sample_.size();
                std::size_t i = static_cast<std::size_t>(p * static_cast<double>(n));
                if (i >= n) i = n - 1;
                return sample_[i];
            }
        }
        return 0.0;
    }

    double sample(RngStream& rng) const {
        switch (kind_) {
            case Kind::ExactGamma: return g1_.sample(rng);
            case Kind::GammaConvolution: return g1_.sample(rng) + g2_.sample(rng);
            case Kind::Empirical:
                return sample_[static_cast<std::size_t>(rng.uniform01() *
                                                        static_cast<double>(sample_.size()))];
        }
        return 0.0;
    }

  private:
    explicit DistributionDescriptor(Kind k) : kind_(k) {}

    // int_lo^hi inner(u) f1(u) du. When the g1 shape is below 1 the density has an
    // integrable singularity at 0; the substitution u = s^{1/a} flattens it exactly.
    template <class Inner>
    double integrate_against_g1(Inner&& inner, double lo, double hi, double tol) const {
        if (!(hi > lo)) return 0.0;
        const double a = g1_.shape(), b = g1_.rate();
        if (a >= 1.0) {
            return adaptive_simpson([&](double u) { return g1_.pdf(u) * inner(u); }, lo, hi, tol);
        }
        // f1(u) du = C e^{-b u} u^{a-1} du; with u = s^{1/a}: = (C/a) e^{-b s^{1/a}} ds
        const double logC = a * std::log(b) - std::lgamma(a);
        const double s_lo = std::pow(lo, a), s_hi = std::pow(hi, a);
        return adaptive_simpson(
            [&](double s) {
                const double u = std::pow(s, 1.0 / a);
                return std::exp(logC - b * u) / a * inner(u);
            },
            s_lo, s_hi, tol);
    }

    Kind kind_;
    GammaDistribution g1_{1.0, 1.0};
    GammaDistribution g2_{1.0, 1.0};
    double trunc_hi_ = 0.0;
    std::vector<double> sample_;
    std::vector<double> prefix_;
};

}  // namespace gmaint
