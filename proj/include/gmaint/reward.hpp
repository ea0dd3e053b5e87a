#pragma once

#include <cmath>
#include <stdexcept>

namespace gmaint {

// Degradation-dependent reward per unit time:
//   g(x) = b1 - k1 e^{a1 x}   for 0 <= x <= c
//          b2 - k2 e^{a2 x}   for x > c
// with b2 fixed by continuity at c and b1 - k1 e^{a1 c} > 0 so the reward stays
// positive up to c. g is concave, strictly decreasing, and crosses zero at the
// critical level L = ln(b2/k2)/a2.
class RewardSpec {
  public:
    RewardSpec(double alpha1, double alpha2, double k1, double k2, double b1, double c)
        : alpha1_(alpha1), alpha2_(alpha2), k1_(k1), k2_(k2), b1_(b1), c_(c) {
        if (!(alpha1 > 0.0 && alpha2 > 0.0 && k1 > 0.0 && k2 > 0.0 && b1 > 0.0 && c > 0.0))
            throw std::invalid_argument("RewardSpec: all parameters must be positive");
        if (alpha1 > alpha2) throw std::invalid_argument("RewardSpec: requires alpha1 <= alpha2");
        if (k1 > k2) throw std::invalid_argument("RewardSpec: requires k1 <= k2");
        const double at_c = b1 - k1 * std::exp(alpha1 * c);
        if (!(at_c > 0.0))
            throw std::invalid_argument("RewardSpec: requires b1 - k1 e^{alpha1 c} > 0");
        b2_ = at_c + k2 * std::exp(alpha2 * c);
        L_ = std::log(b2_ / k2) / alpha2;
    }

    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }
    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double b1() const { return b1_; }
    double b2() const { return b2_; }
    double c() const { return c_; }
    double critical_level() const { return L_; }

    double operator()(double x) const {
        if (!(x >= 0.0)) throw std::domain_error("RewardSpec: require x >= 0");
        if (x <= c_) return b1_ - k1_ * std::exp(alpha1_ * x);
        return b2_ - k2_ * std::exp(alpha2_ * x);
    }

  private:
    double alpha1_, alpha2_, k1_, k2_, b1_, c_;
    double b2_, L_;
};

}  // namespace gmaint
