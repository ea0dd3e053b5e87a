#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmaint {

// Cumulative shape function A(.) of a non-homogeneous gamma process:
// continuous, non-decreasing, A(0) = 0. The increment of the process over
// (s,t] has gamma shape A(t) - A(s).
class ShapeFunction {
  public:
    enum class Kind { PowerLaw, Linear, ExpGrowth, ExpSaturating, Sum };

    static ShapeFunction power_law(double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("ShapeFunction::power_law: alpha and beta must be positive");
        ShapeFunction s(Kind::PowerLaw);
        s.p1_ = alpha;
        s.p2_ = beta;
        return s;
    }
    static ShapeFunction linear(double a) {
        if (!(a > 0.0)) throw std::invalid_argument("ShapeFunction::linear: slope must be positive");
        ShapeFunction s(Kind::Linear);
        s.p1_ = a;
        return s;
    }
    // A(t) = e^t - 1
    static ShapeFunction exp_growth() { return ShapeFunction(Kind::ExpGrowth); }
    // A(t) = 1 - e^{-t}
    static ShapeFunction exp_saturating() { return ShapeFunction(Kind::ExpSaturating); }
    static ShapeFunction sum(std::vector<ShapeFunction> terms) {
        if (terms.empty()) throw std::invalid_argument("ShapeFunction::sum: needs at least one term");
        ShapeFunction s(Kind::Sum);
        s.terms_ = std::move(terms);
        return s;
    }

    double operator()(double t) const {
        if (!(t >= 0.0)) throw std::domain_error("ShapeFunction: require t >= 0");
        switch (kind_) {
            case Kind::PowerLaw: return p1_ * std::pow(t, p2_);
            case Kind::Linear: return p1_ * t;
            case Kind::ExpGrowth: return std::expm1(t);
            case Kind::ExpSaturating: return -std::expm1(-t);
            case Kind::Sum: {
                double acc = 0.0;
                for (const auto& f : terms_) acc += f(t);
                return acc;
            }
        }
        return 0.0;
    }

    // Curvature flags used by the order predicates. Power law with beta = 1
    // reports both, matching the linear case.
    bool concave() const {
        switch (kind_) {
            case Kind::PowerLaw: return p2_ <= 1.0;
            case Kind::Linear: return true;
            case Kind::ExpGrowth: return false;
            case Kind::ExpSaturating: return true;
            case Kind::Sum:
                for (const auto& f : terms_)
                    if (!f.concave()) return false;
                return true;
        }
        return false;
    }
    bool convex() const {
        switch (kind_) {
            case Kind::PowerLaw: return p2_ >= 1.0;
            case Kind::Linear: return true;
            case Kind::ExpGrowth: return true;
            case Kind::ExpSaturating: return false;
            case Kind::Sum:
                for (const auto& f : terms_)
                    if (!f.convex()) return false;
                return true;
        }
        return false;
    }

    Kind kind() const { return kind_; }
    bool is_power_law() const { return kind_ == Kind::PowerLaw; }
    double power_alpha() const {
        require_kind(Kind::PowerLaw, "power_alpha");
        return p1_;
    }
    double power_beta() const {
        require_kind(Kind::PowerLaw, "power_beta");
        return p2_;
    }
    double linear_slope() const {
        require_kind(Kind::Linear, "linear_slope");
        return p1_;
    }
    const std::vector<ShapeFunction>& terms() const { return terms_; }

    std::string to_string() const {
        std::ostringstream os;
        switch (kind_) {
            case Kind::PowerLaw: os << p1_ << "*t^" << p2_; break;
            case Kind::Linear: os << p1_ << "*t"; break;
            case Kind::ExpGrowth: os << "exp(t)-1"; break;
            case Kind::ExpSaturating: os << "1-exp(-t)"; break;
            case Kind::Sum:
                for (std::size_t i = 0; i < terms_.size(); ++i)
                    os << (i ? " + " : "") << terms_[i].to_string();
                break;
        }
        return os.str();
    }

  private:
    explicit ShapeFunction(Kind k) : kind_(k) {}
    void require_kind(Kind k, const char* what) const {
        if (kind_ != k) throw std::logic_error(std::string("ShapeFunction::") + what + ": wrong variant");
    }

    Kind kind_;
    double p1_ = 0.0, p2_ = 0.0;
    std::vector<ShapeFunction> terms_;
};

}  // namespace gmaint
