#pragma once

#include <algorithm>
#include <stdexcept>

#include "gmaint/gamma_dist.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/shape.hpp"

namespace gmaint {

// One increment of the non-homogeneous gamma process over (t0, t1]:
// Gamma(A(t1) - A(t0), b), exactly zero when the shape does not move.
inline double process_increment(const ShapeFunction& shape, double rate_b, double t0, double t1,
                                RngStream& rng) {
    if (!(t0 >= 0.0) || t1 < t0)
        throw std::domain_error("process_increment: require 0 <= t0 <= t1");
    const double da = shape(t1) - shape(t0);
    return sample_gamma(rng, std::max(da, 0.0), rate_b);
}

}  // namespace gmaint
