#pragma once

#include <stdexcept>
#include <string>

namespace gmaint {

// Thrown when an analytic result and its independent numerical check disagree.
struct internal_consistency_error : std::runtime_error {
    explicit internal_consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a Monte-Carlo estimate has too few effective samples to be reported.
struct insufficient_sample_error : std::runtime_error {
    explicit insufficient_sample_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gmaint
