#pragma once

#include <cmath>
#include <cstdint>

namespace gmaint {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Steele, Lea & Flood; Vigna's public-domain variant).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Fold arbitrary tags into a stream id, e.g. stream_key(experiment, replication).
inline std::uint64_t stream_key(std::uint64_t a) { return mix64(a + kGoldenGamma); }
template <class... Rest>
inline std::uint64_t stream_key(std::uint64_t a, std::uint64_t b, Rest... rest) {
    return stream_key(mix64(a + kGoldenGamma) ^ (b + 0x94D049BB133111EBull), rest...);
}

// Counter-based splittable generator: state walks a Weyl sequence, output is the
// splitmix64 mix. Distinct (seed, stream_id) pairs give decorrelated sequences and
// a fixed pair reproduces bit-identical draws regardless of what other streams do,
// which is what makes replication-indexed parallel Monte Carlo thread-count-proof.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : state_(mix64(seed + kGoldenGamma) ^ mix64(stream_id * 0xBF58476D1CE4E5B9ull + 1)) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    // [0,1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // (0,1), safe under log()
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal, Marsaglia polar method (spare deviate discarded so the
    // stream position is a pure function of the draw count history).
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform01() - 1.0;
            const double v = 2.0 * uniform01() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace gmaint
