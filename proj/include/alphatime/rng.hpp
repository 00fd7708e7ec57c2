#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace alphatime {

/// Seeded, substream-capable generator (xoshiro256++ with splitmix64
/// state expansion). Identical (seed, stream_id) pairs reproduce the
/// same draw sequence bit for bit; distinct stream ids give
/// statistically independent substreams, which is what the parallel
/// Monte Carlo drivers partition work by.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
        for (auto& w : state_) {
            z += 0x9E3779B97F4A7C15ULL;
            std::uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            w = x ^ (x >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0,1); never returns 0 or 1, so
    /// log() and tan() transforms are safe.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the twin draw is cached, so the
    /// stream stays deterministic call by call.
    double normal() {
        if (have_twin_) {
            have_twin_ = false;
            return twin_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        const double phi = 2.0 * std::numbers::pi * uniform01();
        twin_ = r * std::sin(phi);
        have_twin_ = true;
        return r * std::cos(phi);
    }

    /// Standard Cauchy (scale 1).
    double cauchy() {
        return std::tan(std::numbers::pi * (uniform01() - 0.5));
    }

    /// Exponential with rate 1.
    double exponential() { return -std::log(uniform01()); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    double twin_ = 0.0;
    bool have_twin_ = false;
};

}  // namespace alphatime
