#pragma once

#include <cstdint>
#include <string_view>

namespace hct {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer, used both as the stream mixer and the per-draw output function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Counter-based stream addressed by (seed, stream id). Every module derives one
// stream per independent work unit (trial, case, repeat, resample), so results are
// identical for any thread count or evaluation order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : state_(mix64(mix64(seed) ^ mix64(stream ^ 0xA0761D6478BD642FULL))) {}

    RngStream(std::uint64_t seed, std::string_view stream) noexcept
        : RngStream(seed, fnv1a64(stream)) {}

    std::uint64_t next_u64() noexcept {
        state_ += kGoldenGamma;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) noexcept { return next_unit() < p; }

    // Unbiased integer in [0, n). n must be >= 1.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

private:
    std::uint64_t state_;
};

} // namespace hct
