#pragma once

// Counter-based random numbers: every value is a pure function of
// (seed, stream, counter, lane), so any attempt of any trial can be
// regenerated independently of execution order or thread count.

#include <cstdint>

namespace netefficacy::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Random draws belonging to one counter value of a stream. Successive
/// calls to next() walk the lane index.
class CounterDraws {
public:
    constexpr CounterDraws(std::uint64_t key, std::uint64_t counter) noexcept
        : base_(mix64(key ^ mix64(counter * kGolden + 0x632be59bd9b4e019ULL))) {}

    constexpr std::uint64_t next() noexcept { return mix64(base_ + (++lane_) * kGolden); }

    /// Unbiased integer in [0, bound); bound must be > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        // Lemire's multiply-shift with rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t base_;
    std::uint64_t lane_ = 0;
};

/// An independent stream keyed by (seed, stream id).
class CounterStream {
public:
    constexpr CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(seed ^ mix64(stream + kGolden))) {}

    constexpr CounterDraws at(std::uint64_t counter) const noexcept { return {key_, counter}; }
    constexpr std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
};

}  // namespace netefficacy::rng
