#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace labhh {

namespace detail {

// SplitMix64 output permutation (Steele, Lea, Flood).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

/// Derives a stream key by folding the given words through the SplitMix64
/// permutation. Identical inputs yield identical keys on every platform.
inline constexpr std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t p : parts) {
        h = detail::mix64(h ^ (p + detail::kGolden));
    }
    return h;
}

/// SplitMix64 generator. One word of state, identical sequence on every
/// platform. Sub-streams are derived from the construction key by hashing,
/// never by consuming draws, so sibling streams stay independent of how much
/// of the parent has been used.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t key) noexcept : state_(key), key_(key) {}

    /// Independent sub-stream identified by `label`.
    constexpr Rng child(std::uint64_t label) const noexcept {
        return Rng(stream_key({key_, label}));
    }

    constexpr std::uint64_t next_u64() noexcept {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits. One draw.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). One draw (multiply-shift reduction).
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((u128(next_u64()) * u128(bound)) >> 64);
    }

    /// Standard normal via Box-Muller. Exactly two draws per call.
    double next_gauss() noexcept {
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state_;
    std::uint64_t key_;
};

} // namespace labhh
