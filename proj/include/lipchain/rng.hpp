#pragma once

#include <cstdint>

namespace lipchain {

// Frozen pseudo-randomness contract ("splitmix64-v1"):
//
//   mix64       = the SplitMix64 output finalizer (Steele/Lea/Flood 2014)
//   stream 0    : state_0 = mix64(mix64(master) + gamma * (stream + 1))
//   draw k      : state_k = state_{k-1} + gamma;  output = mix64(state_k)
//   double      : top 53 bits of a draw, scaled into [0, 1)
//
// The derivation is bijective in master for fixed stream and vice versa
// (gamma is odd), so distinct (master, stream) pairs map to distinct
// generator states. Jumping m draws ahead is state += m * gamma.

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_stream_state(std::uint64_t master_seed,
                                            std::uint64_t stream_index) noexcept {
    return mix64(mix64(master_seed) + kSplitMixGamma * (stream_index + 1));
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t operator()() noexcept {
        return mix64(state_ += kSplitMixGamma);
    }

    // Uniform on [0, 1), 53-bit resolution, every value exactly representable.
    constexpr double next_double() noexcept {
        return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~0ULL; }

private:
    std::uint64_t state_;
};

}  // namespace lipchain
