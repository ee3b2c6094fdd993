// rng.hpp: counter-based random streams keyed by (seed, purpose, index)

#pragma once

#include <cstdint>
#include <initializer_list>

namespace cca {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Keyed hash of a master seed and an ordered list of keys. Used to give each
// realization its own stream independent of scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc908ULL);
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k + 0x3c6ef372fe94f82bULL));
    }
    return h;
}

// Stateless counter-based generator: draw i is a pure function of (seed, i),
// so any draw can be reproduced without replaying the stream.
class RngStream {
public:
    explicit constexpr RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }
    constexpr std::uint64_t position() const noexcept { return counter_; }

    constexpr std::uint64_t at(std::uint64_t i) const noexcept {
        return mix64(mix64(seed_) + i * 0xd1b54a32d192ed03ULL);
    }

    constexpr std::uint64_t next_u64() noexcept { return at(counter_++); }

    // Uniform on [0, 1) with 53 random bits.
    constexpr double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace cca
