#pragma once

#include <cstdint>

namespace rhlab {

/// Counter-based SplitMix64 stream.
///
/// The k-th draw (k = 0, 1, ...) for seed s is mix(s + (k + 1) * 0x9E3779B97F4A7C15)
/// with the standard SplitMix64 finalizer. Draws depend only on (s, k), never
/// on call order, so corpora are identical on every platform and under any
/// parallel schedule.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t k) const {
        return mix(seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in (0, 1): top 53 bits, offset by half an ulp so 0 is never returned.
    double uniform(std::uint64_t k) const {
        return (static_cast<double>(bits(k) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal for index i from draws 2i, 2i+1 (Box-Muller, cosine branch).
    double normal(std::uint64_t i) const;

    // Seed of the i-th derived stream (used to give every corpus case its own seed).
    std::uint64_t derive(std::uint64_t i) const { return bits(0x100000000ULL + i); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace rhlab
