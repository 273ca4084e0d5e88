#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cellcache {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seeded random stream. Child streams are derived from the base seed and a
/// stream tag only, so the derivation is independent of how many values the
/// parent has drawn. All draws go through explicit helpers to keep results
/// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : base_seed_(seed), engine_(scramble(seed)) {}

    /// Independent stream keyed by (base seed, tag).
    Rng child(std::uint64_t tag) const {
        std::uint64_t s = base_seed_ ^ (0x9e3779b97f4a7c15ull * (tag + 1));
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<std::size_t>(x % bound);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    std::uint64_t base_seed() const { return base_seed_; }

private:
    static std::uint64_t scramble(std::uint64_t seed) {
        std::uint64_t s = seed;
        return splitmix64(s);
    }

    std::uint64_t base_seed_;
    std::mt19937_64 engine_;
};

/// Inverse-CDF draw from a discrete distribution given one uniform in [0, 1).
/// Weights need not be exactly normalized; the last strictly positive entry
/// absorbs floating-point remainder.
inline std::size_t sample_discrete(std::span<const double> weights, double u) {
    double total = 0.0;
    for (double w : weights) total += w;
    double threshold = u * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    bool seen = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            cum += weights[i];
            last_positive = i;
            seen = true;
            if (threshold < cum) return i;
        }
    }
    return seen ? last_positive : 0;
}

}  // namespace cellcache
