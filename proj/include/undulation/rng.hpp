#ifndef UNDULATION_RNG_HPP
#define UNDULATION_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace undulation {

// SplitMix64. Deterministic, cheap, and good enough for sampling field
// elements; every random draw in the library is derived from explicit
// 64-bit seeds so results are reproducible across runs and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        // largest multiple of bound that fits in 2^64
        const std::uint64_t limit = bound * (~0ull / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

// Combine seed components into one stream seed. Order matters.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x8AD8A62A11515AD1ull;
    for (std::uint64_t p : parts) {
        SplitMix64 g(h ^ p);
        h = g.next();
    }
    return h;
}

} // namespace undulation

#endif
