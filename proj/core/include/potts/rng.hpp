#ifndef POTTS_RNG_HPP
#define POTTS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace potts {

// Counter-based stream derivation. Every random stream in the library is
// identified by a (root seed, path of indices) pair, so sample i of a
// disorder average, chain c of a ladder, or restart r of an annealer can
// be regenerated in isolation and in any order.

/// SplitMix64 output function (Steele, Lea, Vigna). Bijective mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a substream seed from a root seed and a path of indices.
/// derive_stream(s, {a, b}) != derive_stream(s, {b, a}) in general.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t component : path) {
        h = splitmix64(h ^ splitmix64(component + 0xD1B54A32D192ED03ULL));
    }
    return h;
}

/// Uniform double in (0, 1], from the top 53 bits of a 64-bit word.
inline double u64_to_unit_open(std::uint64_t x) noexcept {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

/// Standard-normal generator: mt19937_64 (fully specified by the standard)
/// plus an explicit Box-Muller transform. std::normal_distribution is
/// implementation-defined and would break bit-reproducibility of stored
/// disorder seeds across standard libraries.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = u64_to_unit_open(engine_());
        const double u2 = u64_to_unit_open(engine_());
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double uniform() { return u64_to_unit_open(engine_()); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo bias is negligible for the small n used
        // here (colors, sites), but reject anyway to keep streams exact.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace potts

#endif
