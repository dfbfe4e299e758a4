#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace qens {

// splitmix64 step: advances `state` and returns a well-mixed 64-bit output.
// Used for seed derivation only, never as a general-purpose stream.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a 64-bit hash of a label string.
inline std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives a child seed from (root, label, index). The scheme is frozen: run
// seeds recorded in result files must stay reproducible across versions.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                                 std::uint64_t index = 0) {
    std::uint64_t state = root;
    state = splitmix64_next(state) ^ hash_label(label);
    state = splitmix64_next(state) ^ index;
    return splitmix64_next(state);
}

// Deterministic RNG with hand-rolled distributions. mt19937_64 and its
// single-value seeding are fully specified by the C++ standard; the standard
// library *distributions* are not, so uniform/normal/integer are implemented
// here to keep every sampled value bit-identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform double in [0, 1) with 53 random mantissa bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform double in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller normal draw; consumes exactly two uniforms per call (the
    // sine spare is discarded so the stream position is call-count linear)
    double normal(double mean, double stddev) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        return mean + stddev * r * std::cos(two_pi * u2);
    }

    // uniform integer in [0, n) by masked rejection (unbiased)
    std::uint64_t integer(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::integer: n must be positive");
        if (n == 1) return 0;
        const std::uint64_t mask = ~0ULL >> std::countl_zero(n - 1);
        for (;;) {
            std::uint64_t v = eng_() & mask;
            if (v < n) return v;
        }
    }

    // in-place Fisher-Yates shuffle
    template <typename T>
    void shuffle(T& seq) {
        for (std::size_t i = seq.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(integer(i));
            std::swap(seq[i - 1], seq[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qens
