#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace lexproj {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// xoshiro256++ with splitmix64 seeding. Every random stream in the project is
// derived from a single 64-bit seed plus a label path (deriveSeed), so runs
// are reproducible and sub-streams are independent of execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    std::uint64_t nextU64() {
        std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller (no cached spare, so stream consumption
    // is exactly two uniforms per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Exponential with rate 1.
    double exponential() { return -std::log(1.0 - uniform()); }

    // Uniform integer in [0, n), n >= 1.
    std::uint64_t uniformIndex(std::uint64_t n) {
        std::uint64_t threshold = (0ULL - n) % n;  // reject below to kill modulo bias
        for (;;) {
            std::uint64_t r = nextU64();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t s_[4];
};

// Mixes a label and up to three indices into a seed, for deriving independent
// sub-streams ("chain" 0, "projection" country/draw/rep, ...).
inline std::uint64_t deriveSeed(std::uint64_t seed, std::string_view label, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
    for (char ch : label) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    std::uint64_t state = seed;
    detail::splitmix64(state);
    state ^= h;
    detail::splitmix64(state);
    state ^= a;
    detail::splitmix64(state);
    state ^= b;
    detail::splitmix64(state);
    state ^= c;
    return detail::splitmix64(state);
}

}  // namespace lexproj
