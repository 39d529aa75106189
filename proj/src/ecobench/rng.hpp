// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

namespace ecobench {

// SplitMix64 finalizer. Every random stream in the project is derived from
// this mix so that results are bit-identical across platforms and stdlibs.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Folds key parts into a stream key. Rng(key_of({seed, tree, node})) yields a
// stream that depends only on the parts, not on how many draws other streams
// have consumed, which is what makes tree construction order-independent.
constexpr std::uint64_t key_of(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t k = 0x9d2c5680u;
    for (auto p : parts)
        k = mix64(k ^ p);
    return k;
}

// Counter-based SplitMix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t v = next_u64();
        while (v >= limit)
            v = next_u64();
        return v % n;
    }

    // Inclusive bounds.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Standard normal via Box-Muller. The second value of the pair is
    // discarded so a draw always consumes exactly two words of the stream.
    double normal() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Normal draw rejected into [lo, hi]; clamps if the tail is too unlucky.
    double trunc_normal(double mean, double stddev, double lo, double hi) {
        for (int i = 0; i < 64; ++i) {
            const double v = normal(mean, stddev);
            if (v >= lo && v <= hi)
                return v;
        }
        const double v = normal(mean, stddev);
        return v < lo ? lo : (v > hi ? hi : v);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

} // namespace ecobench
