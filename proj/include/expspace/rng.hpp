// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "expspace/common.hpp"

namespace expspace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Sub-seed scheme: a single master seed addresses every stochastic task by
// (label, index), so parallel execution order cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ fnv1a64(label)) + index);
}

// mt19937_64 behind fixed mappings; artifacts must not depend on libstdc++
// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), unbiased
    std::size_t below(std::size_t n) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= lim);
        return static_cast<std::size_t>(r % n);
    }

    double normal(double mean = 0.0, double sd = 1.0) {
        std::normal_distribution<double> d(mean, sd);
        return d(gen_);
    }

private:
    std::mt19937_64 gen_;
};

// Sequential weighted draws without replacement: weights renormalized after
// each draw; if the remaining weight mass is zero the draw falls back to
// uniform over the remaining items. Returns k distinct indices.
std::vector<std::size_t> weighted_sample_without_replacement(
    const std::vector<double>& weights, std::size_t k, Rng& rng);

}  // namespace expspace
