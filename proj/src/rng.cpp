// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/rng.hpp"

namespace expspace {

std::vector<std::size_t> weighted_sample_without_replacement(
    const std::vector<double>& weights, std::size_t k, Rng& rng) {
    if (k > weights.size())
        fail(Errc::InfeasibleCounts, "requested " + std::to_string(k) + " draws from " +
                                         std::to_string(weights.size()) + " items");
    std::vector<std::size_t> remaining(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) remaining[i] = i;
    std::vector<std::size_t> picked;
    picked.reserve(k);
    for (std::size_t draw = 0; draw < k; ++draw) {
        double total = 0.0;
        for (std::size_t idx : remaining) total += weights[idx];
        std::size_t chosen_slot;
        if (total <= 0.0) {
            chosen_slot = rng.below(remaining.size());
        } else {
            const double r = rng.uniform01() * total;
            double acc = 0.0;
            chosen_slot = remaining.size() - 1;  // guards against fp round-off
            for (std::size_t s = 0; s < remaining.size(); ++s) {
                acc += weights[remaining[s]];
                if (r < acc) {
                    chosen_slot = s;
                    break;
                }
            }
        }
        picked.push_back(remaining[chosen_slot]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_slot));
    }
    return picked;
}

}  // namespace expspace
