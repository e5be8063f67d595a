// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "expspace/common.hpp"
#include "expspace/corpus.hpp"

namespace expspace {

// RCA per (country, discipline) for one period. Countries with zero total
// output in the period carry no row.
struct RcaMatrix {
    std::vector<std::string> countries;
    std::vector<std::string> disciplines;
    PeriodId period;
    Mat values;
};

struct SpecializationMatrix {
    std::vector<std::string> countries;
    std::vector<std::string> disciplines;
    PeriodId period;
    double threshold = 1.0;
    BoolMat flags;  // flags(c,d) <=> rca(c,d) > threshold, strictly
};

struct SimplexPosition {
    double natural = 0.0;
    double physical = 0.0;
    double societal = 0.0;
};

// RCA_{c,i} = (P(c,i)/P(c,·)) / (P(·,i)/P(·,·)). Disciplines with zero global
// output yield 0 for every country; zero-output countries are dropped with a
// diagnostic.
RcaMatrix compute_rca(const PublicationTensor& tensor, const PeriodId& period,
                      Diag* diag = nullptr);

// Strict inequality: RCA equal to the threshold is not specialized.
SpecializationMatrix specialize(const RcaMatrix& rca, double threshold = 1.0);

// RCA on cluster-aggregated counts (counts summed within cluster before the
// share computation). cluster_of maps discipline position -> cluster id.
struct ClusterRca {
    std::vector<std::string> countries;
    Mat values;  // country x cluster
};
ClusterRca cluster_rca(const PublicationTensor& tensor, const PeriodId& period,
                       const std::vector<int>& cluster_of, int n_clusters, Diag* diag = nullptr);

// Scientific diversity: 1 - G*, with G* the population Gini scaled by
// n/(n-1) so a single-discipline profile scores exactly 0. When nonzero_only
// is set the Gini runs over the strictly positive entries.
double diversity(std::span<const double> rca_row, bool nonzero_only = false);

// C_k = n_k / N_k normalized to sum 1; cluster ids must be 0 = Natural,
// 1 = Physical, 2 = Societal.
SimplexPosition simplex_position(std::span<const std::uint8_t> spec_row,
                                 const std::vector<int>& cluster_of,
                                 const std::array<int, 3>& cluster_sizes);

}  // namespace expspace
