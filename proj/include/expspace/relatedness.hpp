// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expspace/advantage.hpp"
#include "expspace/common.hpp"
#include "expspace/corpus.hpp"

namespace expspace {

// Symmetric discipline proximity: phi_ij = min of the two conditional
// co-specialization probabilities; zero diagonal.
struct ProximityMatrix {
    std::vector<std::string> disciplines;
    Mat phi;
};

struct BackboneEdge {
    std::size_t i, j;  // i < j, positions into disciplines
    double weight;
};

struct Backbone {
    double alpha = 0.0;
    std::vector<BackboneEdge> kept_edges;
};

struct Partition {
    std::vector<int> assignment;  // discipline position -> community label
    int n_communities = 0;
    double quality = 0.0;  // weighted modularity of the assignment
};

// Pooled proximity: country-period rows of the given specialization matrices
// are stacked as independent observations. With union_mode set, a country
// counts as specialized in a discipline if it is specialized in any period.
ProximityMatrix proximity(const std::vector<SpecializationMatrix>& spec, bool union_mode = false,
                          Diag* diag = nullptr);

// Disparity filter: edge kept when (1 - w_ij/s_i)^(k_i - 1) < alpha from
// either endpoint; degree-1 nodes keep their single edge.
Backbone disparity_backbone(const ProximityMatrix& phi, double alpha);

// Weighted modularity of an assignment on a symmetric weight matrix.
double weighted_modularity(const Mat& weights, const std::vector<int>& assignment);

// Modularity optimization (local moving + refinement, Leiden style), `runs`
// restarts under distinct sub-seeds, consensus over the co-assignment matrix
// thresholded at 0.5 with the best run breaking exact ties. Labels are
// canonical: 0 is the largest community.
Partition detect_communities(const ProximityMatrix& phi, int runs = 50, std::uint64_t seed = 0);

// single optimization pass, exposed for the consensus logic and for tests
std::vector<int> detect_communities_single(const Mat& weights, std::uint64_t seed);

// Three-cluster naming by broad-category composition. names[k] is the display
// label of community k; when labeling is unambiguous the communities are
// reordered canonically (0 Natural, 1 Physical, 2 Societal).
struct NamedClusters {
    std::vector<int> cluster_of;        // discipline position -> cluster index
    std::vector<std::string> names;     // cluster index -> label
    bool canonical = false;             // true when named Natural/Physical/Societal
};

NamedClusters name_clusters(const Partition& partition,
                            const std::vector<Discipline>& disciplines, Diag* diag = nullptr);

}  // namespace expspace
