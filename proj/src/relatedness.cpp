// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/relatedness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "expspace/rng.hpp"

namespace expspace {

ProximityMatrix proximity(const std::vector<SpecializationMatrix>& spec, bool union_mode,
                          Diag* diag) {
    if (spec.empty()) fail(Errc::EmptyMatrix, "no specialization matrices");
    const auto& disciplines = spec.front().disciplines;
    const std::size_t n = disciplines.size();
    for (const auto& s : spec)
        if (s.disciplines != disciplines)
            fail(Errc::DimensionMismatch, "specialization matrices disagree on disciplines");

    // observation rows: (country, period) stacked, or per-country unions
    std::vector<std::vector<std::uint8_t>> rows;
    if (union_mode) {
        std::map<std::string, std::vector<std::uint8_t>> by_country;
        for (const auto& s : spec)
            for (std::size_t c = 0; c < s.countries.size(); ++c) {
                auto& row = by_country[s.countries[c]];
                row.resize(n, 0);
                for (std::size_t d = 0; d < n; ++d) row[d] |= s.flags(c, d);
            }
        for (auto& [_, row] : by_country) rows.push_back(std::move(row));
    } else {
        for (const auto& s : spec)
            for (std::size_t c = 0; c < s.countries.size(); ++c) {
                std::vector<std::uint8_t> row(n);
                for (std::size_t d = 0; d < n; ++d) row[d] = s.flags(c, d);
                rows.push_back(std::move(row));
            }
    }
    if (rows.empty()) fail(Errc::EmptyMatrix, "no observation rows");

    std::vector<std::size_t> count(n, 0);
    Mat co(n, n);
    for (const auto& row : rows) {
        std::vector<std::size_t> on;
        for (std::size_t d = 0; d < n; ++d)
            if (row[d]) on.push_back(d);
        for (std::size_t d : on) ++count[d];
        for (std::size_t a = 0; a < on.size(); ++a)
            for (std::size_t b = a + 1; b < on.size(); ++b) {
                co(on[a], on[b]) += 1.0;
                co(on[b], on[a]) += 1.0;
            }
    }

    ProximityMatrix out;
    out.disciplines = disciplines;
    out.phi = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (count[i] == 0)
            note(diag, "proximity: no specializing country for " + disciplines[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (count[i] == 0 || count[j] == 0) continue;
            const double phi =
                co(i, j) / static_cast<double>(std::max(count[i], count[j]));
            out.phi(i, j) = phi;
            out.phi(j, i) = phi;
        }
    }
    return out;
}

Backbone disparity_backbone(const ProximityMatrix& phi, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::InvalidAlpha, format_double(alpha));
    const std::size_t n = phi.phi.rows();
    std::vector<std::size_t> degree(n, 0);
    std::vector<double> strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && phi.phi(i, j) > 0.0) {
                ++degree[i];
                strength[i] += phi.phi(i, j);
            }

    auto significant_from = [&](std::size_t i, std::size_t j) {
        if (degree[i] == 1) return true;  // degree-1 nodes keep their single edge
        const double p = phi.phi(i, j) / strength[i];
        return std::pow(1.0 - p, static_cast<double>(degree[i] - 1)) < alpha;
    };

    Backbone out;
    out.alpha = alpha;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (phi.phi(i, j) <= 0.0) continue;
            if (significant_from(i, j) || significant_from(j, i))
                out.kept_edges.push_back(BackboneEdge{i, j, phi.phi(i, j)});
        }
    return out;
}

double weighted_modularity(const Mat& weights, const std::vector<int>& assignment) {
    const std::size_t n = weights.rows();
    double m2 = 0.0;
    std::vector<double> k(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                k[i] += weights(i, j);
                m2 += weights(i, j);
            }
    if (m2 <= 0.0) return 0.0;
    const int n_comms = 1 + *std::max_element(assignment.begin(), assignment.end());
    std::vector<double> internal(static_cast<std::size_t>(n_comms), 0.0);
    std::vector<double> total(static_cast<std::size_t>(n_comms), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        total[static_cast<std::size_t>(assignment[i])] += k[i];
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && assignment[i] == assignment[j]) {
                internal[static_cast<std::size_t>(assignment[i])] += weights(i, j);
            }
    }
    double q = 0.0;
    for (int c = 0; c < n_comms; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        q += internal[cc] / m2 - (total[cc] / m2) * (total[cc] / m2);
    }
    return q;
}

namespace {

// Level graph under the B_ii = twice-internal-weight convention, so
// aggregation is a plain index contraction.
struct LevelGraph {
    Mat b;                   // symmetric, diagonal = 2x self weight
    std::vector<double> k;   // weighted degree incl. diagonal
    double m2 = 0.0;         // sum of all entries

    explicit LevelGraph(Mat m) : b(std::move(m)) {
        const std::size_t n = b.rows();
        k.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) k[i] += b(i, j);
        m2 = std::accumulate(k.begin(), k.end(), 0.0);
    }
    std::size_t size() const { return b.rows(); }
};

struct MovingState {
    std::vector<int> comm;
    std::vector<double> tot;  // sum of k per community

    MovingState(const LevelGraph& g, const std::vector<int>& init) : comm(init) {
        const int n_comms = 1 + *std::max_element(init.begin(), init.end());
        tot.assign(static_cast<std::size_t>(n_comms), 0.0);
        for (std::size_t i = 0; i < g.size(); ++i)
            tot[static_cast<std::size_t>(comm[i])] += g.k[i];
    }
};

// one randomized best-gain pass loop; returns true if anything moved.
// allowed(v, c) restricts candidate communities (used by refinement).
template <typename Allowed>
bool local_moving(const LevelGraph& g, MovingState& st, Rng& rng, Allowed allowed) {
    const std::size_t n = g.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        // Fisher-Yates under our own uniform mapping
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t v : order) {
            const int from = st.comm[v];
            // weight from v to each community, excluding the diagonal
            std::map<int, double> to_comm;
            for (std::size_t j = 0; j < n; ++j)
                if (j != v && g.b(v, j) > 0.0) to_comm[st.comm[j]] += g.b(v, j);
            const double k_from = to_comm.count(from) ? to_comm[from] : 0.0;
            const double tot_from_rest = st.tot[static_cast<std::size_t>(from)] - g.k[v];
            int best = from;
            double best_gain = 0.0;
            auto gain_of = [&](double k_to, double tot_cand) {
                return 2.0 * (k_to - k_from) / g.m2 -
                       2.0 * g.k[v] * (tot_cand - tot_from_rest) / (g.m2 * g.m2);
            };
            for (const auto& [cand, k_to] : to_comm) {
                if (cand == from || !allowed(v, cand)) continue;
                const double gain = gain_of(k_to, st.tot[static_cast<std::size_t>(cand)]);
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best = cand;
                }
            }
            // splitting out into a fresh singleton is also a candidate move
            constexpr int kEmpty = -1;
            if (allowed(v, kEmpty) && gain_of(0.0, 0.0) > best_gain + 1e-12) best = kEmpty;
            if (best != from) {
                if (best == kEmpty) {
                    best = static_cast<int>(st.tot.size());
                    st.tot.push_back(0.0);
                }
                st.tot[static_cast<std::size_t>(from)] -= g.k[v];
                st.tot[static_cast<std::size_t>(best)] += g.k[v];
                st.comm[v] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

std::vector<int> compact_labels(const std::vector<int>& assignment) {
    std::map<int, int> relabel;
    std::vector<int> out(assignment.size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        auto [it, _] = relabel.insert({assignment[i], static_cast<int>(relabel.size())});
        out[i] = it->second;
    }
    return out;
}

// refinement: split each community into locally stable sub-communities by
// singleton local moving restricted within the community
std::vector<int> refine_partition(const LevelGraph& g, const std::vector<int>& part, Rng& rng) {
    const std::size_t n = g.size();
    std::vector<int> refined(n);
    std::iota(refined.begin(), refined.end(), 0);
    MovingState st(g, refined);
    local_moving(g, st, rng, [&](std::size_t v, int cand) {
        if (cand < 0) return false;  // refinement is merge-only
        // stay within the outer community: candidate label belongs to a node
        // sharing v's community by construction of to_comm over neighbors
        for (std::size_t j = 0; j < n; ++j)
            if (st.comm[j] == cand) return part[j] == part[v];
        return false;
    });
    return compact_labels(st.comm);
}

std::vector<int> canonicalize_by_size(const std::vector<int>& assignment) {
    const std::vector<int> compact = compact_labels(assignment);
    const int n_comms = compact.empty() ? 0 : 1 + *std::max_element(compact.begin(), compact.end());
    struct Info {
        int label;
        std::size_t size = 0;
        std::size_t min_node = SIZE_MAX;
    };
    std::vector<Info> infos(static_cast<std::size_t>(n_comms));
    for (int c = 0; c < n_comms; ++c) infos[static_cast<std::size_t>(c)].label = c;
    for (std::size_t i = 0; i < compact.size(); ++i) {
        auto& info = infos[static_cast<std::size_t>(compact[i])];
        info.size++;
        info.min_node = std::min(info.min_node, i);
    }
    std::sort(infos.begin(), infos.end(), [](const Info& a, const Info& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.min_node < b.min_node;
    });
    std::vector<int> remap(static_cast<std::size_t>(n_comms));
    for (int rank = 0; rank < n_comms; ++rank)
        remap[static_cast<std::size_t>(infos[static_cast<std::size_t>(rank)].label)] = rank;
    std::vector<int> out(compact.size());
    for (std::size_t i = 0; i < compact.size(); ++i)
        out[i] = remap[static_cast<std::size_t>(compact[i])];
    return out;
}

}  // namespace

std::vector<int> detect_communities_single(const Mat& weights, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n0 = weights.rows();
    std::vector<int> flat(n0);
    std::iota(flat.begin(), flat.end(), 0);

    LevelGraph g(weights);
    std::vector<std::vector<std::size_t>> members(n0);  // level node -> original nodes
    for (std::size_t i = 0; i < n0; ++i) members[i] = {i};

    while (true) {
        std::vector<int> init(g.size());
        std::iota(init.begin(), init.end(), 0);
        // seed the level with the carried-over assignment
        for (std::size_t v = 0; v < g.size(); ++v) init[v] = flat[members[v].front()];
        init = compact_labels(init);
        MovingState st(g, init);
        local_moving(g, st, rng, [](std::size_t, int) { return true; });
        const std::vector<int> part = compact_labels(st.comm);
        for (std::size_t v = 0; v < g.size(); ++v)
            for (std::size_t orig : members[v]) flat[orig] = part[v];

        const int n_comms = 1 + *std::max_element(part.begin(), part.end());
        if (static_cast<std::size_t>(n_comms) == g.size()) break;  // nothing merged

        const std::vector<int> refined = refine_partition(g, part, rng);
        const int n_refined = 1 + *std::max_element(refined.begin(), refined.end());
        if (static_cast<std::size_t>(n_refined) == g.size() &&
            static_cast<std::size_t>(n_comms) == g.size())
            break;

        // aggregate over refined groups
        Mat agg(static_cast<std::size_t>(n_refined), static_cast<std::size_t>(n_refined));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                agg(static_cast<std::size_t>(refined[i]), static_cast<std::size_t>(refined[j])) +=
                    g.b(i, j);
        std::vector<std::vector<std::size_t>> new_members(static_cast<std::size_t>(n_refined));
        for (std::size_t v = 0; v < g.size(); ++v)
            for (std::size_t orig : members[v])
                new_members[static_cast<std::size_t>(refined[v])].push_back(orig);

        if (static_cast<std::size_t>(n_refined) == g.size()) {
            // refinement kept everything separate; continue only if the
            // outer pass can still merge on the same graph, otherwise stop
            break;
        }
        g = LevelGraph(std::move(agg));
        members = std::move(new_members);
    }

    // final polish on the original graph
    LevelGraph g0(weights);
    MovingState st(g0, compact_labels(flat));
    local_moving(g0, st, rng, [](std::size_t, int) { return true; });
    return canonicalize_by_size(st.comm);
}

Partition detect_communities(const ProximityMatrix& phi, int runs, std::uint64_t seed) {
    if (runs < 1) runs = 1;
    const std::size_t n = phi.phi.rows();
    if (n == 0) fail(Errc::EmptyMatrix, "proximity matrix is empty");

    std::vector<std::vector<int>> partitions;
    partitions.reserve(static_cast<std::size_t>(runs));
    for (int r = 0; r < runs; ++r)
        partitions.push_back(
            detect_communities_single(phi.phi, derive_seed(seed, "community-run", static_cast<std::uint64_t>(r))));

    std::size_t best_run = 0;
    double best_q = -2.0;
    for (std::size_t r = 0; r < partitions.size(); ++r) {
        const double q = weighted_modularity(phi.phi, partitions[r]);
        if (q > best_q) {
            best_q = q;
            best_run = r;
        }
    }

    // consensus: co-assignment counts thresholded at one half; exact halves
    // follow the best-modularity run
    std::vector<std::vector<int>> co(n, std::vector<int>(n, 0));
    for (const auto& part : partitions)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (part[i] == part[j]) {
                    co[i][j]++;
                    co[j][i]++;
                }

    std::vector<int> consensus(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (consensus[i] >= 0) continue;
        consensus[i] = next;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (consensus[v] >= 0) continue;
                const int c2 = 2 * co[u][v];
                const bool together =
                    c2 > runs || (c2 == runs && partitions[best_run][u] == partitions[best_run][v]);
                if (together) {
                    consensus[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }

    Partition out;
    out.assignment = canonicalize_by_size(consensus);
    out.n_communities = 1 + *std::max_element(out.assignment.begin(), out.assignment.end());
    out.quality = weighted_modularity(phi.phi, out.assignment);
    return out;
}

NamedClusters name_clusters(const Partition& partition,
                            const std::vector<Discipline>& disciplines, Diag* diag) {
    NamedClusters out;
    out.cluster_of = partition.assignment;
    const int k = partition.n_communities;
    auto fallback = [&] {
        out.names.clear();
        for (int c = 0; c < k; ++c) out.names.push_back("Cluster" + std::to_string(c + 1));
        out.canonical = false;
        return out;
    };
    if (k != 3) {
        note(diag, "name_clusters: " + std::to_string(k) + " communities, expected 3; using generic labels");
        return fallback();
    }
    if (disciplines.size() != partition.assignment.size())
        fail(Errc::DimensionMismatch, "taxonomy does not match the partition");

    std::array<double, 3> size{}, engineering{}, societal{};
    for (std::size_t d = 0; d < disciplines.size(); ++d) {
        const auto c = static_cast<std::size_t>(partition.assignment[d]);
        size[c] += 1.0;
        const BroadCategory cat = disciplines[d].broad_category;
        if (cat == BroadCategory::Engineering) engineering[c] += 1.0;
        if (cat == BroadCategory::SocialScience || cat == BroadCategory::ArtsHumanities)
            societal[c] += 1.0;
    }
    auto argmax_share = [&](const std::array<double, 3>& counts) -> int {
        int best = -1;
        double best_share = -1.0;
        bool tie = false;
        for (int c = 0; c < 3; ++c) {
            const double share = counts[static_cast<std::size_t>(c)] / size[static_cast<std::size_t>(c)];
            if (share > best_share) {
                best_share = share;
                best = c;
                tie = false;
            } else if (share == best_share) {
                tie = true;
            }
        }
        return tie ? -1 : best;
    };
    const int physical = argmax_share(engineering);
    const int societal_pick = argmax_share(societal);
    if (physical < 0 || societal_pick < 0 || physical == societal_pick) {
        note(diag, "AmbiguousLabeling: composition rules select the same or tied communities");
        return fallback();
    }
    const int natural = 3 - physical - societal_pick;

    // canonical order: 0 Natural, 1 Physical, 2 Societal
    std::array<int, 3> remap{};
    remap[static_cast<std::size_t>(natural)] = 0;
    remap[static_cast<std::size_t>(physical)] = 1;
    remap[static_cast<std::size_t>(societal_pick)] = 2;
    for (auto& c : out.cluster_of) c = remap[static_cast<std::size_t>(c)];
    out.names = {"Natural", "Physical", "Societal"};
    out.canonical = true;
    return out;
}

}  // namespace expspace
