// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/advantage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace expspace {

RcaMatrix compute_rca(const PublicationTensor& tensor, const PeriodId& period, Diag* diag) {
    auto ppos = tensor.period_pos(period);
    if (!ppos) fail(Errc::UnknownPeriod, period.label());
    const std::size_t p = *ppos;
    const std::size_t n_disc = tensor.discipline_index.size();

    const double grand_total = static_cast<double>(tensor.period_total(p));
    if (grand_total <= 0.0) fail(Errc::EmptyPeriod, period.label());

    std::vector<std::size_t> active;  // countries with non-zero output
    for (std::size_t c = 0; c < tensor.country_index.size(); ++c) {
        if (tensor.country_total(c, p) > 0) {
            active.push_back(c);
        } else {
            note(diag, "RcaUndefinedForEmptyCountry: " + tensor.country_index[c] + " in " +
                           period.label());
        }
    }

    std::vector<double> world_share(n_disc, 0.0);  // P(.,i) / P(.,.)
    for (std::size_t d = 0; d < n_disc; ++d)
        world_share[d] = static_cast<double>(tensor.discipline_total(d, p)) / grand_total;

    RcaMatrix out;
    out.period = period;
    out.disciplines = tensor.discipline_index;
    out.values = Mat(active.size(), n_disc);
    for (std::size_t i = 0; i < active.size(); ++i) {
        const std::size_t c = active[i];
        out.countries.push_back(tensor.country_index[c]);
        const double country_total = static_cast<double>(tensor.country_total(c, p));
        for (std::size_t d = 0; d < n_disc; ++d) {
            if (world_share[d] <= 0.0) {
                out.values(i, d) = 0.0;  // zero global output: division guard
                continue;
            }
            const double country_share = static_cast<double>(tensor.at(c, d, p)) / country_total;
            out.values(i, d) = country_share / world_share[d];
        }
    }
    return out;
}

SpecializationMatrix specialize(const RcaMatrix& rca, double threshold) {
    if (threshold <= 0.0) fail(Errc::InvalidAlpha, "specialization threshold must be positive");
    SpecializationMatrix out;
    out.countries = rca.countries;
    out.disciplines = rca.disciplines;
    out.period = rca.period;
    out.threshold = threshold;
    out.flags = BoolMat(rca.values.rows(), rca.values.cols());
    for (std::size_t c = 0; c < rca.values.rows(); ++c)
        for (std::size_t d = 0; d < rca.values.cols(); ++d)
            out.flags(c, d) = rca.values(c, d) > threshold ? 1 : 0;
    return out;
}

ClusterRca cluster_rca(const PublicationTensor& tensor, const PeriodId& period,
                       const std::vector<int>& cluster_of, int n_clusters, Diag* diag) {
    if (cluster_of.size() != tensor.discipline_index.size())
        fail(Errc::DimensionMismatch, "cluster map does not cover every discipline");
    auto ppos = tensor.period_pos(period);
    if (!ppos) fail(Errc::UnknownPeriod, period.label());
    const std::size_t p = *ppos;

    const double grand_total = static_cast<double>(tensor.period_total(p));
    if (grand_total <= 0.0) fail(Errc::EmptyPeriod, period.label());

    std::vector<std::size_t> active;
    for (std::size_t c = 0; c < tensor.country_index.size(); ++c) {
        if (tensor.country_total(c, p) > 0) active.push_back(c);
        else note(diag, "RcaUndefinedForEmptyCountry: " + tensor.country_index[c] + " in " +
                            period.label());
    }

    // aggregate counts into clusters, then apply the same share-of-share formula
    const std::size_t k = static_cast<std::size_t>(n_clusters);
    std::vector<double> cluster_world(k, 0.0);
    Mat agg(active.size(), k);
    for (std::size_t i = 0; i < active.size(); ++i) {
        const std::size_t c = active[i];
        for (std::size_t d = 0; d < tensor.discipline_index.size(); ++d) {
            const auto cl = static_cast<std::size_t>(cluster_of[d]);
            agg(i, cl) += static_cast<double>(tensor.at(c, d, p));
        }
    }
    for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t cl = 0; cl < k; ++cl) cluster_world[cl] += agg(i, cl);

    ClusterRca out;
    out.values = Mat(active.size(), k);
    for (std::size_t i = 0; i < active.size(); ++i) {
        out.countries.push_back(tensor.country_index[active[i]]);
        const double country_total = static_cast<double>(tensor.country_total(active[i], p));
        for (std::size_t cl = 0; cl < k; ++cl) {
            if (cluster_world[cl] <= 0.0) {
                out.values(i, cl) = 0.0;
                continue;
            }
            out.values(i, cl) =
                (agg(i, cl) / country_total) / (cluster_world[cl] / grand_total);
        }
    }
    return out;
}

double diversity(std::span<const double> rca_row, bool nonzero_only) {
    std::vector<double> v;
    v.reserve(rca_row.size());
    for (double x : rca_row) {
        if (x < 0.0) fail(Errc::DegenerateVector, "negative RCA value");
        if (!nonzero_only || x > 0.0) v.push_back(x);
    }
    const std::size_t n = v.size();
    if (n < 2) fail(Errc::DegenerateVector, "diversity needs at least 2 values");
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (total <= 0.0) fail(Errc::DegenerateVector, "diversity of an all-zero vector");

    // population Gini via the sorted form, then the n/(n-1) correction
    std::sort(v.begin(), v.end());
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) weighted += static_cast<double>(i + 1) * v[i];
    const double nd = static_cast<double>(n);
    const double gini_pop = (2.0 * weighted) / (nd * total) - (nd + 1.0) / nd;
    double gini = gini_pop * nd / (nd - 1.0);
    gini = std::clamp(gini, 0.0, 1.0);
    return 1.0 - gini;
}

SimplexPosition simplex_position(std::span<const std::uint8_t> spec_row,
                                 const std::vector<int>& cluster_of,
                                 const std::array<int, 3>& cluster_sizes) {
    if (spec_row.size() != cluster_of.size())
        fail(Errc::DimensionMismatch, "specialization row does not match the cluster map");
    std::array<double, 3> advantages{0.0, 0.0, 0.0};
    std::size_t total_adv = 0;
    for (std::size_t d = 0; d < spec_row.size(); ++d) {
        if (!spec_row[d]) continue;
        advantages[static_cast<std::size_t>(cluster_of[d])] += 1.0;
        ++total_adv;
    }
    if (total_adv == 0) fail(Errc::NoAdvantages, "country has no specializations");

    std::array<double, 3> shares{};
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        shares[k] = cluster_sizes[k] > 0 ? advantages[k] / static_cast<double>(cluster_sizes[k]) : 0.0;
        sum += shares[k];
    }
    for (auto& s : shares) s /= sum;
    return SimplexPosition{shares[0], shares[1], shares[2]};
}

}  // namespace expspace
