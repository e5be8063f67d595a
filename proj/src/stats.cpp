// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "expspace/common.hpp"
#include "expspace/rng.hpp"

namespace expspace {

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(Errc::DimensionMismatch, "pearson: size mismatch");
    if (x.size() < 3) fail(Errc::InsufficientData, "pearson: need at least 3 pairs");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) fail(Errc::DegenerateVector, "pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

std::pair<double, double> ols_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        fail(Errc::InsufficientData, "ols_line: need >= 2 paired points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) fail(Errc::DegenerateVector, "ols_line: x has zero variance");
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) fail(Errc::InsufficientData, "quantile of empty vector");
    std::sort(v.begin(), v.end());
    if (q <= 0.0) return v.front();
    if (q >= 1.0) return v.back();
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

double t_two_sided_p(double t, double df) {
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

double t_critical(double df, double level) {
    boost::math::students_t dist(df);
    return boost::math::quantile(dist, level);
}

double f_upper_p(double f, double df1, double df2) {
    if (f <= 0.0) return 1.0;
    boost::math::fisher_f dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

double chi2_upper_p(double x, double df) {
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

WelchResult welch_one_tailed(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        fail(Errc::InsufficientData, "welch test: need >= 2 samples per group");
    const double ma = mean(a), mb = mean(b);
    const double va = sample_sd(a) * sample_sd(a), vb = sample_sd(b) * sample_sd(b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double se2 = va / na + vb / nb;
    if (se2 == 0.0) fail(Errc::DegenerateVector, "welch test: zero variance in both groups");
    const double t = (ma - mb) / std::sqrt(se2);
    const double df = se2 * se2 / (va * va / (na * na * (na - 1)) + vb * vb / (nb * nb * (nb - 1)));
    boost::math::students_t dist(df);
    const double p = boost::math::cdf(boost::math::complement(dist, t));
    return {t, df, p};
}

PearsonWithCi pearson_bootstrap_ci(std::span<const double> x, std::span<const double> y,
                                   int iterations, std::uint64_t seed) {
    const double r = pearson(x, y);
    Rng rng(seed);
    std::vector<double> rs;
    rs.reserve(static_cast<std::size_t>(iterations));
    std::vector<double> bx(x.size()), by(y.size());
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const std::size_t j = rng.below(x.size());
            bx[i] = x[j];
            by[i] = y[j];
        }
        double sxx = 0.0, syy = 0.0, sxy = 0.0;
        const double mx = mean(bx), my = mean(by);
        for (std::size_t i = 0; i < bx.size(); ++i) {
            sxy += (bx[i] - mx) * (by[i] - my);
            sxx += (bx[i] - mx) * (bx[i] - mx);
            syy += (by[i] - my) * (by[i] - my);
        }
        if (sxx == 0.0 || syy == 0.0) continue;  // degenerate resample, skip
        rs.push_back(sxy / std::sqrt(sxx * syy));
    }
    PearsonWithCi out;
    out.r = r;
    out.n = x.size();
    if (rs.size() >= 2) {
        out.ci_lo = quantile(rs, 0.025);
        out.ci_hi = quantile(rs, 0.975);
    } else {
        out.ci_lo = out.ci_hi = r;
    }
    return out;
}

}  // namespace expspace
