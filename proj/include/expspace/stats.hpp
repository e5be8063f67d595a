// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace expspace {

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);  // n-1 denominator; 0 when n < 2

double pearson(std::span<const double> x, std::span<const double> y);

// simple OLS y = a + b x; returns {intercept, slope}
std::pair<double, double> ols_line(std::span<const double> x, std::span<const double> y);

// q in [0,1]; linear interpolation between order statistics
double quantile(std::vector<double> v, double q);

// Student-t distribution: two-sided p-value and upper critical value
double t_two_sided_p(double t, double df);
double t_critical(double df, double level = 0.975);

// F distribution upper tail
double f_upper_p(double f, double df1, double df2);

// Chi-square upper tail
double chi2_upper_p(double x, double df);

// Welch's t statistic and one-tailed p for mean(a) > mean(b)
struct WelchResult {
    double t;
    double df;
    double p_one_tailed;
};
WelchResult welch_one_tailed(std::span<const double> a, std::span<const double> b);

struct PearsonWithCi {
    double r;
    double ci_lo, ci_hi;
    std::size_t n;
};
// percentile bootstrap CI on paired rows
PearsonWithCi pearson_bootstrap_ci(std::span<const double> x, std::span<const double> y,
                                   int iterations, std::uint64_t seed);

}  // namespace expspace
