// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "expspace/common.hpp"

namespace expspace {

struct PeriodId {
    int start_year = 0;
    int end_year = 0;

    std::string label() const;  // "1973_1977"
    bool contains_year(int y) const { return y >= start_year && y <= end_year; }
    auto operator<=>(const PeriodId&) const = default;
};

enum class BroadCategory { NaturalScience, MedicalScience, Engineering, SocialScience, ArtsHumanities };

const char* to_string(BroadCategory c);
// throws SchemaViolation for tokens outside the closed 5-value set
BroadCategory parse_broad_category(const std::string& token, std::size_t line);

struct Discipline {
    std::string id;
    std::string name;
    BroadCategory broad_category;
};

struct Country {
    std::string id;  // ISO-3166 alpha-3, uppercase
    std::string name;
};

enum class IncomeGroup { Low, LowerMiddle, UpperMiddle, High };

const char* to_string(IncomeGroup g);
IncomeGroup parse_income_group(const std::string& token, std::size_t line);

// counts indexed (country, discipline, period); country-major layout
struct PublicationTensor {
    std::vector<std::string> country_index;
    std::vector<std::string> discipline_index;
    std::vector<PeriodId> period_index;
    std::vector<std::int64_t> counts;

    std::int64_t& at(std::size_t c, std::size_t d, std::size_t p) {
        return counts[(c * discipline_index.size() + d) * period_index.size() + p];
    }
    std::int64_t at(std::size_t c, std::size_t d, std::size_t p) const {
        return counts[(c * discipline_index.size() + d) * period_index.size() + p];
    }

    std::int64_t country_total(std::size_t c, std::size_t p) const;
    std::int64_t discipline_total(std::size_t d, std::size_t p) const;
    std::int64_t period_total(std::size_t p) const;

    std::optional<std::size_t> country_pos(const std::string& id) const;
    std::optional<std::size_t> discipline_pos(const std::string& id) const;
    std::optional<std::size_t> period_pos(const PeriodId& period) const;
};

struct AnnualCovariates {
    std::optional<double> gdp;             // current US$
    std::optional<double> gdp_per_capita;  // US$
    std::optional<double> eci;
    std::optional<double> population;
    std::optional<IncomeGroup> income_group;
};

struct PeriodCovariates {
    std::optional<double> gdp;
    std::optional<double> gdp_per_capita;
    std::optional<double> eci;
    std::optional<double> population;
    std::optional<IncomeGroup> income_group;  // modal over the period's years
};

// Annual rows keyed (country, year); aggregation to periods is on demand.
// Missing covariates stay missing; downstream analyses skip, never impute.
struct CovariatePanel {
    std::map<std::pair<std::string, int>, AnnualCovariates> annual;

    // means over years present in the period; modal income group with ties
    // broken toward the higher-income class
    PeriodCovariates aggregate(const std::string& country, const PeriodId& period) const;
};

IncomeGroup modal_income_group(const std::vector<IncomeGroup>& classes);

struct Corpus {
    std::vector<Country> countries;        // sorted by id, aligned with tensor
    std::vector<Discipline> disciplines;   // sorted by id, aligned with tensor
    std::vector<PeriodId> periods;         // ascending
    PublicationTensor tensor;
    CovariatePanel covariates;

    const Discipline* find_discipline(const std::string& id) const;
};

// Manifest JSON: {"publications": path, "covariates": path, "taxonomy": path,
// "periods": [[1973,1977], ...]}. Relative paths resolve against the manifest.
Corpus load_corpus(const std::string& manifest_path, Diag* diag = nullptr);

// Canonical CSVs + manifest.json into out_dir. Dense publications table,
// sorted keys, shortest round-trip floats: saving a reloaded corpus is
// byte-identical.
void save_corpus(const Corpus& corpus, const std::string& out_dir);

// Drop countries whose total count in `period` is below the threshold.
Corpus restrict(const Corpus& corpus, long long min_total_pubs, const PeriodId& period,
                Diag* diag = nullptr);

}  // namespace expspace
