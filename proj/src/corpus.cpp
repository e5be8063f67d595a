// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "expspace/csv.hpp"

namespace expspace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string PeriodId::label() const {
    return std::to_string(start_year) + "_" + std::to_string(end_year);
}

const char* to_string(BroadCategory c) {
    switch (c) {
        case BroadCategory::NaturalScience: return "NaturalScience";
        case BroadCategory::MedicalScience: return "MedicalScience";
        case BroadCategory::Engineering: return "Engineering";
        case BroadCategory::SocialScience: return "SocialScience";
        case BroadCategory::ArtsHumanities: return "ArtsHumanities";
    }
    return "?";
}

BroadCategory parse_broad_category(const std::string& token, std::size_t line) {
    if (token == "NaturalScience") return BroadCategory::NaturalScience;
    if (token == "MedicalScience") return BroadCategory::MedicalScience;
    if (token == "Engineering") return BroadCategory::Engineering;
    if (token == "SocialScience") return BroadCategory::SocialScience;
    if (token == "ArtsHumanities") return BroadCategory::ArtsHumanities;
    fail(Errc::SchemaViolation,
         "line " + std::to_string(line) + ", column 'broad_category': unknown value '" + token + "'");
}

const char* to_string(IncomeGroup g) {
    switch (g) {
        case IncomeGroup::Low: return "Low";
        case IncomeGroup::LowerMiddle: return "LowerMiddle";
        case IncomeGroup::UpperMiddle: return "UpperMiddle";
        case IncomeGroup::High: return "High";
    }
    return "?";
}

IncomeGroup parse_income_group(const std::string& token, std::size_t line) {
    if (token == "Low") return IncomeGroup::Low;
    if (token == "LowerMiddle") return IncomeGroup::LowerMiddle;
    if (token == "UpperMiddle") return IncomeGroup::UpperMiddle;
    if (token == "High") return IncomeGroup::High;
    fail(Errc::SchemaViolation,
         "line " + std::to_string(line) + ", column 'income_group': unknown value '" + token + "'");
}

std::int64_t PublicationTensor::country_total(std::size_t c, std::size_t p) const {
    std::int64_t s = 0;
    for (std::size_t d = 0; d < discipline_index.size(); ++d) s += at(c, d, p);
    return s;
}

std::int64_t PublicationTensor::discipline_total(std::size_t d, std::size_t p) const {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < country_index.size(); ++c) s += at(c, d, p);
    return s;
}

std::int64_t PublicationTensor::period_total(std::size_t p) const {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < country_index.size(); ++c) s += country_total(c, p);
    return s;
}

namespace {
template <typename T>
std::optional<std::size_t> find_pos(const std::vector<T>& v, const T& key) {
    auto it = std::find(v.begin(), v.end(), key);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}
}  // namespace

std::optional<std::size_t> PublicationTensor::country_pos(const std::string& id) const {
    return find_pos(country_index, id);
}
std::optional<std::size_t> PublicationTensor::discipline_pos(const std::string& id) const {
    return find_pos(discipline_index, id);
}
std::optional<std::size_t> PublicationTensor::period_pos(const PeriodId& period) const {
    return find_pos(period_index, period);
}

IncomeGroup modal_income_group(const std::vector<IncomeGroup>& classes) {
    int counts[4] = {0, 0, 0, 0};
    for (IncomeGroup g : classes) counts[static_cast<int>(g)]++;
    // ties break toward the higher-income class
    int best = 3;
    for (int g = 3; g >= 0; --g)
        if (counts[g] > counts[best]) best = g;
    return static_cast<IncomeGroup>(best);
}

PeriodCovariates CovariatePanel::aggregate(const std::string& country,
                                           const PeriodId& period) const {
    PeriodCovariates out;
    double sums[4] = {0, 0, 0, 0};
    int ns[4] = {0, 0, 0, 0};
    std::vector<IncomeGroup> incomes;
    auto it = annual.lower_bound({country, period.start_year});
    for (; it != annual.end() && it->first.first == country && it->first.second <= period.end_year;
         ++it) {
        const AnnualCovariates& a = it->second;
        auto add = [&](int slot, const std::optional<double>& v) {
            if (v) {
                sums[slot] += *v;
                ns[slot]++;
            }
        };
        add(0, a.gdp);
        add(1, a.gdp_per_capita);
        add(2, a.eci);
        add(3, a.population);
        if (a.income_group) incomes.push_back(*a.income_group);
    }
    if (ns[0]) out.gdp = sums[0] / ns[0];
    if (ns[1]) out.gdp_per_capita = sums[1] / ns[1];
    if (ns[2]) out.eci = sums[2] / ns[2];
    if (ns[3]) out.population = sums[3] / ns[3];
    if (!incomes.empty()) out.income_group = modal_income_group(incomes);
    return out;
}

const Discipline* Corpus::find_discipline(const std::string& id) const {
    for (const auto& d : disciplines)
        if (d.id == id) return &d;
    return nullptr;
}

namespace {

bool valid_country_id(const std::string& id) {
    if (id.size() != 3) return false;
    for (char c : id)
        if (!std::isupper(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_absolute()) return path.string();
    return (base / path).lexically_normal().string();
}

struct ManifestPaths {
    std::string publications;
    std::string covariates;
    std::string taxonomy;
    std::vector<PeriodId> periods;
};

ManifestPaths read_manifest(const std::string& manifest_path) {
    json m;
    try {
        m = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        fail(Errc::SchemaViolation, manifest_path + ": " + e.what());
    }
    for (const char* key : {"publications", "covariates", "taxonomy", "periods"})
        if (!m.contains(key))
            fail(Errc::SchemaViolation, manifest_path + ": manifest missing key '" + std::string(key) + "'");
    ManifestPaths out;
    const fs::path base = fs::path(manifest_path).parent_path();
    out.publications = resolve(base, m["publications"].get<std::string>());
    out.covariates = resolve(base, m["covariates"].get<std::string>());
    out.taxonomy = resolve(base, m["taxonomy"].get<std::string>());
    for (const auto& p : m["periods"]) {
        if (!p.is_array() || p.size() != 2)
            fail(Errc::SchemaViolation, manifest_path + ": each period must be [start_year, end_year]");
        PeriodId period{p[0].get<int>(), p[1].get<int>()};
        if (period.end_year < period.start_year)
            fail(Errc::SchemaViolation, manifest_path + ": period " + period.label() + " ends before it starts");
        out.periods.push_back(period);
    }
    if (out.periods.empty())
        fail(Errc::SchemaViolation, manifest_path + ": empty period list");
    for (std::size_t i = 1; i < out.periods.size(); ++i)
        if (out.periods[i].start_year <= out.periods[i - 1].end_year)
            fail(Errc::SchemaViolation,
                 manifest_path + ": periods must be non-overlapping and ascending");
    return out;
}

}  // namespace

Corpus load_corpus(const std::string& manifest_path, Diag* diag) {
    const ManifestPaths manifest = read_manifest(manifest_path);
    Corpus corpus;
    corpus.periods = manifest.periods;

    // taxonomy first: publications rows are validated against it
    {
        CsvTable t = read_csv(manifest.taxonomy);
        const std::size_t c_id = t.column("discipline");
        const std::size_t c_name = t.column("name");
        const std::size_t c_cat = t.column("broad_category");
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            const std::size_t line = t.line_numbers[r];
            if (row[c_id].empty())
                fail(Errc::SchemaViolation, "line " + std::to_string(line) + ": empty discipline id");
            if (!seen.insert(row[c_id]).second)
                fail(Errc::DuplicateKey,
                     manifest.taxonomy + ":" + std::to_string(line) + ": discipline '" + row[c_id] + "'");
            corpus.disciplines.push_back(
                Discipline{row[c_id], row[c_name], parse_broad_category(row[c_cat], line)});
        }
        std::sort(corpus.disciplines.begin(), corpus.disciplines.end(),
                  [](const Discipline& a, const Discipline& b) { return a.id < b.id; });
    }

    // publications: build country list, then fill the dense tensor
    struct PubRow {
        std::size_t d, p;
        std::string country;
        std::int64_t count;
        std::size_t line;
    };
    std::vector<PubRow> pub_rows;
    {
        CsvTable t = read_csv(manifest.publications);
        const std::size_t c_country = t.column("country");
        const std::size_t c_disc = t.column("discipline");
        const std::size_t c_start = t.column("period_start");
        const std::size_t c_count = t.column("count");
        std::set<std::string> countries;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            const std::size_t line = t.line_numbers[r];
            const std::string& cid = row[c_country];
            if (!valid_country_id(cid))
                fail(Errc::SchemaViolation, "line " + std::to_string(line) +
                                                ", column 'country': '" + cid +
                                                "' is not an uppercase ISO alpha-3 code");
            auto dpos = std::lower_bound(
                corpus.disciplines.begin(), corpus.disciplines.end(), row[c_disc],
                [](const Discipline& d, const std::string& id) { return d.id < id; });
            if (dpos == corpus.disciplines.end() || dpos->id != row[c_disc])
                fail(Errc::SchemaViolation, "line " + std::to_string(line) +
                                                ", column 'discipline': '" + row[c_disc] +
                                                "' is not in the taxonomy");
            const long long start = parse_int_field(row[c_start], line, "period_start");
            std::optional<std::size_t> ppos;
            for (std::size_t i = 0; i < corpus.periods.size(); ++i)
                if (corpus.periods[i].start_year == start) ppos = i;
            if (!ppos)
                fail(Errc::SchemaViolation, "line " + std::to_string(line) +
                                                ", column 'period_start': no period starts at " +
                                                std::to_string(start));
            const long long count = parse_int_field(row[c_count], line, "count");
            if (count < 0)
                fail(Errc::NegativeCount,
                     "line " + std::to_string(line) + ": count " + std::to_string(count));
            countries.insert(cid);
            pub_rows.push_back(PubRow{static_cast<std::size_t>(dpos - corpus.disciplines.begin()),
                                      *ppos, cid, count, line});
        }
        for (const auto& id : countries) corpus.countries.push_back(Country{id, id});
    }

    PublicationTensor& tensor = corpus.tensor;
    for (const auto& c : corpus.countries) tensor.country_index.push_back(c.id);
    for (const auto& d : corpus.disciplines) tensor.discipline_index.push_back(d.id);
    tensor.period_index = corpus.periods;
    tensor.counts.assign(
        tensor.country_index.size() * tensor.discipline_index.size() * tensor.period_index.size(),
        0);
    {
        std::set<std::tuple<std::string, std::size_t, std::size_t>> seen;
        for (const auto& row : pub_rows) {
            if (!seen.insert({row.country, row.d, row.p}).second)
                fail(Errc::DuplicateKey,
                     manifest.publications + ":" + std::to_string(row.line) + ": (" + row.country +
                         ", " + tensor.discipline_index[row.d] + ", " +
                         corpus.periods[row.p].label() + ")");
            const std::size_t c = *tensor.country_pos(row.country);
            tensor.at(c, row.d, row.p) = row.count;
        }
    }

    // covariates: annual rows; empty cell = missing
    {
        CsvTable t = read_csv(manifest.covariates);
        const std::size_t c_country = t.column("country");
        const std::size_t c_year = t.column("year");
        const std::size_t c_gdp = t.column("gdp");
        const std::size_t c_gdppc = t.column("gdp_per_capita");
        const std::size_t c_eci = t.column("eci");
        const std::size_t c_pop = t.column("population");
        const std::size_t c_inc = t.column("income_group");
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            const std::size_t line = t.line_numbers[r];
            const std::string& cid = row[c_country];
            if (!valid_country_id(cid))
                fail(Errc::SchemaViolation, "line " + std::to_string(line) +
                                                ", column 'country': '" + cid +
                                                "' is not an uppercase ISO alpha-3 code");
            const int year = static_cast<int>(parse_int_field(row[c_year], line, "year"));
            AnnualCovariates a;
            auto positive = [&](const std::string& s, const char* col) -> std::optional<double> {
                if (s.empty()) return std::nullopt;
                const double v = parse_double_field(s, line, col);
                if (v <= 0.0)
                    fail(Errc::SchemaViolation, "line " + std::to_string(line) + ", column '" +
                                                    col + "': must be strictly positive, got " + s);
                return v;
            };
            a.gdp = positive(row[c_gdp], "gdp");
            a.gdp_per_capita = positive(row[c_gdppc], "gdp_per_capita");
            if (!row[c_eci].empty()) a.eci = parse_double_field(row[c_eci], line, "eci");
            a.population = positive(row[c_pop], "population");
            if (!row[c_inc].empty()) a.income_group = parse_income_group(row[c_inc], line);
            auto [it, inserted] = corpus.covariates.annual.insert({{cid, year}, a});
            if (!inserted)
                fail(Errc::DuplicateKey, manifest.covariates + ":" + std::to_string(line) + ": (" +
                                             cid + ", " + std::to_string(year) + ")");
        }
    }

    note(diag, "loaded corpus: " + std::to_string(corpus.countries.size()) + " countries, " +
                   std::to_string(corpus.disciplines.size()) + " disciplines, " +
                   std::to_string(corpus.periods.size()) + " periods");
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t c = 0; c < corpus.tensor.country_index.size(); ++c)
            for (std::size_t d = 0; d < corpus.tensor.discipline_index.size(); ++d)
                for (std::size_t p = 0; p < corpus.tensor.period_index.size(); ++p)
                    rows.push_back({corpus.tensor.country_index[c],
                                    corpus.tensor.discipline_index[d],
                                    std::to_string(corpus.tensor.period_index[p].start_year),
                                    std::to_string(corpus.tensor.at(c, d, p))});
        write_csv((dir / "publications.csv").string(),
                  {"country", "discipline", "period_start", "count"}, rows);
    }
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [key, a] : corpus.covariates.annual) {
            auto opt = [](const std::optional<double>& v) {
                return v ? format_double(*v) : std::string();
            };
            rows.push_back({key.first, std::to_string(key.second), opt(a.gdp),
                            opt(a.gdp_per_capita), opt(a.eci), opt(a.population),
                            a.income_group ? to_string(*a.income_group) : ""});
        }
        write_csv((dir / "covariates.csv").string(),
                  {"country", "year", "gdp", "gdp_per_capita", "eci", "population", "income_group"},
                  rows);
    }
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& d : corpus.disciplines)
            rows.push_back({d.id, d.name, to_string(d.broad_category)});
        write_csv((dir / "taxonomy.csv").string(), {"discipline", "name", "broad_category"}, rows);
    }
    {
        json m;
        m["publications"] = "publications.csv";
        m["covariates"] = "covariates.csv";
        m["taxonomy"] = "taxonomy.csv";
        json periods = json::array();
        for (const auto& p : corpus.periods) periods.push_back({p.start_year, p.end_year});
        m["periods"] = periods;
        write_file_atomic((dir / "manifest.json").string(), m.dump(2) + "\n");
    }
}

Corpus restrict(const Corpus& corpus, long long min_total_pubs, const PeriodId& period,
                Diag* diag) {
    auto ppos = corpus.tensor.period_pos(period);
    if (!ppos) fail(Errc::UnknownPeriod, period.label());

    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < corpus.countries.size(); ++c) {
        if (corpus.tensor.country_total(c, *ppos) >= min_total_pubs) kept.push_back(c);
        else note(diag, "restrict: dropped " + corpus.countries[c].id + " (total below " +
                            std::to_string(min_total_pubs) + " in " + period.label() + ")");
    }

    Corpus out;
    out.disciplines = corpus.disciplines;
    out.periods = corpus.periods;
    out.covariates = corpus.covariates;
    for (std::size_t c : kept) out.countries.push_back(corpus.countries[c]);
    out.tensor.discipline_index = corpus.tensor.discipline_index;
    out.tensor.period_index = corpus.tensor.period_index;
    for (std::size_t c : kept) out.tensor.country_index.push_back(corpus.tensor.country_index[c]);
    out.tensor.counts.assign(kept.size() * out.tensor.discipline_index.size() *
                                 out.tensor.period_index.size(),
                             0);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t d = 0; d < out.tensor.discipline_index.size(); ++d)
            for (std::size_t p = 0; p < out.tensor.period_index.size(); ++p)
                out.tensor.at(i, d, p) = corpus.tensor.at(kept[i], d, p);
    return out;
}

}  // namespace expspace
