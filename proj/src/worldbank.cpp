// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/worldbank.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>

#include <httplib.h>
#include <json.hpp>

#include "expspace/csv.hpp"

namespace expspace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string worldbank_indicator_url(const std::string& indicator_code, int page) {
    return "http://api.worldbank.org/v2/country/all/indicator/" + indicator_code +
           "?format=json&per_page=20000&page=" + std::to_string(page);
}

namespace {

HttpResponse default_http_get(const std::string& url) {
    // split "http://host/path?query"
    const std::string prefix = "http://";
    if (url.rfind(prefix, 0) != 0) fail(Errc::HttpFailure, "unsupported url scheme: " + url);
    const std::string rest = url.substr(prefix.size());
    const std::size_t slash = rest.find('/');
    const std::string host = rest.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : rest.substr(slash);
    httplib::Client client(host);
    client.set_connection_timeout(30);
    client.set_read_timeout(60);
    auto res = client.Get(path);
    if (!res) fail(Errc::HttpFailure, "no response from " + host);
    return HttpResponse{res->status, res->body};
}

}  // namespace

WorldBankClient::WorldBankClient(std::string cache_dir, bool offline, HttpGet http)
    : cache_dir_(std::move(cache_dir)), offline_(offline), http_(std::move(http)) {
    if (!http_) http_ = default_http_get;
}

std::string WorldBankClient::fetch_indicator(const std::string& indicator_code, Diag* diag) {
    fs::create_directories(cache_dir_);
    const fs::path csv_path = fs::path(cache_dir_) / (indicator_code + ".csv");
    if (fs::exists(csv_path)) {
        note(diag, "worldbank: cache hit for " + indicator_code);
        return csv_path.string();
    }
    if (offline_)
        fail(Errc::NetworkDisabled, indicator_code + " not cached and network access is disabled");

    // country,year,value rows accumulated over the paginated response
    std::vector<std::vector<std::string>> rows;
    int page = 1;
    int pages = 1;
    do {
        const std::string url = worldbank_indicator_url(indicator_code, page);
        const HttpResponse res = http_(url);
        if (res.status != 200)
            fail(Errc::HttpFailure, "status " + std::to_string(res.status) + " for " + url);
        json body;
        try {
            body = json::parse(res.body);
        } catch (const json::exception& e) {
            fail(Errc::MalformedResponse, std::string(e.what()) + " for " + url);
        }
        if (!body.is_array() || body.size() < 2 || !body[0].is_object() || !body[1].is_array())
            fail(Errc::MalformedResponse, "unexpected payload shape for " + url);
        pages = body[0].value("pages", 1);
        for (const auto& item : body[1]) {
            if (!item.is_object()) fail(Errc::MalformedResponse, "non-object row for " + url);
            const std::string iso3 = item.value("countryiso3code", "");
            const std::string date = item.value("date", "");
            if (iso3.empty() || date.empty()) continue;
            std::string value;
            if (item.contains("value") && !item["value"].is_null())
                value = format_double(item["value"].get<double>());
            rows.push_back({iso3, date, value});
        }
        ++page;
    } while (page <= pages);

    std::sort(rows.begin(), rows.end());
    write_csv(csv_path.string(), {"country", "year", "value"}, rows);

    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    write_file_atomic((fs::path(cache_dir_) / (indicator_code + ".retrieved.txt")).string(),
                      "retrieved_unix_seconds=" + std::to_string(secs.count()) + "\n");
    note(diag, "worldbank: fetched " + indicator_code + " (" + std::to_string(rows.size()) + " rows)");
    return csv_path.string();
}

}  // namespace expspace
