// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <functional>
#include <string>

#include "expspace/common.hpp"

namespace expspace {

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpGet = std::function<HttpResponse(const std::string& url)>;

std::string worldbank_indicator_url(const std::string& indicator_code, int page);

// Convenience client for World Bank indicator tables (e.g. NY.GDP.MKTP.CD).
// Offline by default: the cache is consulted first and the network is only
// touched when `offline` is false. Cached files are `<indicator>.csv` with a
// `<indicator>.retrieved.txt` timestamp sidecar.
class WorldBankClient {
public:
    WorldBankClient(std::string cache_dir, bool offline, HttpGet http = nullptr);

    // returns the path of the cached CSV (columns country,year,value)
    std::string fetch_indicator(const std::string& indicator_code, Diag* diag = nullptr);

private:
    std::string cache_dir_;
    bool offline_;
    HttpGet http_;
};

}  // namespace expspace
