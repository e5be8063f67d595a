// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/common.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace expspace {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MissingFile: return "MissingFile";
        case Errc::SchemaViolation: return "SchemaViolation";
        case Errc::DuplicateKey: return "DuplicateKey";
        case Errc::NegativeCount: return "NegativeCount";
        case Errc::UnknownPeriod: return "UnknownPeriod";
        case Errc::NetworkDisabled: return "NetworkDisabled";
        case Errc::HttpFailure: return "HttpFailure";
        case Errc::MalformedResponse: return "MalformedResponse";
        case Errc::EmptyPeriod: return "EmptyPeriod";
        case Errc::DegenerateVector: return "DegenerateVector";
        case Errc::NoAdvantages: return "NoAdvantages";
        case Errc::EmptyMatrix: return "EmptyMatrix";
        case Errc::InvalidAlpha: return "InvalidAlpha";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::SinglePeriod: return "SinglePeriod";
        case Errc::InfeasibleCounts: return "InfeasibleCounts";
        case Errc::DegenerateMatrix: return "DegenerateMatrix";
        case Errc::UnlabeledNode: return "UnlabeledNode";
        case Errc::MissingUpstream: return "MissingUpstream";
        case Errc::RankDeficient: return "RankDeficient";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::MissingArtifact: return "MissingArtifact";
        case Errc::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    return fnv1a64(read_file(path));
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::MissingFile, path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::MissingFile, "cannot open for write: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail(Errc::MissingFile, "short write: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::size_t BoolMat::count() const {
    std::size_t n = 0;
    for (auto b : data_) n += b;
    return n;
}

}  // namespace expspace
