// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expspace {

enum class Errc {
    // corpus
    MissingFile,
    SchemaViolation,
    DuplicateKey,
    NegativeCount,
    UnknownPeriod,
    NetworkDisabled,
    HttpFailure,
    MalformedResponse,
    // advantage
    EmptyPeriod,
    DegenerateVector,
    NoAdvantages,
    // relatedness
    EmptyMatrix,
    InvalidAlpha,
    // dynamics
    DimensionMismatch,
    SinglePeriod,
    InfeasibleCounts,
    // structure
    DegenerateMatrix,
    UnlabeledNode,
    // econometrics
    MissingUpstream,
    RankDeficient,
    InsufficientData,
    // cli
    MissingArtifact,
    ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

// Non-fatal findings: dropped rows, zero-output guards, cache notes.
using Diag = std::vector<std::string>;

inline void note(Diag* diag, std::string message) {
    if (diag != nullptr) diag->push_back(std::move(message));
}

// FNV-1a; used for artifact digests and seed-stream labels.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);  // throws MissingFile

std::string to_hex(std::uint64_t v);

// Shortest round-trip decimal form; the canonical float format of every artifact.
std::string format_double(double v);

std::string read_file(const std::string& path);  // throws MissingFile
// Write-temp-then-rename so partially written artifacts are never observed.
void write_file_atomic(const std::string& path, std::string_view content);

// Dense row-major matrix; the workhorse for RCA / phi / density tables.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

class BoolMat {
public:
    BoolMat() = default;
    BoolMat(std::size_t rows, std::size_t cols, bool fill = false)
        : rows_(rows), cols_(cols), data_(rows * cols, fill ? 1 : 0) {}

    std::uint8_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::size_t count() const;  // number of set cells

    std::vector<std::uint8_t>& data() { return data_; }
    const std::vector<std::uint8_t>& data() const { return data_; }

    bool operator==(const BoolMat& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

}  // namespace expspace
