// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "expspace/common.hpp"

namespace expspace {

// UTF-8 CSV with a header row. Quoted fields may contain commas, quotes and
// newlines; line numbers refer to the line a record starts on.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based, parallel to rows

    // header lookup; throws SchemaViolation when the column is absent
    std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(std::string_view text, const std::string& origin);
CsvTable read_csv(const std::string& path);

std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

// Canonical writer: header + rows, '\n' line endings, atomic replace.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Field parsers that carry the (line, column) position into error messages.
long long parse_int_field(const std::string& s, std::size_t line, const std::string& column);
double parse_double_field(const std::string& s, std::size_t line, const std::string& column);

}  // namespace expspace
