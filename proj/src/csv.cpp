// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 export-space contributors

#include "expspace/csv.hpp"

#include <charconv>

namespace expspace {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    fail(Errc::SchemaViolation, "missing column '" + name + "'");
}

CsvTable parse_csv(std::string_view text, const std::string& origin) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    std::size_t line = 1;
    std::size_t record_line = 1;
    bool any_field = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        any_field = true;
    };
    auto end_record = [&] {
        if (!any_field && record.empty()) return;  // blank line
        end_field();
        any_field = false;
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            if (record.size() != table.header.size())
                fail(Errc::SchemaViolation,
                     origin + ":" + std::to_string(record_line) + ": expected " +
                         std::to_string(table.header.size()) + " fields, got " +
                         std::to_string(record.size()));
            table.rows.push_back(std::move(record));
            table.line_numbers.push_back(record_line);
        }
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                field += c;
        }
    }
    if (in_quotes)
        fail(Errc::SchemaViolation, origin + ": unterminated quoted field");
    if (any_field || !field.empty() || !record.empty()) end_record();
    return table;
}

CsvTable read_csv(const std::string& path) {
    return parse_csv(read_file(path), path);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string out = csv_join(header);
    out += '\n';
    for (const auto& row : rows) {
        out += csv_join(row);
        out += '\n';
    }
    write_file_atomic(path, out);
}

long long parse_int_field(const std::string& s, std::size_t line, const std::string& column) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::SchemaViolation,
             "line " + std::to_string(line) + ", column '" + column + "': not an integer: '" + s + "'");
    return v;
}

double parse_double_field(const std::string& s, std::size_t line, const std::string& column) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::SchemaViolation,
             "line " + std::to_string(line) + ", column '" + column + "': not a number: '" + s + "'");
    return v;
}

}  // namespace expspace
