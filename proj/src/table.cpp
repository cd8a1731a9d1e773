// Copyright 2026 The HQA Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqa/common/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hqa/common/error.hpp"

namespace hqa::table {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw FormatError("table has no column '" + std::string(name) + "'");
}

bool Table::has_column(std::string_view name) const {
    for (const auto &c : columns) {
        if (c == name) {
            return true;
        }
    }
    return false;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, res.ptr};
}

double parse_double(std::string_view text) {
    if (text == "nan") {
        return std::nan("");
    }
    double x = 0.0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) {
        throw FormatError("not a number: '" + std::string(text) + "'");
    }
    return x;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t x = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) {
        throw FormatError("not an unsigned integer: '" + std::string(text) + "'");
    }
    return x;
}

long parse_long(std::string_view text) {
    long x = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) {
        throw FormatError("not an integer: '" + std::string(text) + "'");
    }
    return x;
}

std::string to_string(const Table &t) {
    std::string out;
    for (const auto &[k, v] : t.meta) {
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "\t" : "") + t.columns[i];
    }
    out += "\n";
    for (const auto &row : t.rows) {
        if (row.size() != t.columns.size()) {
            throw FormatError("row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "\t" : "") + row[i];
        }
        out += "\n";
    }
    return out;
}

Table from_string(std::string_view text) {
    Table t;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            if (have_header) {
                continue;
            }
            auto body = line.substr(1);
            while (!body.empty() && body.front() == ' ') {
                body.remove_prefix(1);
            }
            const auto eq = body.find('=');
            if (eq != std::string_view::npos) {
                t.meta[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
            }
            continue;
        }
        auto fields = split_tabs(line);
        if (!have_header) {
            t.columns = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.columns.size()) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(t.columns.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
    }
    if (!have_header) {
        throw FormatError("table has no header row");
    }
    return t;
}

void write_text(const std::string &path, std::string_view text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

std::string read_text(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const Table &t) { write_text(path, to_string(t)); }

Table read_file(const std::string &path) { return from_string(read_text(path)); }

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hqa::table
