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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

/// Tab-separated tables with `# key=value` metadata lines above a header row.
namespace hqa::table {

struct Table {
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] bool has_column(std::string_view name) const;
};

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] std::string format_double(double x);
[[nodiscard]] double parse_double(std::string_view text);
[[nodiscard]] std::uint64_t parse_u64(std::string_view text);
[[nodiscard]] long parse_long(std::string_view text);

[[nodiscard]] std::string to_string(const Table &t);
[[nodiscard]] Table from_string(std::string_view text);

void write_file(const std::string &path, const Table &t);
[[nodiscard]] Table read_file(const std::string &path);

/// Writes raw text, creating parent directories.
void write_text(const std::string &path, std::string_view text);
[[nodiscard]] std::string read_text(const std::string &path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

} // namespace hqa::table
