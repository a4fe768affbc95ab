// Copyright 2026 The Moralkit Authors.
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

#ifndef MORALKIT_CSV_HPP_
#define MORALKIT_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace moralkit {

// Minimal RFC-4180 reader: quoted fields, doubled quotes inside quotes,
// CRLF-tolerant. Blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_field(std::string_view raw);
std::string csv_row(const std::vector<std::string>& fields);

// Tab-separated lines with no quoting; keeps empty trailing fields.
// Returns (line_number, fields) pairs, skipping blank lines.
std::vector<std::pair<int, std::vector<std::string>>> read_tsv(
    const std::string& path);

}  // namespace moralkit

#endif  // MORALKIT_CSV_HPP_
