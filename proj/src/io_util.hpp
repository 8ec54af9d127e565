// Copyright 2026 The gpishoulder Authors
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

// Internal helpers for CSV text and file output.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gpis::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Strict parse of a full field; throws Errc::parse naming `where`.
double parse_double(std::string_view text, const std::string& where);

std::vector<std::string_view> split_csv(std::string_view line);
std::string_view trim(std::string_view s);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Reads a numeric CSV whose first line must equal `header` (after trimming).
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path, std::string_view header);

}  // namespace gpis::io
