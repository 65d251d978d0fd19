// Copyright 2026 The careca Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small string helpers shared by every module.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace careca {

// Trims, collapses internal whitespace runs to one space. Never alters
// letters, digits or punctuation.
std::string normalize_text(std::string_view raw);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// ASCII-only case folding plus normalize_text; used for containment checks.
std::string fold(std::string_view s);

bool contains(std::string_view haystack, std::string_view needle);
bool starts_with_ci(std::string_view s, std::string_view prefix);

std::vector<std::string> split(std::string_view s, char sep);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

// Percent with one decimal, e.g. 0.823 -> "82.3". Locale independent.
std::string format_percent(double fraction);

// Shortest round-trippable decimal for a double. Locale independent.
std::string format_double(double v);

}  // namespace careca
