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


#include "careca/text.hpp"

#include <gtest/gtest.h>

namespace careca {
namespace {

TEST(NormalizeText, CollapsesWhitespace) {
  EXPECT_EQ(normalize_text("  heavy   rain "), "heavy rain");
  EXPECT_EQ(normalize_text("flooded."), "flooded.");
  EXPECT_EQ(normalize_text(""), "");
  EXPECT_EQ(normalize_text("a\t\nb"), "a b");
}

TEST(NormalizeText, KeepsPunctuationAndCase) {
  EXPECT_EQ(normalize_text(" It's  DONE,  really! "), "It's DONE, really!");
}

TEST(Fold, LowersAndNormalizes) { EXPECT_EQ(fold("  The  Sun "), "the sun"); }

TEST(Split, KeepsEmptyFields) {
  EXPECT_EQ(split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(split("", ','), (std::vector<std::string>{""}));
}

TEST(Utf8Length, CountsCodePoints) {
  EXPECT_EQ(utf8_length(""), 0u);
  EXPECT_EQ(utf8_length("abc"), 3u);
  EXPECT_EQ(utf8_length("caf\xc3\xa9"), 4u);
}

TEST(Fnv1a64, KnownVectors) {
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(fnv1a64("foobar")), "85944171f73967e8");
}

TEST(FormatPercent, OneDecimal) {
  EXPECT_EQ(format_percent(0.760), "76.0");
  EXPECT_EQ(format_percent(0.823), "82.3");
  EXPECT_EQ(format_percent(0.781), "78.1");
  EXPECT_EQ(format_percent(1.0), "100.0");
  EXPECT_EQ(format_percent(0.0), "0.0");
  EXPECT_EQ(format_percent(-0.0), "0.0");
  EXPECT_EQ(format_percent(2.0 / 3.0), "66.7");
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.75), "0.75");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(0.1), "0.1");
}

}  // namespace
}  // namespace careca
