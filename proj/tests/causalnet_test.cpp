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


#include "careca/causalnet.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "careca/error.hpp"
#include "test_support.hpp"

namespace careca::causalnet {
namespace {

using careca::testing::fixture;

std::vector<Entry> sample() { return load_entries(fixture("causalnet_sample.jsonl")); }

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(Validate, BadFixture) {
  std::ifstream in(fixture("causalnet_bad.jsonl"));
  const auto lines = validate_stream(in);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_TRUE(has(lines[0].result.violations, "missing field: context"));
  EXPECT_TRUE(has(lines[1].result.violations, "questions[0]: answer out of range"));
  EXPECT_TRUE(has(lines[2].result.violations, "questions[0]: kind outside enum"));
  EXPECT_TRUE(has(lines[3].result.violations, "questions[0]: empty choices"));
  EXPECT_EQ(lines[4].result.violations, (std::vector<std::string>{"invalid JSON"}));
  EXPECT_TRUE(lines[5].result.ok());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_FALSE(lines[i].result.ok());
  EXPECT_EQ(lines[4].line, 5u);
}

TEST(Validate, StrictLoaderReportsLine) {
  std::ifstream in(fixture("causalnet_bad.jsonl"));
  try {
    load_entries(in);
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(Validate, SerializeRoundTrip) {
  for (const auto& e : sample()) {
    const auto v = validate(to_json(e));
    ASSERT_TRUE(v.ok());
    EXPECT_EQ(*v.entry, e);
  }
}

TEST(Validate, CollectsEveryViolation) {
  const auto v = validate(nlohmann::json{{"id", ""}, {"questions", nlohmann::json::array()}});
  EXPECT_FALSE(v.ok());
  EXPECT_EQ(v.violations,
            (std::vector<std::string>{"empty id", "missing field: context", "no questions"}));
  EXPECT_FALSE(validate(nlohmann::json(3)).ok());
}

TEST(Stats, Sample) {
  const auto s = stats(sample());
  EXPECT_EQ(s.entry_count, 50u);
  EXPECT_EQ(s.question_count, 95u);
  EXPECT_EQ(s.cause_effect_questions, 50u);
  EXPECT_EQ(s.counterfactual_questions, 45u);
  EXPECT_NEAR(s.mean_choices, 2.53, 0.005);
  EXPECT_EQ(s.duplicate_contexts, 0u);
}

TEST(Stats, Empty) {
  const auto s = stats({});
  EXPECT_EQ(s.entry_count, 0u);
  EXPECT_EQ(s.mean_choices, 0.0);
}

Entry entry(std::string id, std::string context, std::vector<Kind> kinds) {
  Entry e{std::move(id), std::move(context), {}};
  for (Kind k : kinds) e.questions.push_back({k, "q?", {"a", "b"}, 0});
  return e;
}

std::string words(std::size_t n, const std::string& w = "word") {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + w;
  return s;
}

TEST(Filter, ReasonsInOrder) {
  const std::vector<Entry> in = {
      entry("a", words(30), {Kind::CauseEffect, Kind::Counterfactual}),
      entry("b", words(10), {Kind::CauseEffect}),
      entry("c", words(30, "other"), {Kind::CauseEffect}),
      entry("d", "  " + words(30, "WORD") + " ", {Kind::CauseEffect, Kind::Counterfactual}),
  };
  FilterPolicy policy;
  policy.require_both_kinds = true;
  const auto r = filter_corpus(in, policy);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].id, "a");
  ASSERT_EQ(r.rejected.size(), 3u);
  EXPECT_EQ(r.rejected[0].reason, "too short");
  EXPECT_EQ(r.rejected[1].reason, "missing question kind");
  EXPECT_EQ(r.rejected[2].reason, "duplicate");

  policy.drop_duplicates = false;
  policy.require_both_kinds = false;
  EXPECT_EQ(filter_corpus(in, policy).kept.size(), 3u);
}

TEST(Filter, IdempotentAndEmpty) {
  const auto once = filter_corpus(sample());
  EXPECT_EQ(once.kept.size(), 50u);
  EXPECT_EQ(filter_corpus(once.kept).kept, once.kept);
  EXPECT_TRUE(filter_corpus({}).kept.empty());
}

TEST(WordCount, Basics) {
  EXPECT_EQ(word_count(""), 0u);
  EXPECT_EQ(word_count("  a  b\tc\n"), 3u);
}

TEST(Items, OnePerQuestion) {
  const auto entries = sample();
  const auto items = to_causal_items(entries);
  EXPECT_EQ(items.size(), 95u);
  EXPECT_EQ(items[0].id, entries[0].id + "#q1");
  EXPECT_EQ(items[0].task, TaskKind::CausalIdentification);
  EXPECT_EQ(items[0].question_kind, QuestionKind::CauseEffect);
  EXPECT_EQ(items[0].gold, entries[0].questions[0].answer);
  EXPECT_EQ(items[1].id, entries[0].id + "#q2");
  EXPECT_EQ(items[1].question_kind, QuestionKind::Counterfactual);
}

TEST(GenerationPrompt, Constant) {
  const std::string& p = emit_generation_prompt();
  EXPECT_EQ(&p, &emit_generation_prompt());
  EXPECT_EQ(p.rfind("Develop a dataset composed of entries", 0), 0u);
  EXPECT_NE(p.find("\"Context\""), std::string::npos);
  EXPECT_NE(p.find("\"Questions\""), std::string::npos);
}

}  // namespace
}  // namespace careca::causalnet
