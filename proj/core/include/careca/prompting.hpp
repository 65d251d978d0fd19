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

// Context-aware prompt assembly under a token budget.
//
// user_text layout, top to bottom:
//
//   <knowledge statements, space separated>      (optional)
//   <blank line>                                 (only after knowledge)
//   Premise: "<context>"
//   <item question>                              (Plausibility items only,
//                                                 when the record has one)
//   <question line>
//   Counterfactual statement: <s>                (one per counterfactual)
//   Hypothesis 1: <choice>                       (or "A) <choice>")
//   ...
//   Answer with the label only.
//
// Over budget, knowledge statements are dropped lowest-ranked first, then
// counterfactuals last-first. Everything from "Premise:" down to the
// instruction, minus the counterfactual lines, is the irreducible core.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "careca/corpus.hpp"
#include "careca/knowledge.hpp"

namespace careca {

enum class LabelStyle { Hypothesis, Letter };

std::string_view to_string(LabelStyle s);
std::optional<LabelStyle> parse_label_style(std::string_view s);

inline constexpr std::size_t kDefaultBudget = 1024;
inline constexpr std::string_view kDefaultSystemText = "You are a careful causal reasoner.";
inline constexpr std::string_view kInstruction = "Answer with the label only.";
inline constexpr std::string_view kCounterfactualPrefix = "Counterfactual statement: ";

struct PromptStyle {
  LabelStyle label_style = LabelStyle::Hypothesis;
  std::string system_text = std::string(kDefaultSystemText);
};

struct AblationFlags {
  bool use_cki = true;
  bool use_cre = true;

  friend bool operator==(const AblationFlags&, const AblationFlags&) = default;
};

// "cki+cre", "cki", "cre" or "none".
std::string to_string(const AblationFlags& f);

struct PromptPackage {
  std::string system_text;
  std::string user_text;
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> label_to_index;
  std::size_t token_estimate = 0;

  // What went into user_text, after ablation and budgeting.
  std::string premise;
  std::vector<std::string> choices;
  std::vector<std::string> statements;
  std::vector<std::string> counterfactuals;
  std::size_t dropped_statements = 0;
  std::size_t dropped_counterfactuals = 0;
  AblationFlags flags;
};

nlohmann::json to_json(const PromptPackage& pkg);

// ceil(code points / 4).
std::size_t estimate_tokens(std::string_view text);

// "Hypothesis 1", "Hypothesis 2", ... or "A)", "B)", ...
std::vector<std::string> make_labels(std::size_t count, LabelStyle style);

// Labels found at the start of user_text lines, in order.
std::vector<std::string> extract_labels(std::string_view user_text, LabelStyle style);

// "which hypothesis seems more plausible based on the understanding of
// shadows?" -- the topic is the first premise concept that the knowledge
// statements also mention; without one the clause is omitted.
std::string plausibility_question(const CausalItem& item,
                                  const std::vector<std::string>& statements);

// Throws BudgetError when even the core does not fit.
PromptPackage assemble(const CausalItem& item, const ContextBundle& bundle,
                       std::size_t budget = kDefaultBudget, const PromptStyle& style = {});

// assemble() with knowledge suppressed unless use_cki and counterfactuals
// suppressed unless use_cre. The flags are recorded on the package.
PromptPackage render_ablation(const CausalItem& item, const ContextBundle& bundle,
                              const AblationFlags& flags, std::size_t budget = kDefaultBudget,
                              const PromptStyle& style = {});

}  // namespace careca
