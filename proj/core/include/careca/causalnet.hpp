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

// CausalNet toolkit: schema, validation, quality filtering, statistics and
// the bridge into CausalItem.
//
// One entry per line:
//
//   {"id": "cn-0001", "context": "...",
//    "questions": [{"kind": "CauseEffect", "text": "...",
//                   "choices": ["...", "..."], "answer": 1}, ...]}

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "careca/corpus.hpp"

namespace careca::causalnet {

enum class Kind { CauseEffect, Counterfactual };

struct Question {
  Kind kind = Kind::CauseEffect;
  std::string text;
  std::vector<std::string> choices;
  std::size_t answer = 0;

  friend bool operator==(const Question&, const Question&) = default;
};

struct Entry {
  std::string id;
  std::string context;
  std::vector<Question> questions;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Either a typed entry or the list of everything wrong with the record.
// Violation messages are stable strings such as "missing field: context"
// or "questions[1]: answer out of range".
struct Validation {
  std::optional<Entry> entry;
  std::vector<std::string> violations;

  bool ok() const { return entry.has_value(); }
};

Validation validate(const nlohmann::json& record);
nlohmann::json to_json(const Entry& entry);

// Per-line validation of a JSONL stream. Lines that are not JSON produce a
// single "invalid JSON" violation. Blank lines are skipped.
struct LineValidation {
  std::size_t line = 0;
  Validation result;
};
std::vector<LineValidation> validate_stream(std::istream& in);

// Strict loader: first invalid line throws LoadError.
std::vector<Entry> load_entries(std::istream& in);
std::vector<Entry> load_entries(const std::filesystem::path& path);

struct FilterPolicy {
  bool drop_duplicates = true;
  std::size_t min_context_words = 25;
  bool require_both_kinds = false;
};

struct Rejection {
  Entry entry;
  std::string reason;  // "too short", "missing question kind", "duplicate"
};

struct FilterResult {
  std::vector<Entry> kept;
  std::vector<Rejection> rejected;
};

// Checks run in order: length, kind coverage, duplicate of an already kept
// context. Contexts compare equal after fold().
FilterResult filter_corpus(const std::vector<Entry>& entries,
                           const FilterPolicy& policy = {});

std::size_t word_count(std::string_view text);

// The prompt used to generate the original scenarios.
const std::string& emit_generation_prompt();

struct CorpusStats {
  std::size_t entry_count = 0;
  std::size_t question_count = 0;
  std::size_t cause_effect_questions = 0;
  std::size_t counterfactual_questions = 0;
  double mean_choices = 0.0;
  std::size_t duplicate_contexts = 0;
};

CorpusStats stats(const std::vector<Entry>& entries);

// One item per question, ids "<entry id>#q<k>" with k starting at 1.
std::vector<CausalItem> to_causal_items(const std::vector<Entry>& entries);

}  // namespace careca::causalnet
