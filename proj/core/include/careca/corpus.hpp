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

// Benchmark item model and the line-delimited dataset loaders.
//
// Every dataset is stored as UTF-8 JSON Lines. The canonical record is
//
//   {"id": "...", "context": "...", "question": "...",
//    "question_kind": "Plausibility", "choices": ["...", "..."], "gold": 0}
//
// with `question` optional. COPA files may also use the upstream shape
// {premise, choice1, choice2, question|asks-for, label} where `label` names
// the correct choice by its 1-based number. CausalNet files carry entries
// (see causalnet.hpp) that fan out into one item per question.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace careca {

enum class TaskKind { CausalDiscovery, CausalIdentification, CounterfactualReasoning };
enum class QuestionKind { CauseEffect, Counterfactual, Plausibility };
enum class DatasetName { COPA, ECare, CLadder, Com2Sense, TimeTravel, CausalNet };

std::string_view to_string(TaskKind t);
std::string_view to_string(QuestionKind k);
std::string_view to_string(DatasetName d);

// Human-readable experiment heading, e.g. "Causal Discovery".
std::string_view experiment_name(TaskKind t);

std::optional<QuestionKind> parse_question_kind(std::string_view s);
// Case-insensitive; accepts "e-care"/"ecare", "timetravel", ...
std::optional<DatasetName> parse_dataset_name(std::string_view s);

// Fixed dataset -> task mapping.
TaskKind task_for(DatasetName d);

struct CausalItem {
  std::string id;
  TaskKind task = TaskKind::CausalDiscovery;
  std::string context;
  std::string question;
  QuestionKind question_kind = QuestionKind::Plausibility;
  std::vector<std::string> choices;
  std::size_t gold = 0;

  friend bool operator==(const CausalItem&, const CausalItem&) = default;
};

// Empty string when the item is valid, otherwise the first violated rule.
std::string check_item(const CausalItem& item);

struct DatasetDescriptor {
  DatasetName name = DatasetName::COPA;
  std::filesystem::path path;

  TaskKind task() const { return task_for(name); }
};

struct DatasetSplit {
  std::vector<CausalItem> train;
  std::vector<CausalItem> test;
  std::uint64_t seed = 0;
  double ratio = 0.75;
};

// Throws ConfigError when the file cannot be opened, LoadError (with the
// 1-based line number) on the first malformed record.
std::vector<CausalItem> load_dataset(const DatasetDescriptor& desc);
std::vector<CausalItem> load_dataset(std::istream& in, DatasetName name);

// Parses a single record. `line` is only used for error messages.
std::vector<CausalItem> parse_record(const nlohmann::json& record,
                                     DatasetName name, std::size_t line);

nlohmann::json to_json(const CausalItem& item);
CausalItem item_from_json(const nlohmann::json& j);

// Canonical JSONL rendering, one item per line.
std::string serialize_items(const std::vector<CausalItem>& items);

// round(ratio * n) with ties rounded up.
std::size_t train_size(std::size_t n, double ratio);

// Seeded Fisher-Yates partition. Both sides keep input order. Throws
// ArgumentError unless 0 < ratio < 1 and items is non-empty.
DatasetSplit split(const std::vector<CausalItem>& items, double ratio,
                   std::uint64_t seed);

}  // namespace careca
