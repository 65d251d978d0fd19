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

#include "careca/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "careca/causalnet.hpp"
#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::CausalDiscovery: return "CausalDiscovery";
    case TaskKind::CausalIdentification: return "CausalIdentification";
    case TaskKind::CounterfactualReasoning: return "CounterfactualReasoning";
  }
  return "?";
}

std::string_view to_string(QuestionKind k) {
  switch (k) {
    case QuestionKind::CauseEffect: return "CauseEffect";
    case QuestionKind::Counterfactual: return "Counterfactual";
    case QuestionKind::Plausibility: return "Plausibility";
  }
  return "?";
}

std::string_view to_string(DatasetName d) {
  switch (d) {
    case DatasetName::COPA: return "COPA";
    case DatasetName::ECare: return "ECare";
    case DatasetName::CLadder: return "CLadder";
    case DatasetName::Com2Sense: return "Com2Sense";
    case DatasetName::TimeTravel: return "TimeTravel";
    case DatasetName::CausalNet: return "CausalNet";
  }
  return "?";
}

std::string_view experiment_name(TaskKind t) {
  switch (t) {
    case TaskKind::CausalDiscovery: return "Causal Discovery";
    case TaskKind::CausalIdentification: return "Causal Reasoning Identification";
    case TaskKind::CounterfactualReasoning: return "Counterfactual Reasoning";
  }
  return "?";
}

std::optional<QuestionKind> parse_question_kind(std::string_view s) {
  const std::string k = to_lower(s);
  if (k == "causeeffect" || k == "cause_effect") return QuestionKind::CauseEffect;
  if (k == "counterfactual") return QuestionKind::Counterfactual;
  if (k == "plausibility") return QuestionKind::Plausibility;
  return std::nullopt;
}

std::optional<DatasetName> parse_dataset_name(std::string_view s) {
  std::string k;
  for (char c : to_lower(s)) {
    if (c != '-' && c != '_' && c != ' ') k.push_back(c);
  }
  if (k == "copa") return DatasetName::COPA;
  if (k == "ecare") return DatasetName::ECare;
  if (k == "cladder") return DatasetName::CLadder;
  if (k == "com2sense") return DatasetName::Com2Sense;
  if (k == "timetravel") return DatasetName::TimeTravel;
  if (k == "causalnet") return DatasetName::CausalNet;
  return std::nullopt;
}

TaskKind task_for(DatasetName d) {
  switch (d) {
    case DatasetName::COPA:
    case DatasetName::ECare:
      return TaskKind::CausalDiscovery;
    case DatasetName::CLadder:
    case DatasetName::Com2Sense:
    case DatasetName::CausalNet:
      return TaskKind::CausalIdentification;
    case DatasetName::TimeTravel:
      return TaskKind::CounterfactualReasoning;
  }
  return TaskKind::CausalDiscovery;
}

std::string check_item(const CausalItem& item) {
  if (item.id.empty()) return "empty id";
  if (normalize_text(item.context).empty()) return "empty context";
  if (item.choices.size() < 2) return "fewer than two choices";
  if (item.gold >= item.choices.size()) return "gold index out of range";
  std::set<std::string> seen;
  for (const auto& c : item.choices) {
    std::string n = normalize_text(c);
    if (n.empty()) return "empty choice";
    if (!seen.insert(std::move(n)).second) return "duplicate choice";
  }
  return {};
}

namespace {

using nlohmann::json;

std::string require_string(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw std::invalid_argument(std::string("missing field: ") + key);
    return {};
  }
  if (!it->is_string()) {
    throw std::invalid_argument(std::string("field is not a string: ") + key);
  }
  return it->get<std::string>();
}

long long require_integer(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field: ") + key);
  if (!it->is_number_integer()) {
    throw std::invalid_argument(std::string("field is not an integer: ") + key);
  }
  return it->get<long long>();
}

std::size_t to_index(long long v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + " is negative");
  return static_cast<std::size_t>(v);
}

std::string copa_question(std::string_view asks_for) {
  const std::string k = to_lower(trim(asks_for));
  if (k == "cause") return "What was the CAUSE of this?";
  if (k == "effect" || k == "result") return "What happened as a RESULT?";
  if (k.empty()) return {};
  throw std::invalid_argument("unknown COPA question type: " + std::string(asks_for));
}

CausalItem from_canonical(const json& j, DatasetName name) {
  CausalItem item;
  item.id = require_string(j, "id", true);
  item.task = task_for(name);
  item.context = normalize_text(require_string(j, "context", true));
  item.question = normalize_text(require_string(j, "question", false));
  const std::string kind = require_string(j, "question_kind", true);
  auto qk = parse_question_kind(kind);
  if (!qk) throw std::invalid_argument("unknown question_kind: " + kind);
  item.question_kind = *qk;
  auto it = j.find("choices");
  if (it == j.end()) throw std::invalid_argument("missing field: choices");
  if (!it->is_array()) throw std::invalid_argument("field is not an array: choices");
  for (const auto& c : *it) {
    if (!c.is_string()) throw std::invalid_argument("choice is not a string");
    item.choices.push_back(normalize_text(c.get<std::string>()));
  }
  item.gold = to_index(require_integer(j, "gold"), "gold");
  return item;
}

// Upstream COPA: {premise, choice1, choice2, question|asks-for, label}.
CausalItem from_copa(const json& j) {
  CausalItem item;
  if (j.contains("id")) {
    item.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
  } else if (j.contains("idx")) {
    item.id = "copa-" + j["idx"].dump();
  } else {
    throw std::invalid_argument("missing field: id");
  }
  item.task = TaskKind::CausalDiscovery;
  item.context = normalize_text(require_string(j, "premise", true));
  std::string asks = require_string(j, "asks-for", false);
  if (asks.empty()) asks = require_string(j, "question", false);
  item.question = copa_question(asks);
  item.question_kind = QuestionKind::Plausibility;
  item.choices = {normalize_text(require_string(j, "choice1", true)),
                  normalize_text(require_string(j, "choice2", true))};
  const long long label = require_integer(j, "label");
  if (label < 1) throw std::invalid_argument("label must name choice 1 or 2");
  item.gold = static_cast<std::size_t>(label - 1);
  return item;
}

}  // namespace

std::vector<CausalItem> parse_record(const nlohmann::json& record,
                                     DatasetName name, std::size_t line) {
  if (!record.is_object()) throw LoadError(line, "record is not an object");
  std::vector<CausalItem> out;
  try {
    if (name == DatasetName::CausalNet) {
      auto v = causalnet::validate(record);
      if (!v.ok()) {
        std::string msg;
        for (const auto& s : v.violations) msg += (msg.empty() ? "" : "; ") + s;
        throw std::invalid_argument(msg);
      }
      out = causalnet::to_causal_items({*v.entry});
    } else if (name == DatasetName::COPA && record.contains("premise")) {
      out.push_back(from_copa(record));
    } else {
      out.push_back(from_canonical(record, name));
    }
  } catch (const std::invalid_argument& e) {
    throw LoadError(line, e.what());
  }
  for (const auto& item : out) {
    if (auto why = check_item(item); !why.empty()) throw LoadError(line, why);
  }
  return out;
}

std::vector<CausalItem> load_dataset(std::istream& in, DatasetName name) {
  std::vector<CausalItem> items;
  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      throw LoadError(line, std::string("invalid JSON: ") + e.what());
    }
    for (auto& item : parse_record(record, name, line)) {
      if (!ids.insert(item.id).second) throw LoadError(line, "duplicate id: " + item.id);
      items.push_back(std::move(item));
    }
  }
  return items;
}

std::vector<CausalItem> load_dataset(const DatasetDescriptor& desc) {
  std::ifstream in(desc.path);
  if (!in) throw ConfigError("cannot open dataset file: " + desc.path.string());
  return load_dataset(in, desc.name);
}

nlohmann::json to_json(const CausalItem& item) {
  json j;
  j["id"] = item.id;
  j["task"] = to_string(item.task);
  j["context"] = item.context;
  if (!item.question.empty()) j["question"] = item.question;
  j["question_kind"] = to_string(item.question_kind);
  j["choices"] = item.choices;
  j["gold"] = item.gold;
  return j;
}

CausalItem item_from_json(const nlohmann::json& j) {
  CausalItem item = from_canonical(j, DatasetName::COPA);
  if (auto it = j.find("task"); it != j.end() && it->is_string()) {
    const auto t = it->get<std::string>();
    if (t == "CausalIdentification") item.task = TaskKind::CausalIdentification;
    else if (t == "CounterfactualReasoning") item.task = TaskKind::CounterfactualReasoning;
    else item.task = TaskKind::CausalDiscovery;
  }
  return item;
}

std::string serialize_items(const std::vector<CausalItem>& items) {
  std::string out;
  for (const auto& item : items) {
    out += to_json(item).dump();
    out += '\n';
  }
  return out;
}

std::size_t train_size(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
}

DatasetSplit split(const std::vector<CausalItem>& items, double ratio,
                   std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ArgumentError("split ratio must lie strictly between 0 and 1");
  }
  if (items.empty()) throw ArgumentError("cannot split an empty item list");

  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // std::shuffle's use of the engine is implementation defined; draw the
  // swap positions directly so splits match across standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }

  const std::size_t n_train = std::min(train_size(items.size(), ratio), items.size());
  std::vector<bool> in_train(items.size(), false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;

  DatasetSplit out;
  out.seed = seed;
  out.ratio = ratio;
  out.train.reserve(n_train);
  out.test.reserve(items.size() - n_train);
  for (std::size_t i = 0; i < items.size(); ++i) {
    (in_train[i] ? out.train : out.test).push_back(items[i]);
  }
  return out;
}

}  // namespace careca
