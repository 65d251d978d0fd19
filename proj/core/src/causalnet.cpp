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

#include <fstream>
#include <set>
#include <unordered_set>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca::causalnet {

using nlohmann::json;

namespace {

std::string_view kind_name(Kind k) {
  return k == Kind::CauseEffect ? "CauseEffect" : "Counterfactual";
}

std::optional<Kind> parse_kind(const json& j) {
  if (!j.is_string()) return std::nullopt;
  const std::string s = j.get<std::string>();
  if (s == "CauseEffect") return Kind::CauseEffect;
  if (s == "Counterfactual") return Kind::Counterfactual;
  return std::nullopt;
}

void check_question(const json& q, std::size_t index, Question& out,
                    std::vector<std::string>& violations) {
  const std::string where = "questions[" + std::to_string(index) + "]: ";
  if (!q.is_object()) {
    violations.push_back(where + "not an object");
    return;
  }
  if (auto it = q.find("kind"); it == q.end()) {
    violations.push_back(where + "missing field: kind");
  } else if (auto k = parse_kind(*it)) {
    out.kind = *k;
  } else {
    violations.push_back(where + "kind outside enum");
  }

  if (auto it = q.find("text"); it == q.end()) {
    violations.push_back(where + "missing field: text");
  } else if (!it->is_string() || normalize_text(it->get<std::string>()).empty()) {
    violations.push_back(where + "empty text");
  } else {
    out.text = normalize_text(it->get<std::string>());
  }

  bool choices_ok = false;
  if (auto it = q.find("choices"); it == q.end()) {
    violations.push_back(where + "missing field: choices");
  } else if (!it->is_array() || it->empty()) {
    violations.push_back(where + "empty choices");
  } else {
    std::set<std::string> seen;
    choices_ok = true;
    for (const auto& c : *it) {
      if (!c.is_string() || normalize_text(c.get<std::string>()).empty()) {
        violations.push_back(where + "empty choice");
        choices_ok = false;
        break;
      }
      out.choices.push_back(normalize_text(c.get<std::string>()));
      if (!seen.insert(out.choices.back()).second) {
        violations.push_back(where + "duplicate choice");
        choices_ok = false;
        break;
      }
    }
    if (choices_ok && out.choices.size() < 2) {
      violations.push_back(where + "fewer than two choices");
      choices_ok = false;
    }
  }

  if (auto it = q.find("answer"); it == q.end()) {
    violations.push_back(where + "missing field: answer");
  } else if (!it->is_number_integer()) {
    violations.push_back(where + "answer is not an integer");
  } else {
    const long long a = it->get<long long>();
    if (a < 0 || (choices_ok && static_cast<std::size_t>(a) >= out.choices.size())) {
      violations.push_back(where + "answer out of range");
    } else {
      out.answer = static_cast<std::size_t>(a);
    }
  }
}

}  // namespace

Validation validate(const json& record) {
  Validation v;
  if (!record.is_object()) {
    v.violations.push_back("record is not an object");
    return v;
  }
  Entry entry;
  if (auto it = record.find("id"); it == record.end()) {
    v.violations.push_back("missing field: id");
  } else if (!it->is_string() || it->get<std::string>().empty()) {
    v.violations.push_back("empty id");
  } else {
    entry.id = it->get<std::string>();
  }

  if (auto it = record.find("context"); it == record.end()) {
    v.violations.push_back("missing field: context");
  } else if (!it->is_string() || normalize_text(it->get<std::string>()).empty()) {
    v.violations.push_back("empty context");
  } else {
    entry.context = normalize_text(it->get<std::string>());
  }

  if (auto it = record.find("questions"); it == record.end()) {
    v.violations.push_back("missing field: questions");
  } else if (!it->is_array() || it->empty()) {
    v.violations.push_back("no questions");
  } else {
    for (std::size_t i = 0; i < it->size(); ++i) {
      Question q;
      check_question((*it)[i], i, q, v.violations);
      entry.questions.push_back(std::move(q));
    }
  }

  if (v.violations.empty()) v.entry = std::move(entry);
  return v;
}

json to_json(const Entry& entry) {
  json qs = json::array();
  for (const auto& q : entry.questions) {
    qs.push_back({{"kind", kind_name(q.kind)},
                  {"text", q.text},
                  {"choices", q.choices},
                  {"answer", q.answer}});
  }
  return {{"id", entry.id}, {"context", entry.context}, {"questions", std::move(qs)}};
}

std::vector<LineValidation> validate_stream(std::istream& in) {
  std::vector<LineValidation> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    LineValidation lv;
    lv.line = line;
    try {
      lv.result = validate(json::parse(text));
    } catch (const json::parse_error&) {
      lv.result.violations.push_back("invalid JSON");
    }
    out.push_back(std::move(lv));
  }
  return out;
}

std::vector<Entry> load_entries(std::istream& in) {
  std::vector<Entry> entries;
  for (auto& lv : validate_stream(in)) {
    if (!lv.result.ok()) throw LoadError(lv.line, lv.result.violations.front());
    entries.push_back(std::move(*lv.result.entry));
  }
  return entries;
}

std::vector<Entry> load_entries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CausalNet file: " + path.string());
  return load_entries(in);
}

std::size_t word_count(std::string_view text) {
  const std::string n = normalize_text(text);
  if (n.empty()) return 0;
  std::size_t words = 1;
  for (char c : n) words += (c == ' ');
  return words;
}

FilterResult filter_corpus(const std::vector<Entry>& entries, const FilterPolicy& policy) {
  FilterResult out;
  std::unordered_set<std::string> kept_contexts;
  for (const auto& e : entries) {
    if (word_count(e.context) < policy.min_context_words) {
      out.rejected.push_back({e, "too short"});
      continue;
    }
    if (policy.require_both_kinds) {
      bool cause = false;
      bool counter = false;
      for (const auto& q : e.questions) {
        (q.kind == Kind::CauseEffect ? cause : counter) = true;
      }
      if (!cause || !counter) {
        out.rejected.push_back({e, "missing question kind"});
        continue;
      }
    }
    if (policy.drop_duplicates && !kept_contexts.insert(fold(e.context)).second) {
      out.rejected.push_back({e, "duplicate"});
      continue;
    }
    out.kept.push_back(e);
  }
  return out;
}

const std::string& emit_generation_prompt() {
  static const std::string kPrompt =
      "Develop a dataset composed of entries that challenge and enhance machine "
      "learning models' understanding of causal relationships and counterfactual "
      "reasoning across various domains. Each entry in the dataset should follow "
      "this structure:\n"
      "\"Context\": A detailed description of a scenario that outlines a complex "
      "situation involving causal relationships.\n"
      "\"Questions\": A set of questions focusing on (1) identifying causal effects "
      "within the context and (2) exploring counterfactual scenarios, with "
      "multiple-choice answers to infer the model's reasoning capabilities.\n";
  return kPrompt;
}

CorpusStats stats(const std::vector<Entry>& entries) {
  CorpusStats s;
  s.entry_count = entries.size();
  std::size_t choices = 0;
  std::unordered_set<std::string> contexts;
  for (const auto& e : entries) {
    if (!contexts.insert(fold(e.context)).second) ++s.duplicate_contexts;
    for (const auto& q : e.questions) {
      ++s.question_count;
      (q.kind == Kind::CauseEffect ? s.cause_effect_questions : s.counterfactual_questions)++;
      choices += q.choices.size();
    }
  }
  if (s.question_count > 0) {
    s.mean_choices = static_cast<double>(choices) / static_cast<double>(s.question_count);
  }
  return s;
}

std::vector<CausalItem> to_causal_items(const std::vector<Entry>& entries) {
  std::vector<CausalItem> items;
  for (const auto& e : entries) {
    for (std::size_t k = 0; k < e.questions.size(); ++k) {
      const Question& q = e.questions[k];
      CausalItem item;
      item.id = e.id + "#q" + std::to_string(k + 1);
      item.task = TaskKind::CausalIdentification;
      item.context = e.context;
      item.question = q.text;
      item.question_kind =
          q.kind == Kind::CauseEffect ? QuestionKind::CauseEffect : QuestionKind::Counterfactual;
      item.choices = q.choices;
      item.gold = q.answer;
      items.push_back(std::move(item));
    }
  }
  return items;
}

}  // namespace careca::causalnet
