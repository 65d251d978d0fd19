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

#include "careca/prompting.hpp"

#include <algorithm>
#include <unordered_set>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::string pluralize(std::string word) {
  if (word.empty()) return word;
  if (ends_with(word, "s") || ends_with(word, "x") || ends_with(word, "z") ||
      ends_with(word, "ch") || ends_with(word, "sh")) {
    return word + "es";
  }
  if (word.size() > 1 && word.back() == 'y' && !is_vowel(word[word.size() - 2])) {
    word.pop_back();
    return word + "ies";
  }
  return word + "s";
}

struct Sections {
  const CausalItem* item = nullptr;
  std::vector<std::string> statements;
  std::string premise_line;
  std::vector<std::string> counterfactuals;
  std::vector<std::string> choice_lines;
};

std::string render(const Sections& s, std::size_t n_statements, std::size_t n_counterfactuals) {
  std::string out;
  for (std::size_t i = 0; i < n_statements; ++i) {
    if (i > 0) out += ' ';
    out += s.statements[i];
  }
  if (n_statements > 0) out += "\n\n";
  out += s.premise_line;
  out += '\n';
  // The topic hint only names knowledge that survived budgeting.
  const std::vector<std::string> kept(
      s.statements.begin(), s.statements.begin() + static_cast<std::ptrdiff_t>(n_statements));
  const CausalItem& item = *s.item;
  if (!item.question.empty()) {
    out += item.question;
    out += '\n';
  }
  if (item.question_kind == QuestionKind::Plausibility || item.question.empty()) {
    out += plausibility_question(item, kept);
    out += '\n';
  }
  for (std::size_t i = 0; i < n_counterfactuals; ++i) {
    out += kCounterfactualPrefix;
    out += s.counterfactuals[i];
    out += '\n';
  }
  for (const auto& c : s.choice_lines) {
    out += c;
    out += '\n';
  }
  out += kInstruction;
  return out;
}

}  // namespace

std::string_view to_string(LabelStyle s) {
  return s == LabelStyle::Hypothesis ? "hypothesis" : "letter";
}

std::optional<LabelStyle> parse_label_style(std::string_view s) {
  const std::string k = to_lower(trim(s));
  if (k == "hypothesis") return LabelStyle::Hypothesis;
  if (k == "letter") return LabelStyle::Letter;
  return std::nullopt;
}

std::string to_string(const AblationFlags& f) {
  if (f.use_cki && f.use_cre) return "cki+cre";
  if (f.use_cki) return "cki";
  if (f.use_cre) return "cre";
  return "none";
}

std::size_t estimate_tokens(std::string_view text) { return (utf8_length(text) + 3) / 4; }

std::vector<std::string> make_labels(std::size_t count, LabelStyle style) {
  std::vector<std::string> labels;
  labels.reserve(count);
  if (style == LabelStyle::Letter && count > 26) {
    throw ArgumentError("letter labels support at most 26 choices");
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (style == LabelStyle::Hypothesis) {
      labels.push_back("Hypothesis " + std::to_string(i + 1));
    } else {
      labels.push_back(std::string(1, static_cast<char>('A' + i)) + ")");
    }
  }
  return labels;
}

std::vector<std::string> extract_labels(std::string_view user_text, LabelStyle style) {
  std::vector<std::string> labels;
  for (const auto& line : split(user_text, '\n')) {
    if (style == LabelStyle::Hypothesis) {
      constexpr std::string_view kPrefix = "Hypothesis ";
      if (!std::string_view(line).starts_with(kPrefix)) continue;
      std::size_t i = kPrefix.size();
      std::size_t j = i;
      while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
      if (j > i && j < line.size() && line[j] == ':') labels.push_back(line.substr(0, j));
    } else if (line.size() >= 2 && line[0] >= 'A' && line[0] <= 'Z' && line[1] == ')') {
      labels.push_back(line.substr(0, 2));
    }
  }
  return labels;
}

std::string plausibility_question(const CausalItem& item,
                                  const std::vector<std::string>& statements) {
  std::string base = "which hypothesis seems more plausible";
  std::unordered_set<std::string> known;
  for (const auto& s : statements) {
    for (auto& l : concept_lemmas(s)) known.insert(std::move(l));
  }
  for (const auto& c : extract_concepts(item.context)) {
    if (known.count(c.lemma)) {
      std::string topic = c.lemma;
      std::replace(topic.begin(), topic.end(), '_', ' ');
      return base + " based on the understanding of " + pluralize(std::move(topic)) + "?";
    }
  }
  return base + "?";
}

nlohmann::json to_json(const PromptPackage& pkg) {
  return {{"system_text", pkg.system_text},
          {"user_text", pkg.user_text},
          {"labels", pkg.labels},
          {"token_estimate", pkg.token_estimate},
          {"statements", pkg.statements},
          {"counterfactuals", pkg.counterfactuals},
          {"dropped_statements", pkg.dropped_statements},
          {"dropped_counterfactuals", pkg.dropped_counterfactuals},
          {"flags", to_string(pkg.flags)}};
}

PromptPackage assemble(const CausalItem& item, const ContextBundle& bundle,
                       std::size_t budget, const PromptStyle& style) {
  PromptPackage pkg;
  pkg.system_text = style.system_text;
  pkg.labels = make_labels(item.choices.size(), style.label_style);
  for (std::size_t i = 0; i < pkg.labels.size(); ++i) pkg.label_to_index[pkg.labels[i]] = i;
  pkg.premise = item.context;
  pkg.choices = item.choices;

  Sections s;
  s.item = &item;
  s.statements = bundle.statements;
  s.counterfactuals = bundle.counterfactuals;
  s.premise_line = "Premise: \"" + item.context + "\"";
  for (std::size_t i = 0; i < item.choices.size(); ++i) {
    const char* sep = style.label_style == LabelStyle::Hypothesis ? ": " : " ";
    s.choice_lines.push_back(pkg.labels[i] + sep + item.choices[i]);
  }

  const std::size_t n_s = s.statements.size();
  const std::size_t n_c = s.counterfactuals.size();
  // Drop step d removes statements first (lowest ranked first), then
  // counterfactuals from the back. Each step strictly shortens the text.
  for (std::size_t d = 0; d <= n_s + n_c; ++d) {
    const std::size_t keep_s = d <= n_s ? n_s - d : 0;
    const std::size_t keep_c = d <= n_s ? n_c : n_c - (d - n_s);
    std::string user = render(s, keep_s, keep_c);
    const std::size_t tokens = estimate_tokens(pkg.system_text + user);
    if (tokens <= budget) {
      pkg.user_text = std::move(user);
      pkg.token_estimate = tokens;
      pkg.statements.assign(s.statements.begin(),
                            s.statements.begin() + static_cast<std::ptrdiff_t>(keep_s));
      pkg.counterfactuals.assign(
          s.counterfactuals.begin(),
          s.counterfactuals.begin() + static_cast<std::ptrdiff_t>(keep_c));
      pkg.dropped_statements = n_s - keep_s;
      pkg.dropped_counterfactuals = n_c - keep_c;
      return pkg;
    }
    if (d == n_s + n_c) throw BudgetError(budget, tokens);
  }
  throw BudgetError(budget, budget + 1);  // unreachable
}

PromptPackage render_ablation(const CausalItem& item, const ContextBundle& bundle,
                              const AblationFlags& flags, std::size_t budget,
                              const PromptStyle& style) {
  ContextBundle view = bundle;
  if (!flags.use_cki) {
    view.statements.clear();
    view.sources.clear();
  }
  if (!flags.use_cre) {
    view.counterfactuals.clear();
    view.counterfactual_templates.clear();
  }
  PromptPackage pkg = assemble(item, view, budget, style);
  pkg.flags = flags;
  return pkg;
}

}  // namespace careca
