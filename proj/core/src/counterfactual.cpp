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

#include "careca/counterfactual.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

namespace {

constexpr std::string_view kSlots[] = {"{cause}", "{effect}", "{context}", "{unrelated}"};

std::string phrase(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string strip_final_punct(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?')) s.pop_back();
  return s;
}

}  // namespace

std::string_view to_string(TemplateKind k) {
  switch (k) {
    case TemplateKind::CauseNegation: return "CauseNegation";
    case TemplateKind::AlternativeMechanism: return "AlternativeMechanism";
    case TemplateKind::IrrelevanceProbe: return "IrrelevanceProbe";
  }
  return "?";
}

std::optional<TemplateKind> parse_template_kind(std::string_view s) {
  if (s == "CauseNegation") return TemplateKind::CauseNegation;
  if (s == "AlternativeMechanism") return TemplateKind::AlternativeMechanism;
  if (s == "IrrelevanceProbe") return TemplateKind::IrrelevanceProbe;
  return std::nullopt;
}

TemplateRegistry::TemplateRegistry(std::vector<CounterfactualTemplate> templates)
    : templates_(std::move(templates)) {
  std::set<std::string> ids;
  for (const auto& t : templates_) {
    if (t.id.empty()) throw ConfigError("counterfactual template with empty id");
    if (!ids.insert(t.id).second) {
      throw ConfigError("duplicate counterfactual template id: " + t.id);
    }
    const bool has_slot = std::any_of(std::begin(kSlots), std::end(kSlots),
                                      [&](std::string_view s) { return contains(t.pattern, s); });
    if (!has_slot) throw ConfigError("counterfactual template has no slot: " + t.id);
  }
}

const TemplateRegistry& TemplateRegistry::defaults() {
  static const TemplateRegistry kDefaults({
      {"cause-negation", TemplateKind::CauseNegation,
       "If there had been no {cause}, would {effect} still have occurred?"},
      {"alternative-mechanism", TemplateKind::AlternativeMechanism,
       "If {cause} were prevented, could {effect} still come about another way?"},
      {"irrelevance-probe", TemplateKind::IrrelevanceProbe,
       "If {unrelated}, {effect} would be unaffected."},
  });
  return kDefaults;
}

TemplateRegistry TemplateRegistry::from_stream(std::istream& in) {
  std::vector<CounterfactualTemplate> templates;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty() || text[0] == '#') continue;
    auto fields = split(text, '\t');
    if (fields.size() != 3) throw LoadError(line, "expected id<TAB>kind<TAB>pattern");
    auto kind = parse_template_kind(trim(fields[1]));
    if (!kind) throw LoadError(line, "unknown template kind: " + fields[1]);
    templates.push_back({trim(fields[0]), *kind, trim(fields[2])});
  }
  return TemplateRegistry(std::move(templates));
}

TemplateRegistry TemplateRegistry::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open template registry: " + path.string());
  return from_stream(in);
}

const CounterfactualTemplate* TemplateRegistry::first_of(TemplateKind kind) const {
  for (const auto& t : templates_) {
    if (t.kind == kind) return &t;
  }
  return nullptr;
}

std::string fill_template(const std::string& pattern, const SlotValues& slots) {
  std::string out;
  out.reserve(pattern.size() + 32);
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const std::string_view rest(pattern.data() + i, pattern.size() - i);
      const std::string* value = nullptr;
      std::size_t len = 0;
      if (rest.starts_with("{cause}")) value = &slots.cause, len = 7;
      else if (rest.starts_with("{effect}")) value = &slots.effect, len = 8;
      else if (rest.starts_with("{context}")) value = &slots.context, len = 9;
      else if (rest.starts_with("{unrelated}")) value = &slots.unrelated, len = 11;
      if (value) {
        out += *value;
        i += len;
        continue;
      }
    }
    out.push_back(pattern[i++]);
  }
  return out;
}

bool leaks_choice(const std::string& statement, const std::vector<std::string>& choices) {
  const std::string s = fold(statement);
  for (const auto& c : choices) {
    const std::string needle = strip_final_punct(fold(c));
    if (!needle.empty() && contains(s, needle)) return true;
  }
  return false;
}

std::vector<Counterfactual> generate_counterfactuals(const CausalItem& item,
                                                     const ContextBundle& bundle,
                                                     const CounterfactualOptions& options) {
  std::vector<Counterfactual> out;
  if (options.max_count == 0) return out;
  const TemplateRegistry& registry =
      options.registry ? *options.registry : TemplateRegistry::defaults();

  std::vector<const KnowledgeEdge*> strong;
  std::vector<const KnowledgeEdge*> weak;
  for (const auto& e : bundle.sources) {
    (is_causal_strong(e.relation) ? strong : weak).push_back(&e);
  }
  // Sources are already ranked; no strong edge means no cause to negate.
  if (strong.empty()) return out;

  const std::string context = strip_final_punct(normalize_text(item.context));
  std::vector<std::pair<const CounterfactualTemplate*, SlotValues>> plan;

  if (const auto* t = registry.first_of(TemplateKind::CauseNegation)) {
    plan.push_back({t, {phrase(strong[0]->start), phrase(strong[0]->end), context, {}}});
  }
  if (strong.size() > 1) {
    if (const auto* t = registry.first_of(TemplateKind::AlternativeMechanism)) {
      plan.push_back({t, {phrase(strong[1]->start), phrase(strong[1]->end), context, {}}});
    }
  }
  if (!weak.empty()) {
    if (const auto* t = registry.first_of(TemplateKind::IrrelevanceProbe)) {
      const KnowledgeEdge& w = *weak[0];
      const std::string other = w.start == strong[0]->start || w.start == strong[0]->end
                                    ? w.end
                                    : w.start;
      plan.push_back({t,
                      {phrase(strong[0]->start), phrase(strong[0]->end), context,
                       "the " + phrase(other) + " were different"}});
    }
  }

  std::set<std::string> emitted;
  for (const auto& [tmpl, slots] : plan) {
    if (out.size() >= options.max_count) break;
    std::string text = fill_template(tmpl->pattern, slots);
    if (text.empty()) continue;
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (options.rewrite) {
      std::string rewritten = normalize_text(options.rewrite(text));
      if (!rewritten.empty()) text = std::move(rewritten);
    }
    if (leaks_choice(text, item.choices)) continue;
    if (!emitted.insert(text).second) continue;
    out.push_back({std::move(text), tmpl->id});
  }
  return out;
}

ContextBundle attach(ContextBundle bundle, const std::vector<Counterfactual>& statements) {
  bundle.counterfactuals.clear();
  bundle.counterfactual_templates.clear();
  for (const auto& s : statements) {
    bundle.counterfactuals.push_back(s.text);
    bundle.counterfactual_templates.push_back(s.template_id);
  }
  return bundle;
}

}  // namespace careca
