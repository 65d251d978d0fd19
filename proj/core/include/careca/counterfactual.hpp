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

// Template-driven "what-if" statements that probe the causal links found by
// the knowledge stage.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "careca/corpus.hpp"
#include "careca/knowledge.hpp"

namespace careca {

enum class TemplateKind { CauseNegation, AlternativeMechanism, IrrelevanceProbe };

std::string_view to_string(TemplateKind k);
std::optional<TemplateKind> parse_template_kind(std::string_view s);

// Pattern slots: {cause}, {effect}, {context}, {unrelated}.
struct CounterfactualTemplate {
  std::string id;
  TemplateKind kind = TemplateKind::CauseNegation;
  std::string pattern;
};

class TemplateRegistry {
 public:
  // Throws ConfigError on duplicate ids or patterns without a slot.
  explicit TemplateRegistry(std::vector<CounterfactualTemplate> templates);

  static const TemplateRegistry& defaults();
  // File format: id<TAB>kind<TAB>pattern, '#' comments.
  static TemplateRegistry from_stream(std::istream& in);
  static TemplateRegistry from_file(const std::filesystem::path& path);

  // First registered template of a kind, or nullptr.
  const CounterfactualTemplate* first_of(TemplateKind kind) const;
  const std::vector<CounterfactualTemplate>& templates() const { return templates_; }

 private:
  std::vector<CounterfactualTemplate> templates_;
};

struct SlotValues {
  std::string cause;
  std::string effect;
  std::string context;
  std::string unrelated;
};

std::string fill_template(const std::string& pattern, const SlotValues& slots);

struct Counterfactual {
  std::string text;
  std::string template_id;

  friend bool operator==(const Counterfactual&, const Counterfactual&) = default;
};

// Optional post-processing of each generated statement (e.g. an LLM
// rewrite). Returning an empty string keeps the template output.
using CounterfactualRewriter = std::function<std::string(const std::string&)>;

struct CounterfactualOptions {
  std::size_t max_count = 2;
  const TemplateRegistry* registry = nullptr;  // nullptr -> defaults()
  CounterfactualRewriter rewrite;              // off unless set
};

// Emits, in order and up to max_count: a cause negation built from the top
// causal-strong source edge, an alternative mechanism from the second one,
// and an irrelevance probe when a causal-weak edge is present. Statements
// that contain the text of any choice are discarded.
std::vector<Counterfactual> generate_counterfactuals(const CausalItem& item,
                                                     const ContextBundle& bundle,
                                                     const CounterfactualOptions& options = {});

// Replaces the counterfactual section; statements are untouched.
ContextBundle attach(ContextBundle bundle, const std::vector<Counterfactual>& statements);

// True when `statement` contains the folded text of any choice.
bool leaks_choice(const std::string& statement, const std::vector<std::string>& choices);

}  // namespace careca
