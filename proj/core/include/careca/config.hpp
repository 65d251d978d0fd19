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


// Application configuration: a flat key=value file, every key overridable
// with `--set key=value`, and the objects a run needs built from it.
//
//   # comment
//   knowledge.snapshot_path = tests/fixtures/conceptnet_snapshot.tsv
//   pipeline.flags = cki+cre
//   prompt.system_text = You are a careful causal reasoner.
//
// Values may use \n, \t and \\ escapes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "careca/corpus.hpp"
#include "careca/counterfactual.hpp"
#include "careca/evaluation.hpp"
#include "careca/knowledge.hpp"
#include "careca/prompting.hpp"
#include "careca/provider.hpp"

namespace careca {

struct AppConfig {
  struct Knowledge {
    std::string endpoint;
    std::string snapshot_path;
    std::string cache_dir = ".careca-cache";
    std::int64_t timeout_ms = 10000;
    bool operator==(const Knowledge&) const = default;
  } knowledge;

  struct Provider {
    ProviderKind kind = ProviderKind::MockOverlap;
    std::string endpoint;
    std::string model_name;
    std::int64_t timeout_ms = 30000;
    unsigned max_retries = 2;
    std::size_t max_concurrency = 4;
    double temperature = 0.0;
    bool rewrite_counterfactuals = false;
    bool operator==(const Provider&) const = default;
  } provider;

  struct Prompt {
    std::size_t budget = kDefaultBudget;
    LabelStyle label_style = LabelStyle::Hypothesis;
    std::string system_text = std::string(kDefaultSystemText);
    bool operator==(const Prompt&) const = default;
  } prompt;

  struct Pipeline {
    std::size_t k_per_concept = 3;
    std::size_t max_statements = 5;
    std::size_t cf_max = 2;
    AblationFlags flags;
    bool operator==(const Pipeline&) const = default;
  } pipeline;

  struct Eval {
    std::size_t runs = 3;
    std::uint64_t seed = 7;
    std::string outdir = "out";
    double split_ratio = 0.75;
    bool operator==(const Eval&) const = default;
  } eval;

  struct Dataset {
    DatasetName name = DatasetName::COPA;
    std::string path;
    bool operator==(const Dataset&) const = default;
  } dataset;

  std::string templates_path;  // cre.templates_path

  bool operator==(const AppConfig&) const = default;
};

// Accepts cki+cre, all, cki, cre, none, no-cki, no-cre (any case).
std::optional<AblationFlags> parse_flags(std::string_view s);

// Every recognised key, in the order dump_config writes them.
const std::vector<std::string_view>& config_keys();

// Throws ConfigError on an unknown key or a value that does not parse.
void apply_setting(AppConfig& cfg, std::string_view key, std::string_view value);

// "key=value" form used by --set.
void apply_assignment(AppConfig& cfg, std::string_view assignment);

// Applies the lines of a config file on top of `cfg`. Errors carry the line.
// Relative dataset, snapshot and template paths are resolved against
// `base_dir` when it is given; apply_config_file passes the file's directory.
void apply_config(AppConfig& cfg, std::istream& in, const std::filesystem::path& base_dir = {});
void apply_config_file(AppConfig& cfg, const std::filesystem::path& path);

// Every key with its resolved value. Feeding the output back through
// apply_config reproduces the same AppConfig.
std::string dump_config(const AppConfig& cfg);

// Cross-field checks: runs >= 1, split ratio in (0, 1), at most one
// knowledge source and exactly one when CKI is on, provider settings.
void validate(const AppConfig& cfg);

// Null when neither knowledge source is set. A remote endpoint is wrapped
// in a CachingStore rooted at knowledge.cache_dir.
std::shared_ptr<const KnowledgeStore> make_store(const AppConfig& cfg);

ProviderConfig provider_config(const AppConfig& cfg);

// Everything evaluate() and prepare_item() need, with owned dependencies.
struct Runtime {
  std::shared_ptr<const KnowledgeStore> store;
  std::shared_ptr<const careca::Provider> provider;
  std::shared_ptr<const TemplateRegistry> templates;  // null -> defaults
  PipelineConfig pipeline;
  EvalOptions options;
};

// Validates, then opens the store, provider and template registry.
Runtime make_runtime(const AppConfig& cfg);

}  // namespace careca
