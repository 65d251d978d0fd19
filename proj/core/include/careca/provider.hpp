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

// Language-model backends and the mapping from free text to a choice.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "careca/counterfactual.hpp"
#include "careca/prompting.hpp"

namespace careca {

struct ModelAnswer {
  std::string raw_text;
  std::optional<std::size_t> parsed;  // nullopt = Abstain
  std::uint64_t latency_ms = 0;
  std::string provider_id;

  bool abstained() const { return !parsed.has_value(); }
};

enum class ProviderKind { MockOverlap, HttpChat };

std::string_view to_string(ProviderKind k);
// "mock", "mock-overlap", "http", "http-chat".
std::optional<ProviderKind> parse_provider_kind(std::string_view s);

inline constexpr std::string_view kApiKeyEnv = "CARE_CA_API_KEY";

struct ProviderConfig {
  ProviderKind kind = ProviderKind::MockOverlap;
  std::string endpoint;    // full chat-completions URL
  std::string model_name;
  std::chrono::milliseconds timeout{30000};
  unsigned max_retries = 2;
  double temperature = 0.0;
  std::size_t max_concurrency = 4;
  std::chrono::milliseconds backoff_base{250};
  std::optional<std::string> api_key;  // unset -> $CARE_CA_API_KEY
};

// Throws ConfigError when HttpChat lacks an endpoint or model name, or a
// numeric field is out of range.
void validate(const ProviderConfig& cfg);

class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string id() const = 0;
  virtual ModelAnswer complete(const PromptPackage& pkg) const = 0;
  // Free-form exchange, used by auxiliary hooks such as statement rewriting.
  virtual std::string chat(const std::string& system_text, const std::string& user_text) const = 0;
};

// Deterministic oracle. Each choice scores the number of content-word
// lemmas it shares with the premise plus the knowledge statements in the
// prompt; the highest score wins and ties go to the lowest index.
class MockOverlapProvider final : public Provider {
 public:
  std::string id() const override { return "mock-overlap"; }
  ModelAnswer complete(const PromptPackage& pkg) const override;
  std::string chat(const std::string& system_text, const std::string& user_text) const override;

  static std::vector<std::size_t> scores(const PromptPackage& pkg);
};

// OpenAI-style chat completion over HTTP. Safe to call from many threads;
// each call opens its own connection and applies its own timeout.
class HttpChatProvider final : public Provider {
 public:
  explicit HttpChatProvider(ProviderConfig cfg);

  std::string id() const override { return cfg_.model_name; }
  ModelAnswer complete(const PromptPackage& pkg) const override;
  std::string chat(const std::string& system_text, const std::string& user_text) const override;

 private:
  std::string post_once(const std::string& body) const;

  ProviderConfig cfg_;
  std::string api_key_;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg);

// One-shot convenience: builds the provider and completes.
ModelAnswer complete(const PromptPackage& pkg, const ProviderConfig& cfg);

// First tier that fires wins:
//   1. the whole reply equals a label (trimmed, case-folded)
//   2. a label occurs inside the reply
//   3. a choice's full text occurs inside the reply
//   4. a bare number ("2") or capital letter ("B") naming a label
// Several hits on one tier, or none at all, give Abstain. Never throws.
std::optional<std::size_t> parse_answer(std::string_view raw,
                                        const std::vector<std::string>& labels,
                                        const std::vector<std::string>& choices);

// Rewrites counterfactual statements through a provider. Off by default.
CounterfactualRewriter make_rewriter(std::shared_ptr<const Provider> provider);

}  // namespace careca
