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

// Contextual knowledge integration: concept extraction, ConceptNet edge
// retrieval (offline snapshot, HTTP endpoint, read-through disk cache) and
// verbalization of edges into context statements.

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "careca/corpus.hpp"

namespace careca {

struct Concept {
  std::string lemma;       // lowercase, no whitespace; phrases use '_'
  std::size_t begin = 0;   // byte range in the source text
  std::size_t end = 0;

  friend bool operator==(const Concept&, const Concept&) = default;
};

bool is_stopword(std::string_view lower_word);

// Suffix stripping applied to every content word: plural -> singular, then
// "-ing"/"-ed" removed when at least three letters remain.
std::string lemmatize(std::string_view lower_word);

// Content-word lemmas in first-occurrence order, duplicates removed.
std::vector<Concept> extract_concepts(std::string_view text);
std::vector<std::string> concept_lemmas(std::string_view text);

enum class Relation {
  Causes,
  CapableOf,
  HasSubevent,
  HasPrerequisite,
  CausesDesire,
  MotivatedByGoal,
  Entails,
  UsedFor,
  RelatedTo,
};

std::string_view to_string(Relation r);
// Accepts "Causes" as well as the URI form "/r/Causes". Relations outside
// the allow-list yield nullopt.
std::optional<Relation> parse_relation(std::string_view s);
// Causes, CapableOf, HasSubevent, HasPrerequisite and Entails.
bool is_causal_strong(Relation r);

struct KnowledgeEdge {
  std::string start;
  Relation relation = Relation::RelatedTo;
  std::string end;
  double weight = 1.0;
  std::optional<std::string> surface;

  friend bool operator==(const KnowledgeEdge&, const KnowledgeEdge&) = default;
};

// Weight descending, then (start, relation name, end) ascending.
bool ranks_before(const KnowledgeEdge& a, const KnowledgeEdge& b);

// Snapshot line format: start<TAB>relation<TAB>end<TAB>weight[<TAB>surface]
std::string to_snapshot_line(const KnowledgeEdge& e);

// Source of edges. Implementations return every allow-listed edge incident
// to `lemma` they can find, in any order; `hint` is the number the caller
// intends to keep and may be used to size remote requests.
class KnowledgeStore {
 public:
  virtual ~KnowledgeStore() = default;
  virtual std::vector<KnowledgeEdge> fetch(const std::string& lemma,
                                           std::size_t hint) const = 0;
};

// In-memory index over a snapshot file. Read-only after construction, so
// any number of threads may query it.
class SnapshotStore final : public KnowledgeStore {
 public:
  static SnapshotStore from_file(const std::filesystem::path& path);
  static SnapshotStore from_stream(std::istream& in);
  explicit SnapshotStore(std::vector<KnowledgeEdge> edges);

  std::vector<KnowledgeEdge> fetch(const std::string& lemma,
                                   std::size_t hint) const override;

  std::size_t edge_count() const { return edges_.size(); }
  // Lines dropped because their relation is outside the allow-list.
  std::size_t skipped_relations() const { return skipped_; }

 private:
  std::vector<KnowledgeEdge> edges_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::size_t skipped_ = 0;
};

// ConceptNet-compatible HTTP endpoint: GET <base>/c/en/<lemma>?limit=<n>.
// Throws TransportError (or TimeoutError) when the endpoint cannot be read.
class RemoteStore final : public KnowledgeStore {
 public:
  RemoteStore(std::string base_url, std::chrono::milliseconds timeout,
              std::size_t min_fetch = 50);

  std::vector<KnowledgeEdge> fetch(const std::string& lemma,
                                   std::size_t hint) const override;

  const std::string& base_url() const { return base_url_; }

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
  std::size_t min_fetch_;
};

// Parses a ConceptNet /c/en/<lemma> response body. Keeps edges whose both
// endpoints are English and whose relation is allow-listed.
std::vector<KnowledgeEdge> parse_conceptnet_response(const nlohmann::json& body);

// Read-through cache: each lemma is fetched from `inner` at most once per
// process and persisted as <cache_dir>/<lemma>.tsv in snapshot format, so
// later runs never touch `inner` for it again.
class CachingStore final : public KnowledgeStore {
 public:
  CachingStore(std::shared_ptr<const KnowledgeStore> inner,
               std::filesystem::path cache_dir, std::size_t fetch_limit = 100);

  std::vector<KnowledgeEdge> fetch(const std::string& lemma,
                                   std::size_t hint) const override;

  std::filesystem::path cache_file(const std::string& lemma) const;

 private:
  std::mutex& key_mutex(const std::string& lemma) const;

  std::shared_ptr<const KnowledgeStore> inner_;
  std::filesystem::path dir_;
  std::size_t fetch_limit_;
  mutable std::mutex map_mu_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> key_mu_;
  mutable std::unordered_map<std::string, std::vector<KnowledgeEdge>> memo_;
};

// At most `limit` incident edges, ranked by ranks_before.
std::vector<KnowledgeEdge> query_edges(const std::string& lemma,
                                       const KnowledgeStore& store,
                                       std::size_t limit);

// "Rain is capable of cause flooding."
std::string verbalize(const KnowledgeEdge& edge);

struct ContextBundle {
  std::vector<std::string> statements;
  std::vector<KnowledgeEdge> sources;  // sources[i] produced statements[i]
  std::vector<std::string> counterfactuals;
  std::vector<std::string> counterfactual_templates;  // template id per entry

  bool empty() const { return statements.empty() && counterfactuals.empty(); }
  friend bool operator==(const ContextBundle&, const ContextBundle&) = default;
};

nlohmann::json to_json(const ContextBundle& bundle);

struct ContextOptions {
  std::size_t k_per_concept = 3;
  std::size_t max_statements = 5;
};

// Concepts come from the context and every choice. Causal-strong edges are
// preferred; weak ones only fill slots the strong tier leaves open. The kept
// statements are ordered by ranks_before.
ContextBundle build_context(const CausalItem& item, const KnowledgeStore& store,
                            const ContextOptions& options = {});

}  // namespace careca
