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

#include "careca/knowledge.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

namespace {

constexpr std::string_view kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
    "and", "any", "are", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "could", "did", "do", "does",
    "doing", "don", "down", "during", "each", "either", "even", "ever", "every",
    "few", "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in",
    "into", "is", "it", "its", "itself", "just", "may", "me", "might", "more",
    "most", "much", "must", "my", "myself", "neither", "no", "nor", "not", "now",
    "of", "off", "on", "once", "one", "only", "or", "other", "our", "ours",
    "ourselves", "out", "over", "own", "same", "shall", "she", "should", "so",
    "some", "still", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through",
    "to", "too", "under", "until", "up", "upon", "very", "was", "we", "were",
    "what", "when", "where", "which", "while", "who", "whom", "why", "will",
    "with", "would", "yet", "you", "your", "yours", "yourself",
};

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string phrase(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

KnowledgeEdge parse_snapshot_line(const std::string& text, std::size_t line) {
  auto fields = split(text, '\t');
  if (fields.size() < 4 || fields.size() > 5) {
    throw LoadError(line, "expected 4 or 5 tab-separated fields");
  }
  KnowledgeEdge e;
  e.start = trim(fields[0]);
  e.end = trim(fields[2]);
  if (e.start.empty() || e.end.empty()) throw LoadError(line, "empty concept");
  const std::string w = trim(fields[3]);
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), e.weight);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    throw LoadError(line, "weight is not a number: " + w);
  }
  if (!(e.weight >= 0.0)) throw LoadError(line, "negative weight");
  if (fields.size() == 5 && !trim(fields[4]).empty()) e.surface = trim(fields[4]);
  return e;
}

}  // namespace

bool is_stopword(std::string_view lower_word) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), lower_word) !=
         std::end(kStopwords);
}

std::string lemmatize(std::string_view w) {
  std::string s(w);
  if (s.size() > 4 && ends_with(s, "ies")) {
    s.replace(s.size() - 3, 3, "y");
  } else if (ends_with(s, "sses")) {
    s.resize(s.size() - 2);
  } else if (s.size() > 3 && ends_with(s, "s") && !ends_with(s, "ss") &&
             !ends_with(s, "us") && !ends_with(s, "is")) {
    s.pop_back();
  }
  if (ends_with(s, "ing") && s.size() - 3 >= 3) {
    s.resize(s.size() - 3);
  } else if (ends_with(s, "ed") && s.size() - 2 >= 3) {
    s.resize(s.size() - 2);
  }
  return s;
}

std::vector<Concept> extract_concepts(std::string_view text) {
  std::vector<Concept> out;
  std::unordered_set<std::string> seen;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
    const std::string word = to_lower(text.substr(i, j - i));
    if (word.size() >= 2 && !all_digits(word) && !is_stopword(word)) {
      std::string lemma = lemmatize(word);
      if (!lemma.empty() && seen.insert(lemma).second) {
        out.push_back({std::move(lemma), i, j});
      }
    }
    i = j;
  }
  return out;
}

std::vector<std::string> concept_lemmas(std::string_view text) {
  std::vector<std::string> out;
  for (auto& c : extract_concepts(text)) out.push_back(std::move(c.lemma));
  return out;
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Causes: return "Causes";
    case Relation::CapableOf: return "CapableOf";
    case Relation::HasSubevent: return "HasSubevent";
    case Relation::HasPrerequisite: return "HasPrerequisite";
    case Relation::CausesDesire: return "CausesDesire";
    case Relation::MotivatedByGoal: return "MotivatedByGoal";
    case Relation::Entails: return "Entails";
    case Relation::UsedFor: return "UsedFor";
    case Relation::RelatedTo: return "RelatedTo";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s.starts_with("/r/")) s.remove_prefix(3);
  static constexpr std::array kAll = {
      Relation::Causes,       Relation::CapableOf,       Relation::HasSubevent,
      Relation::HasPrerequisite, Relation::CausesDesire, Relation::MotivatedByGoal,
      Relation::Entails,      Relation::UsedFor,         Relation::RelatedTo};
  for (Relation r : kAll) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

bool is_causal_strong(Relation r) {
  switch (r) {
    case Relation::Causes:
    case Relation::CapableOf:
    case Relation::HasSubevent:
    case Relation::HasPrerequisite:
    case Relation::Entails:
      return true;
    default:
      return false;
  }
}

bool ranks_before(const KnowledgeEdge& a, const KnowledgeEdge& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.start != b.start) return a.start < b.start;
  if (a.relation != b.relation) return to_string(a.relation) < to_string(b.relation);
  return a.end < b.end;
}

std::string to_snapshot_line(const KnowledgeEdge& e) {
  std::string line = e.start + '\t' + std::string(to_string(e.relation)) + '\t' +
                     e.end + '\t' + format_double(e.weight);
  if (e.surface) line += '\t' + *e.surface;
  return line;
}

SnapshotStore::SnapshotStore(std::vector<KnowledgeEdge> edges) : edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    index_[edges_[i].start].push_back(i);
    if (edges_[i].end != edges_[i].start) index_[edges_[i].end].push_back(i);
  }
}

SnapshotStore SnapshotStore::from_stream(std::istream& in) {
  std::vector<KnowledgeEdge> edges;
  std::size_t skipped = 0;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty() || text[0] == '#') continue;
    auto fields = split(text, '\t');
    if (fields.size() >= 2 && !parse_relation(trim(fields[1]))) {
      ++skipped;
      continue;
    }
    KnowledgeEdge e = parse_snapshot_line(text, line);
    e.relation = *parse_relation(trim(fields[1]));
    edges.push_back(std::move(e));
  }
  SnapshotStore store(std::move(edges));
  store.skipped_ = skipped;
  return store;
}

SnapshotStore SnapshotStore::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open knowledge snapshot: " + path.string());
  return from_stream(in);
}

std::vector<KnowledgeEdge> SnapshotStore::fetch(const std::string& lemma,
                                                std::size_t /*hint*/) const {
  std::vector<KnowledgeEdge> out;
  auto it = index_.find(lemma);
  if (it == index_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(edges_[i]);
  return out;
}

std::vector<KnowledgeEdge> query_edges(const std::string& lemma,
                                       const KnowledgeStore& store,
                                       std::size_t limit) {
  if (limit == 0 || lemma.empty()) return {};
  std::vector<KnowledgeEdge> edges = store.fetch(lemma, limit);
  std::erase_if(edges, [&](const KnowledgeEdge& e) {
    return e.start != lemma && e.end != lemma;
  });
  std::sort(edges.begin(), edges.end(), ranks_before);
  // Same triple reported twice: keep the heavier copy.
  std::set<std::tuple<std::string, Relation, std::string>> seen;
  std::erase_if(edges, [&](const KnowledgeEdge& e) {
    return !seen.emplace(e.start, e.relation, e.end).second;
  });
  if (edges.size() > limit) edges.resize(limit);
  return edges;
}

std::string verbalize(const KnowledgeEdge& edge) {
  const std::string s = phrase(edge.start);
  const std::string o = phrase(edge.end);
  std::string body;
  switch (edge.relation) {
    case Relation::Causes: body = s + " causes " + o; break;
    case Relation::CapableOf: body = s + " is capable of " + o; break;
    case Relation::HasPrerequisite: body = s + " requires " + o; break;
    case Relation::HasSubevent: body = s + " involves " + o; break;
    case Relation::Entails: body = s + " entails " + o; break;
    case Relation::CausesDesire: body = s + " makes one want " + o; break;
    case Relation::MotivatedByGoal: body = s + " is motivated by " + o; break;
    case Relation::UsedFor: body = s + " is used for " + o; break;
    case Relation::RelatedTo: body = s + " is related to " + o; break;
  }
  return capitalize(std::move(body)) + ".";
}

nlohmann::json to_json(const ContextBundle& bundle) {
  nlohmann::json sources = nlohmann::json::array();
  for (const auto& e : bundle.sources) {
    nlohmann::json j = {{"start", e.start},
                        {"relation", to_string(e.relation)},
                        {"end", e.end},
                        {"weight", e.weight}};
    if (e.surface) j["surface"] = *e.surface;
    sources.push_back(std::move(j));
  }
  return {{"statements", bundle.statements},
          {"sources", std::move(sources)},
          {"counterfactuals", bundle.counterfactuals},
          {"counterfactual_templates", bundle.counterfactual_templates}};
}

ContextBundle build_context(const CausalItem& item, const KnowledgeStore& store,
                            const ContextOptions& options) {
  std::vector<std::string> lemmas;
  std::unordered_set<std::string> seen;
  auto add = [&](std::string_view text) {
    for (auto& l : concept_lemmas(text)) {
      if (seen.insert(l).second) lemmas.push_back(std::move(l));
    }
  };
  add(item.context);
  for (const auto& c : item.choices) add(c);

  std::vector<KnowledgeEdge> strong;
  std::vector<KnowledgeEdge> weak;
  std::set<std::tuple<std::string, Relation, std::string>> taken;
  for (const auto& lemma : lemmas) {
    for (auto& e : query_edges(lemma, store, options.k_per_concept)) {
      if (!taken.emplace(e.start, e.relation, e.end).second) continue;
      (is_causal_strong(e.relation) ? strong : weak).push_back(std::move(e));
    }
  }
  std::sort(strong.begin(), strong.end(), ranks_before);
  std::sort(weak.begin(), weak.end(), ranks_before);

  std::vector<KnowledgeEdge> selected(
      strong.begin(), strong.begin() + static_cast<std::ptrdiff_t>(
                                           std::min(strong.size(), options.max_statements)));
  for (std::size_t i = 0; i < weak.size() && selected.size() < options.max_statements; ++i) {
    selected.push_back(weak[i]);
  }
  std::stable_sort(selected.begin(), selected.end(), ranks_before);

  ContextBundle bundle;
  std::unordered_set<std::string> said;
  for (auto& e : selected) {
    std::string s = verbalize(e);
    if (!said.insert(s).second) continue;
    bundle.statements.push_back(std::move(s));
    bundle.sources.push_back(std::move(e));
  }
  return bundle;
}

}  // namespace careca
