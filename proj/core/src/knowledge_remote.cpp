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

#include <fstream>
#include <sstream>
#include <thread>

#include "careca/error.hpp"
#include "careca/knowledge.hpp"
#include "careca/text.hpp"
#include "http_util.hpp"
#include "httplib.h"

namespace careca {

namespace {

// "/c/en/cause_flooding/v/..." -> "cause_flooding"; empty if not English.
std::string english_lemma(const nlohmann::json& node) {
  if (!node.is_object()) return {};
  auto it = node.find("@id");
  if (it == node.end() || !it->is_string()) return {};
  const std::string id = it->get<std::string>();
  constexpr std::string_view kPrefix = "/c/en/";
  if (!std::string_view(id).starts_with(kPrefix)) return {};
  std::string rest = id.substr(kPrefix.size());
  if (auto slash = rest.find('/'); slash != std::string::npos) rest.resize(slash);
  return to_lower(rest);
}

}  // namespace

std::vector<KnowledgeEdge> parse_conceptnet_response(const nlohmann::json& body) {
  std::vector<KnowledgeEdge> out;
  auto edges = body.find("edges");
  if (edges == body.end() || !edges->is_array()) return out;
  for (const auto& raw : *edges) {
    if (!raw.is_object()) continue;
    KnowledgeEdge e;
    e.start = english_lemma(raw.value("start", nlohmann::json{}));
    e.end = english_lemma(raw.value("end", nlohmann::json{}));
    if (e.start.empty() || e.end.empty()) continue;
    const auto rel = raw.value("rel", nlohmann::json{});
    std::optional<Relation> r;
    if (rel.is_object()) {
      if (rel.contains("@id") && rel["@id"].is_string()) {
        r = parse_relation(rel["@id"].get<std::string>());
      } else if (rel.contains("label") && rel["label"].is_string()) {
        r = parse_relation(rel["label"].get<std::string>());
      }
    }
    if (!r) continue;
    e.relation = *r;
    if (auto w = raw.find("weight"); w != raw.end() && w->is_number()) {
      e.weight = std::max(0.0, w->get<double>());
    }
    if (auto s = raw.find("surfaceText"); s != raw.end() && s->is_string()) {
      e.surface = s->get<std::string>();
    }
    out.push_back(std::move(e));
  }
  return out;
}

RemoteStore::RemoteStore(std::string base_url, std::chrono::milliseconds timeout,
                         std::size_t min_fetch)
    : base_url_(std::move(base_url)), timeout_(timeout), min_fetch_(min_fetch) {
  detail::split_url(base_url_);  // validates eagerly
}

std::vector<KnowledgeEdge> RemoteStore::fetch(const std::string& lemma,
                                              std::size_t hint) const {
  const auto url = detail::split_url(base_url_);
  httplib::Client client(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());

  const std::string path = url.path + "/c/en/" + detail::percent_encode(lemma) +
                           "?limit=" + std::to_string(std::max(hint, min_fetch_));
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Get(path);
  if (!res) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const std::string why = httplib::to_string(res.error());
    if (res.error() == httplib::Error::ConnectionTimeout || elapsed >= timeout_) {
      throw TimeoutError("knowledge endpoint timed out: " + why);
    }
    throw TransportError("knowledge endpoint unreachable: " + why);
  }
  if (res->status == 404) return {};
  if (res->status != 200) {
    throw TransportError("knowledge endpoint returned HTTP " + std::to_string(res->status));
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw TransportError("knowledge endpoint returned malformed JSON");
  }
  return parse_conceptnet_response(body);
}

CachingStore::CachingStore(std::shared_ptr<const KnowledgeStore> inner,
                           std::filesystem::path cache_dir, std::size_t fetch_limit)
    : inner_(std::move(inner)), dir_(std::move(cache_dir)), fetch_limit_(fetch_limit) {
  if (!inner_) throw ConfigError("caching store needs an upstream store");
  std::filesystem::create_directories(dir_);
}

std::filesystem::path CachingStore::cache_file(const std::string& lemma) const {
  return dir_ / (detail::percent_encode(lemma) + ".tsv");
}

std::mutex& CachingStore::key_mutex(const std::string& lemma) const {
  std::lock_guard lock(map_mu_);
  auto& slot = key_mu_[lemma];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::vector<KnowledgeEdge> CachingStore::fetch(const std::string& lemma,
                                               std::size_t hint) const {
  std::lock_guard key_lock(key_mutex(lemma));
  {
    std::lock_guard lock(map_mu_);
    if (auto it = memo_.find(lemma); it != memo_.end()) return it->second;
  }

  std::vector<KnowledgeEdge> edges;
  const auto file = cache_file(lemma);
  if (std::filesystem::exists(file)) {
    edges = SnapshotStore::from_file(file).fetch(lemma, hint);
  } else {
    edges = inner_->fetch(lemma, std::max(hint, fetch_limit_));
    std::stringstream tmp_name;
    tmp_name << file.string() << ".tmp." << std::this_thread::get_id();
    const std::filesystem::path tmp = tmp_name.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw ConfigError("cannot write knowledge cache: " + tmp.string());
      out << "# " << lemma << '\n';
      for (const auto& e : edges) {
        // Surface text may not contain the field separator.
        KnowledgeEdge clean = e;
        if (clean.surface) {
          std::replace(clean.surface->begin(), clean.surface->end(), '\t', ' ');
          std::replace(clean.surface->begin(), clean.surface->end(), '\n', ' ');
        }
        out << to_snapshot_line(clean) << '\n';
      }
    }
    std::filesystem::rename(tmp, file);
    // Re-read so the in-memory value is exactly what later runs will see.
    edges = SnapshotStore::from_file(file).fetch(lemma, hint);
  }

  std::lock_guard lock(map_mu_);
  return memo_.emplace(lemma, std::move(edges)).first->second;
}

}  // namespace careca
