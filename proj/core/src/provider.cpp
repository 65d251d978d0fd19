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

#include "careca/provider.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "careca/error.hpp"
#include "careca/knowledge.hpp"
#include "careca/text.hpp"
#include "http_util.hpp"
#include "httplib.h"

namespace careca {

std::string_view to_string(ProviderKind k) {
  return k == ProviderKind::MockOverlap ? "mock-overlap" : "http-chat";
}

std::optional<ProviderKind> parse_provider_kind(std::string_view s) {
  const std::string k = to_lower(trim(s));
  if (k == "mock" || k == "mock-overlap" || k == "mockoverlap") return ProviderKind::MockOverlap;
  if (k == "http" || k == "http-chat" || k == "httpchat") return ProviderKind::HttpChat;
  return std::nullopt;
}

void validate(const ProviderConfig& cfg) {
  if (cfg.kind == ProviderKind::HttpChat) {
    if (cfg.endpoint.empty()) throw ConfigError("provider.endpoint is required for http-chat");
    if (cfg.model_name.empty()) throw ConfigError("provider.model is required for http-chat");
    detail::split_url(cfg.endpoint);
  }
  if (cfg.timeout.count() <= 0) throw ConfigError("provider.timeout_ms must be positive");
  if (cfg.max_concurrency == 0) throw ConfigError("provider.max_concurrency must be positive");
  if (cfg.max_retries > 10) throw ConfigError("provider.max_retries must be at most 10");
}

// --- answer parsing -------------------------------------------------------

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string strip_edges(std::string s) {
  auto junk = [](char c) {
    return c == '.' || c == ':' || c == '!' || c == '"' || c == '\'' || c == '*' || c == '`';
  };
  while (!s.empty() && junk(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && junk(s[b])) ++b;
  return trim(std::string_view(s).substr(b));
}

// Occurrence of `needle` in `hay` not glued to surrounding word characters.
// A trailing digit would turn "hypothesis 1" into "hypothesis 12".
bool occurs_bounded(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_alnum(hay[pos - 1]) || !is_alnum(needle.front());
    const std::size_t after = pos + needle.size();
    const bool right_ok = after >= hay.size() || !is_alnum(needle.back()) ||
                          !is_alnum(hay[after]);
    const bool digit_ok = after >= hay.size() || !is_digit(needle.back()) ||
                          !is_digit(hay[after]);
    if (left_ok && right_ok && digit_ok) return true;
  }
  return false;
}

std::optional<std::size_t> unique_hit(const std::vector<std::size_t>& hits, bool& fired) {
  fired = !hits.empty();
  if (hits.size() == 1) return hits.front();
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> parse_answer(std::string_view raw,
                                        const std::vector<std::string>& labels,
                                        const std::vector<std::string>& choices) {
  if (labels.empty()) return std::nullopt;
  const std::string folded = fold(raw);
  bool fired = false;

  // 1. exact label
  {
    const std::string bare = strip_edges(folded);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string l = fold(labels[i]);
      if (folded == l || bare == l || bare == strip_edges(l)) hits.push_back(i);
    }
    auto r = unique_hit(hits, fired);
    if (fired) return r;
  }

  // 2. label inside the reply
  {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (occurs_bounded(folded, fold(labels[i]))) hits.push_back(i);
    }
    auto r = unique_hit(hits, fired);
    if (fired) return r;
  }

  // 3. full choice text inside the reply
  {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < choices.size() && i < labels.size(); ++i) {
      std::string c = fold(choices[i]);
      while (!c.empty() && (c.back() == '.' || c.back() == '!' || c.back() == '?')) c.pop_back();
      if (!c.empty() && occurs_bounded(folded, c)) hits.push_back(i);
    }
    auto r = unique_hit(hits, fired);
    if (fired) return r;
  }

  // 4. bare index or letter token, read from the unfolded reply
  {
    const bool letters = labels.front().size() == 2 && labels.front()[1] == ')';
    std::set<std::size_t> hits;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (!is_alnum(raw[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && is_alnum(raw[j])) ++j;
      const std::string_view tok = raw.substr(i, j - i);
      if (letters) {
        if (tok.size() == 1 && tok[0] >= 'A' && tok[0] <= 'Z') {
          const std::size_t idx = static_cast<std::size_t>(tok[0] - 'A');
          if (idx < labels.size()) hits.insert(idx);
        }
      } else if (tok.size() <= 3 && std::all_of(tok.begin(), tok.end(), is_digit)) {
        const std::size_t n = static_cast<std::size_t>(std::stoul(std::string(tok)));
        if (n >= 1 && n <= labels.size()) hits.insert(n - 1);
      }
      i = j;
    }
    if (hits.size() == 1) return *hits.begin();
  }
  return std::nullopt;
}

// --- mock -----------------------------------------------------------------

std::vector<std::size_t> MockOverlapProvider::scores(const PromptPackage& pkg) {
  std::unordered_set<std::string> known;
  for (auto& l : concept_lemmas(pkg.premise)) known.insert(std::move(l));
  for (const auto& s : pkg.statements) {
    for (auto& l : concept_lemmas(s)) known.insert(std::move(l));
  }
  std::vector<std::size_t> out;
  out.reserve(pkg.choices.size());
  for (const auto& c : pkg.choices) {
    std::size_t n = 0;
    for (const auto& l : concept_lemmas(c)) n += known.count(l);
    out.push_back(n);
  }
  return out;
}

ModelAnswer MockOverlapProvider::complete(const PromptPackage& pkg) const {
  ModelAnswer a;
  a.provider_id = id();
  const auto s = scores(pkg);
  if (s.empty() || pkg.labels.size() != s.size()) return a;
  const auto best = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  a.raw_text = pkg.labels[best];
  a.parsed = parse_answer(a.raw_text, pkg.labels, pkg.choices);
  return a;
}

std::string MockOverlapProvider::chat(const std::string&, const std::string&) const {
  return {};
}

// --- http -----------------------------------------------------------------

HttpChatProvider::HttpChatProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.kind != ProviderKind::HttpChat) cfg_.kind = ProviderKind::HttpChat;
  validate(cfg_);
  if (cfg_.api_key) {
    api_key_ = *cfg_.api_key;
  } else if (const char* env = std::getenv(std::string(kApiKeyEnv).c_str())) {
    api_key_ = env;
  }
}

std::string HttpChatProvider::post_once(const std::string& body) const {
  const auto url = detail::split_url(cfg_.endpoint);
  httplib::Client client(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(url.path.empty() ? "/" : url.path, headers, body, "application/json");
  if (!res) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const std::string why = httplib::to_string(res.error());
    if (res.error() == httplib::Error::ConnectionTimeout || elapsed >= cfg_.timeout) {
      throw TimeoutError("chat endpoint timed out after " +
                         std::to_string(cfg_.timeout.count()) + " ms: " + why);
    }
    throw TransportError("chat endpoint unreachable: " + why);
  }
  if (res->status >= 500) {
    throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw ProviderError("chat endpoint returned HTTP " + std::to_string(res->status));
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw ProviderError("chat endpoint returned an unexpected body");
  }
}

std::string HttpChatProvider::chat(const std::string& system_text,
                                   const std::string& user_text) const {
  const nlohmann::json request = {
      {"model", cfg_.model_name},
      {"messages",
       {{{"role", "system"}, {"content", system_text}}, {{"role", "user"}, {"content", user_text}}}},
      {"temperature", cfg_.temperature}};
  const std::string body = request.dump();

  for (unsigned attempt = 0;; ++attempt) {
    try {
      return trim(post_once(body));
    } catch (const TransportError& e) {
      if (attempt >= cfg_.max_retries) {
        if (dynamic_cast<const TimeoutError*>(&e)) throw;
        throw ProviderError(std::string(e.what()) + " (after " +
                            std::to_string(attempt + 1) + " attempts)");
      }
      std::this_thread::sleep_for(cfg_.backoff_base * (1u << attempt));
    }
  }
}

ModelAnswer HttpChatProvider::complete(const PromptPackage& pkg) const {
  ModelAnswer a;
  a.provider_id = id();
  const auto started = std::chrono::steady_clock::now();
  a.raw_text = chat(pkg.system_text, pkg.user_text);
  a.latency_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                            started)
          .count());
  a.parsed = parse_answer(a.raw_text, pkg.labels, pkg.choices);
  return a;
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg) {
  validate(cfg);
  if (cfg.kind == ProviderKind::MockOverlap) return std::make_unique<MockOverlapProvider>();
  return std::make_unique<HttpChatProvider>(cfg);
}

ModelAnswer complete(const PromptPackage& pkg, const ProviderConfig& cfg) {
  return make_provider(cfg)->complete(pkg);
}

CounterfactualRewriter make_rewriter(std::shared_ptr<const Provider> provider) {
  return [provider = std::move(provider)](const std::string& statement) {
    return provider->chat(
        "You rewrite hypothetical questions into fluent English.",
        "Rewrite this counterfactual question so it reads naturally, keeping its meaning. "
        "Reply with the rewritten question only.\n" +
            statement);
  };
}

}  // namespace careca
