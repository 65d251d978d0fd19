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


#include "careca/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

std::optional<AblationFlags> parse_flags(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "cki+cre" || v == "cre+cki" || v == "all" || v == "on") return AblationFlags{true, true};
  if (v == "cki" || v == "no-cre") return AblationFlags{true, false};
  if (v == "cre" || v == "no-cki") return AblationFlags{false, true};
  if (v == "none" || v == "off") return AblationFlags{false, false};
  return std::nullopt;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '\\': out += '\\'; break;
      default:
        out += '\\';
        out += s[i];
    }
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError(std::string(key) + ": expected " + std::string(want) + ", got \"" +
                    std::string(value) + "\"");
}

template <class T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, value, "a non-negative integer");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, value, "a number");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = to_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, value, "true or false");
}

bool is_input_path_key(std::string_view key) {
  return key == "dataset.path" || key == "knowledge.snapshot_path" || key == "cre.templates_path";
}

std::string_view bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "dataset.name",           "dataset.path",
      "knowledge.endpoint",     "knowledge.snapshot_path",
      "knowledge.cache_dir",    "knowledge.timeout_ms",
      "provider.kind",          "provider.endpoint",
      "provider.model",         "provider.timeout_ms",
      "provider.max_retries",   "provider.max_concurrency",
      "provider.temperature",   "provider.rewrite_counterfactuals",
      "prompt.budget",          "prompt.label_style",
      "prompt.system_text",     "pipeline.k_per_concept",
      "pipeline.max_statements", "pipeline.cf_max",
      "pipeline.flags",         "cre.templates_path",
      "eval.runs",              "eval.seed",
      "eval.outdir",            "eval.split_ratio",
  };
  return keys;
}

void apply_setting(AppConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = unescape(trim(value_in));
  const std::string_view k = key;
  const std::string_view v = value;

  if (k == "dataset.name") {
    auto d = parse_dataset_name(v);
    if (!d) throw ConfigError("unknown dataset: " + value);
    cfg.dataset.name = *d;
  } else if (k == "dataset.path") {
    cfg.dataset.path = value;
  } else if (k == "knowledge.endpoint") {
    cfg.knowledge.endpoint = value;
  } else if (k == "knowledge.snapshot_path") {
    cfg.knowledge.snapshot_path = value;
  } else if (k == "knowledge.cache_dir") {
    cfg.knowledge.cache_dir = value;
  } else if (k == "knowledge.timeout_ms") {
    cfg.knowledge.timeout_ms = parse_unsigned<std::int64_t>(k, v);
  } else if (k == "provider.kind") {
    auto p = parse_provider_kind(v);
    if (!p) bad_value(k, v, "mock-overlap or http-chat");
    cfg.provider.kind = *p;
  } else if (k == "provider.endpoint") {
    cfg.provider.endpoint = value;
  } else if (k == "provider.model") {
    cfg.provider.model_name = value;
  } else if (k == "provider.timeout_ms") {
    cfg.provider.timeout_ms = parse_unsigned<std::int64_t>(k, v);
  } else if (k == "provider.max_retries") {
    cfg.provider.max_retries = parse_unsigned<unsigned>(k, v);
  } else if (k == "provider.max_concurrency") {
    cfg.provider.max_concurrency = parse_unsigned<std::size_t>(k, v);
  } else if (k == "provider.temperature") {
    cfg.provider.temperature = parse_real(k, v);
  } else if (k == "provider.rewrite_counterfactuals") {
    cfg.provider.rewrite_counterfactuals = parse_bool(k, v);
  } else if (k == "prompt.budget") {
    cfg.prompt.budget = parse_unsigned<std::size_t>(k, v);
  } else if (k == "prompt.label_style") {
    auto s = parse_label_style(v);
    if (!s) bad_value(k, v, "hypothesis or letter");
    cfg.prompt.label_style = *s;
  } else if (k == "prompt.system_text") {
    cfg.prompt.system_text = value;
  } else if (k == "pipeline.k_per_concept") {
    cfg.pipeline.k_per_concept = parse_unsigned<std::size_t>(k, v);
  } else if (k == "pipeline.max_statements") {
    cfg.pipeline.max_statements = parse_unsigned<std::size_t>(k, v);
  } else if (k == "pipeline.cf_max") {
    cfg.pipeline.cf_max = parse_unsigned<std::size_t>(k, v);
  } else if (k == "pipeline.flags") {
    auto f = parse_flags(v);
    if (!f) bad_value(k, v, "cki+cre, cki, cre or none");
    cfg.pipeline.flags = *f;
  } else if (k == "cre.templates_path") {
    cfg.templates_path = value;
  } else if (k == "eval.runs") {
    cfg.eval.runs = parse_unsigned<std::size_t>(k, v);
  } else if (k == "eval.seed") {
    cfg.eval.seed = parse_unsigned<std::uint64_t>(k, v);
  } else if (k == "eval.outdir") {
    cfg.eval.outdir = value;
  } else if (k == "eval.split_ratio") {
    cfg.eval.split_ratio = parse_real(k, v);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void apply_assignment(AppConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got \"" + std::string(assignment) + "\"");
  }
  apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void apply_config(AppConfig& cfg, std::istream& in, const std::filesystem::path& base_dir) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      const auto eq = t.find('=');
      const std::string key = eq == std::string::npos ? t : trim(std::string_view(t).substr(0, eq));
      if (!base_dir.empty() && eq != std::string::npos && is_input_path_key(key)) {
        const std::string value = unescape(trim(std::string_view(t).substr(eq + 1)));
        if (!value.empty() && std::filesystem::path(value).is_relative()) {
          apply_setting(cfg, key, escape((base_dir / value).lexically_normal().generic_string()));
          continue;
        }
      }
      apply_assignment(cfg, t);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(n) + ": " + e.what());
    }
  }
}

void apply_config_file(AppConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  apply_config(cfg, in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::string dump_config(const AppConfig& cfg) {
  std::ostringstream out;
  auto put = [&](std::string_view k, std::string_view v) { out << k << " = " << escape(v) << '\n'; };
  auto num = [](auto v) { return std::to_string(v); };
  put("dataset.name", to_string(cfg.dataset.name));
  put("dataset.path", cfg.dataset.path);
  put("knowledge.endpoint", cfg.knowledge.endpoint);
  put("knowledge.snapshot_path", cfg.knowledge.snapshot_path);
  put("knowledge.cache_dir", cfg.knowledge.cache_dir);
  put("knowledge.timeout_ms", num(cfg.knowledge.timeout_ms));
  put("provider.kind", to_string(cfg.provider.kind));
  put("provider.endpoint", cfg.provider.endpoint);
  put("provider.model", cfg.provider.model_name);
  put("provider.timeout_ms", num(cfg.provider.timeout_ms));
  put("provider.max_retries", num(cfg.provider.max_retries));
  put("provider.max_concurrency", num(cfg.provider.max_concurrency));
  put("provider.temperature", format_double(cfg.provider.temperature));
  put("provider.rewrite_counterfactuals", bool_str(cfg.provider.rewrite_counterfactuals));
  put("prompt.budget", num(cfg.prompt.budget));
  put("prompt.label_style", to_string(cfg.prompt.label_style));
  put("prompt.system_text", cfg.prompt.system_text);
  put("pipeline.k_per_concept", num(cfg.pipeline.k_per_concept));
  put("pipeline.max_statements", num(cfg.pipeline.max_statements));
  put("pipeline.cf_max", num(cfg.pipeline.cf_max));
  put("pipeline.flags", to_string(cfg.pipeline.flags));
  put("cre.templates_path", cfg.templates_path);
  put("eval.runs", num(cfg.eval.runs));
  put("eval.seed", num(cfg.eval.seed));
  put("eval.outdir", cfg.eval.outdir);
  put("eval.split_ratio", format_double(cfg.eval.split_ratio));
  return out.str();
}

void validate(const AppConfig& cfg) {
  if (cfg.eval.runs == 0) throw ArgumentError("eval.runs must be at least 1");
  if (!(cfg.eval.split_ratio > 0.0 && cfg.eval.split_ratio < 1.0)) {
    throw ConfigError("eval.split_ratio must be strictly between 0 and 1");
  }
  const bool has_endpoint = !cfg.knowledge.endpoint.empty();
  const bool has_snapshot = !cfg.knowledge.snapshot_path.empty();
  if (has_endpoint && has_snapshot) {
    throw ConfigError("set only one of knowledge.endpoint and knowledge.snapshot_path");
  }
  if (cfg.pipeline.flags.use_cki && !has_endpoint && !has_snapshot) {
    throw ConfigError("knowledge store not configured");
  }
  if (has_endpoint && cfg.knowledge.timeout_ms <= 0) {
    throw ConfigError("knowledge.timeout_ms must be positive");
  }
  if (cfg.prompt.budget == 0) throw ConfigError("prompt.budget must be positive");
  validate(provider_config(cfg));
}

std::shared_ptr<const KnowledgeStore> make_store(const AppConfig& cfg) {
  if (!cfg.knowledge.snapshot_path.empty()) {
    if (!std::filesystem::exists(cfg.knowledge.snapshot_path)) {
      throw ConfigError("knowledge store not configured: snapshot not found: " +
                        cfg.knowledge.snapshot_path);
    }
    return std::make_shared<SnapshotStore>(SnapshotStore::from_file(cfg.knowledge.snapshot_path));
  }
  if (!cfg.knowledge.endpoint.empty()) {
    auto remote = std::make_shared<RemoteStore>(
        cfg.knowledge.endpoint, std::chrono::milliseconds(cfg.knowledge.timeout_ms));
    return std::make_shared<CachingStore>(std::move(remote), cfg.knowledge.cache_dir);
  }
  return nullptr;
}

ProviderConfig provider_config(const AppConfig& cfg) {
  ProviderConfig p;
  p.kind = cfg.provider.kind;
  p.endpoint = cfg.provider.endpoint;
  p.model_name = cfg.provider.model_name;
  p.timeout = std::chrono::milliseconds(cfg.provider.timeout_ms);
  p.max_retries = cfg.provider.max_retries;
  p.max_concurrency = cfg.provider.max_concurrency;
  p.temperature = cfg.provider.temperature;
  return p;
}

Runtime make_runtime(const AppConfig& cfg) {
  validate(cfg);
  Runtime rt;
  rt.store = make_store(cfg);
  rt.provider = make_provider(provider_config(cfg));
  if (!cfg.templates_path.empty()) {
    rt.templates =
        std::make_shared<TemplateRegistry>(TemplateRegistry::from_file(cfg.templates_path));
  }
  rt.pipeline.context.k_per_concept = cfg.pipeline.k_per_concept;
  rt.pipeline.context.max_statements = cfg.pipeline.max_statements;
  rt.pipeline.cf_max = cfg.pipeline.cf_max;
  rt.pipeline.budget = cfg.prompt.budget;
  rt.pipeline.style.label_style = cfg.prompt.label_style;
  rt.pipeline.style.system_text = cfg.prompt.system_text;
  rt.pipeline.flags = cfg.pipeline.flags;
  rt.pipeline.split_ratio = cfg.eval.split_ratio;
  rt.pipeline.templates = rt.templates.get();
  if (cfg.provider.rewrite_counterfactuals) rt.pipeline.rewrite = make_rewriter(rt.provider);
  rt.options.outdir = cfg.eval.outdir;
  rt.options.max_concurrency = cfg.provider.max_concurrency;
  return rt;
}

}  // namespace careca
