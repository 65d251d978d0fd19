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

#include "careca/transcript.hpp"

#include <nlohmann/json.hpp>

#include "careca/error.hpp"
#include "careca/text.hpp"

namespace careca {

std::string prompt_hash(const PromptPackage& pkg) {
  std::string buf = pkg.system_text;
  buf.push_back('\0');
  buf += pkg.user_text;
  return hex64(fnv1a64(buf));
}

TranscriptWriter::TranscriptWriter(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  // A torn tail from an interrupted run must not merge with the next record.
  bool needs_newline = false;
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    std::ifstream in(path, std::ios::binary);
    in.seekg(-1, std::ios::end);
    char last = '\n';
    in.get(last);
    needs_newline = last != '\n';
  }
  out_.open(path, std::ios::app);
  if (!out_) throw ConfigError("cannot open transcript: " + path.string());
  if (needs_newline) out_ << '\n';
}

void TranscriptWriter::append(const TranscriptRecord& r) {
  nlohmann::json j = {{"item_id", r.item_id},
                      {"prompt_hash", r.prompt_hash},
                      {"raw_text", r.raw_text},
                      {"parsed", r.parsed ? nlohmann::json(*r.parsed) : nlohmann::json(nullptr)},
                      {"latency_ms", r.latency_ms}};
  if (!r.error.empty()) j["error"] = r.error;
  const std::string line = j.dump() + '\n';
  std::lock_guard lock(mu_);
  out_ << line;
  out_.flush();
}

std::vector<TranscriptRecord> read_transcript(const std::filesystem::path& path) {
  std::vector<TranscriptRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TranscriptRecord r;
      r.item_id = j.at("item_id").get<std::string>();
      r.prompt_hash = j.at("prompt_hash").get<std::string>();
      r.raw_text = j.value("raw_text", std::string());
      if (j.contains("parsed") && j["parsed"].is_number_integer()) {
        r.parsed = j["parsed"].get<std::size_t>();
      }
      r.latency_ms = j.value("latency_ms", std::uint64_t{0});
      r.error = j.value("error", std::string());
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception&) {
      continue;
    }
  }
  return out;
}

}  // namespace careca
