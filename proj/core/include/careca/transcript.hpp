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

// Append-only per-run call log (JSON Lines). Each line:
//   {"item_id": "...", "prompt_hash": "...", "raw_text": "...",
//    "parsed": 1 | null, "latency_ms": 12, "error": "..."?}

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "careca/prompting.hpp"

namespace careca {

struct TranscriptRecord {
  std::string item_id;
  std::string prompt_hash;
  std::string raw_text;
  std::optional<std::size_t> parsed;
  std::uint64_t latency_ms = 0;
  std::string error;  // empty on success
};

// FNV-1a over system text, a NUL separator and user text.
std::string prompt_hash(const PromptPackage& pkg);

// Serialized sink shared by concurrent workers. Each record is flushed as a
// whole line so a crash leaves at most one truncated tail line.
class TranscriptWriter {
 public:
  explicit TranscriptWriter(const std::filesystem::path& path);

  void append(const TranscriptRecord& record);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

// Missing file -> empty. Unparseable lines (e.g. a torn tail) are skipped.
std::vector<TranscriptRecord> read_transcript(const std::filesystem::path& path);

}  // namespace careca
