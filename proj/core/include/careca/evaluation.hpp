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

// End-to-end evaluation: knowledge -> counterfactuals -> prompt -> provider,
// scored with accuracy / precision / recall / F1 and averaged over runs.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "careca/corpus.hpp"
#include "careca/counterfactual.hpp"
#include "careca/knowledge.hpp"
#include "careca/prompting.hpp"
#include "careca/provider.hpp"

namespace careca {

struct ItemOutcome {
  std::string item_id;
  std::size_t gold = 0;
  std::optional<std::size_t> parsed;  // nullopt = Abstain
};

struct RunResult {
  DatasetName dataset = DatasetName::COPA;
  std::string provider_id;
  AblationFlags flags;
  std::vector<ItemOutcome> per_item;
  std::size_t run_index = 0;
  std::size_t error_count = 0;
};

struct MetricBlock {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::size_t> support;  // gold count per choice index

  friend bool operator==(const MetricBlock&, const MetricBlock&) = default;
};

// Harmonic mean, 0 when both inputs are 0.
double f1_score(double precision, double recall);

// Abstain counts as wrong. When every item has two choices, precision and
// recall treat choice 0 as the positive class and an Abstain is never a
// positive prediction. Otherwise they are macro-averaged one-vs-rest over
// the classes seen in gold or predictions, and F1 is the harmonic mean of
// those averages. Throws IntegrityError when ids or gold labels disagree
// with `items`.
MetricBlock score_run(const RunResult& run, const std::vector<CausalItem>& items);

// Fieldwise arithmetic mean. Throws ArgumentError on an empty list.
MetricBlock aggregate(const std::vector<MetricBlock>& runs);

struct ReportRow {
  std::string experiment;
  std::string dataset;
  std::string model;
  MetricBlock mean;
};

struct EvalReport {
  std::vector<ReportRow> rows;
  std::size_t run_count = 0;
  std::size_t error_count = 0;
};

struct PipelineConfig {
  ContextOptions context;  // k_per_concept, max_statements
  std::size_t cf_max = 2;
  std::size_t budget = kDefaultBudget;
  PromptStyle style;
  AblationFlags flags;
  double split_ratio = 0.75;
  const TemplateRegistry* templates = nullptr;
  CounterfactualRewriter rewrite;
};

struct EvalOptions {
  std::filesystem::path outdir;  // run<k>.log transcripts; empty -> none
  std::size_t max_concurrency = 4;
};

// Model column value, e.g. "mock-overlap [cki+cre]".
std::string model_label(const std::string& provider_id, const AblationFlags& flags);

// Scores the test side of a seeded split. `store` may be null only when
// the CKI flag is off. Items already answered in an existing transcript for
// the same run and prompt hash are reused instead of re-sent. Per-item
// failures become Abstain and are tallied in error_count.
EvalReport evaluate(const DatasetDescriptor& desc, const Provider& provider,
                    const KnowledgeStore* store, const PipelineConfig& pipeline,
                    std::size_t runs, std::uint64_t seed, const EvalOptions& options = {});

EvalReport evaluate(const std::vector<CausalItem>& items, DatasetName dataset,
                    const Provider& provider, const KnowledgeStore* store,
                    const PipelineConfig& pipeline, std::size_t runs, std::uint64_t seed,
                    const EvalOptions& options = {});

// Single-variable test: one row each for cki+cre, cki, cre and none.
EvalReport evaluate_ablation(const std::vector<CausalItem>& items, DatasetName dataset,
                             const Provider& provider, const KnowledgeStore* store,
                             const PipelineConfig& pipeline, std::size_t runs,
                             std::uint64_t seed, const EvalOptions& options = {});

// Builds the prompt exactly as evaluate() would for one item.
struct PreparedItem {
  ContextBundle bundle;  // full bundle, counterfactuals attached
  PromptPackage prompt;  // after ablation and budgeting
};
PreparedItem prepare_item(const CausalItem& item, const KnowledgeStore* store,
                          const PipelineConfig& pipeline);

enum class ReportFormat { Table, Csv };

// Table columns: Experiment | Dataset | Model | Mean Accuracy | Mean F1 |
// Mean Precision | Mean Recall, values as percentages with one decimal.
std::string render_report(const EvalReport& report, ReportFormat format);

// Reads what render_report(..., Csv) wrote.
EvalReport parse_report_csv(std::string_view csv);

// <outdir>/report.txt and <outdir>/report.csv.
void write_report_files(const EvalReport& report, const std::filesystem::path& outdir);

}  // namespace careca
