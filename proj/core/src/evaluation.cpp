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

#include "careca/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "careca/error.hpp"
#include "careca/transcript.hpp"

namespace careca {

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricBlock score_run(const RunResult& run, const std::vector<CausalItem>& items) {
  std::unordered_map<std::string, const CausalItem*> by_id;
  for (const auto& item : items) by_id.emplace(item.id, &item);
  if (run.per_item.size() != items.size()) {
    throw IntegrityError("run covers " + std::to_string(run.per_item.size()) +
                         " items but the test set has " + std::to_string(items.size()));
  }

  std::set<std::string> seen;
  std::size_t max_choices = 0;
  bool all_binary = true;
  for (const auto& o : run.per_item) {
    auto it = by_id.find(o.item_id);
    if (it == by_id.end()) throw IntegrityError("unknown item id in run: " + o.item_id);
    if (!seen.insert(o.item_id).second) throw IntegrityError("item scored twice: " + o.item_id);
    if (it->second->gold != o.gold) throw IntegrityError("gold label mismatch for " + o.item_id);
    max_choices = std::max(max_choices, it->second->choices.size());
    all_binary = all_binary && it->second->choices.size() == 2;
  }

  MetricBlock m;
  m.support.assign(max_choices, 0);
  std::size_t correct = 0;
  for (const auto& o : run.per_item) {
    ++m.support[o.gold];
    if (o.parsed && *o.parsed == o.gold) ++correct;
  }
  m.accuracy = ratio(correct, run.per_item.size());

  auto class_counts = [&](std::size_t c) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& o : run.per_item) {
      const bool predicted = o.parsed && *o.parsed == c;
      const bool actual = o.gold == c;
      tp += predicted && actual;
      fp += predicted && !actual;
      fn += !predicted && actual;
    }
    return std::array<std::size_t, 3>{tp, fp, fn};
  };

  if (all_binary) {
    const auto [tp, fp, fn] = class_counts(0);
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
  } else {
    std::set<std::size_t> classes;
    for (const auto& o : run.per_item) {
      classes.insert(o.gold);
      if (o.parsed) classes.insert(*o.parsed);
    }
    double p = 0.0;
    double r = 0.0;
    for (std::size_t c : classes) {
      const auto [tp, fp, fn] = class_counts(c);
      p += ratio(tp, tp + fp);
      r += ratio(tp, tp + fn);
    }
    if (!classes.empty()) {
      m.precision = p / static_cast<double>(classes.size());
      m.recall = r / static_cast<double>(classes.size());
    }
  }
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

MetricBlock aggregate(const std::vector<MetricBlock>& runs) {
  if (runs.empty()) throw ArgumentError("cannot aggregate zero runs");
  MetricBlock m;
  for (const auto& r : runs) {
    m.accuracy += r.accuracy;
    m.precision += r.precision;
    m.recall += r.recall;
    m.f1 += r.f1;
  }
  const double n = static_cast<double>(runs.size());
  m.accuracy /= n;
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  m.support = runs.front().support;
  return m;
}

std::string model_label(const std::string& provider_id, const AblationFlags& flags) {
  return provider_id + " [" + to_string(flags) + "]";
}

PreparedItem prepare_item(const CausalItem& item, const KnowledgeStore* store,
                          const PipelineConfig& pipeline) {
  if (pipeline.flags.use_cki && store == nullptr) {
    throw ConfigError("knowledge store not configured");
  }
  PreparedItem out;
  // The bundle is built whenever a store exists so that CRE-only runs still
  // have edges to negate; the CKI flag only hides the statements.
  if (store != nullptr && (pipeline.flags.use_cki || pipeline.flags.use_cre)) {
    out.bundle = build_context(item, *store, pipeline.context);
  }
  if (pipeline.flags.use_cre) {
    CounterfactualOptions cf;
    cf.max_count = pipeline.cf_max;
    cf.registry = pipeline.templates;
    cf.rewrite = pipeline.rewrite;
    out.bundle = attach(std::move(out.bundle), generate_counterfactuals(item, out.bundle, cf));
  }
  out.prompt = render_ablation(item, out.bundle, pipeline.flags, pipeline.budget, pipeline.style);
  return out;
}

namespace {

struct Prepared {
  std::optional<PromptPackage> prompt;
  std::string hash;
  std::string error;
};

std::string cache_key(const std::string& item_id, const std::string& hash) {
  return item_id + '\x1f' + hash;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. careca::Error is
// expected to be handled inside fn; anything else is rethrown here.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

RunResult run_once(const std::vector<CausalItem>& test, const std::vector<Prepared>& prepared,
                   DatasetName dataset, const Provider& provider,
                   const PipelineConfig& pipeline, std::size_t run_index,
                   const EvalOptions& options) {
  RunResult run;
  run.dataset = dataset;
  run.provider_id = provider.id();
  run.flags = pipeline.flags;
  run.run_index = run_index;
  run.per_item.resize(test.size());

  std::unordered_map<std::string, TranscriptRecord> done;
  std::unique_ptr<TranscriptWriter> writer;
  if (!options.outdir.empty()) {
    const auto path = options.outdir / ("run" + std::to_string(run_index) + ".log");
    for (auto& r : read_transcript(path)) {
      if (r.error.empty()) done[cache_key(r.item_id, r.prompt_hash)] = std::move(r);
    }
    writer = std::make_unique<TranscriptWriter>(path);
  }

  std::atomic<std::size_t> errors{0};
  parallel_for(test.size(), options.max_concurrency, [&](std::size_t i) {
    const CausalItem& item = test[i];
    ItemOutcome& outcome = run.per_item[i];
    outcome.item_id = item.id;
    outcome.gold = item.gold;
    const Prepared& p = prepared[i];

    TranscriptRecord rec;
    rec.item_id = item.id;
    rec.prompt_hash = p.hash;
    if (!p.prompt) {
      ++errors;
      rec.error = p.error;
      if (writer) writer->append(rec);
      return;
    }
    if (auto it = done.find(cache_key(item.id, p.hash)); it != done.end()) {
      outcome.parsed = parse_answer(it->second.raw_text, p.prompt->labels, p.prompt->choices);
      return;
    }
    try {
      ModelAnswer a = provider.complete(*p.prompt);
      outcome.parsed = a.parsed;
      rec.raw_text = std::move(a.raw_text);
      rec.parsed = a.parsed;
      rec.latency_ms = a.latency_ms;
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      ++errors;
      rec.error = e.what();
    }
    if (writer) writer->append(rec);
  });
  run.error_count = errors.load();
  return run;
}

}  // namespace

EvalReport evaluate(const std::vector<CausalItem>& items, DatasetName dataset,
                    const Provider& provider, const KnowledgeStore* store,
                    const PipelineConfig& pipeline, std::size_t runs, std::uint64_t seed,
                    const EvalOptions& options) {
  if (runs == 0) throw ArgumentError("runs must be at least 1");
  if (pipeline.flags.use_cki && store == nullptr) {
    throw ConfigError("knowledge store not configured");
  }
  const DatasetSplit sp = split(items, pipeline.split_ratio, seed);
  const std::vector<CausalItem>& test = sp.test;

  // Prompts do not depend on the run index; build them once.
  std::vector<Prepared> prepared(test.size());
  parallel_for(test.size(), options.max_concurrency, [&](std::size_t i) {
    try {
      auto pi = prepare_item(test[i], store, pipeline);
      prepared[i].hash = prompt_hash(pi.prompt);
      prepared[i].prompt = std::move(pi.prompt);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      prepared[i].error = e.what();
    }
  });

  if (!options.outdir.empty()) std::filesystem::create_directories(options.outdir);

  EvalReport report;
  report.run_count = runs;
  std::vector<MetricBlock> blocks;
  for (std::size_t r = 1; r <= runs; ++r) {
    RunResult run = run_once(test, prepared, dataset, provider, pipeline, r, options);
    report.error_count += run.error_count;
    blocks.push_back(score_run(run, test));
  }
  report.rows.push_back({std::string(experiment_name(task_for(dataset))),
                         std::string(to_string(dataset)),
                         model_label(provider.id(), pipeline.flags), aggregate(blocks)});
  return report;
}

EvalReport evaluate(const DatasetDescriptor& desc, const Provider& provider,
                    const KnowledgeStore* store, const PipelineConfig& pipeline,
                    std::size_t runs, std::uint64_t seed, const EvalOptions& options) {
  if (runs == 0) throw ArgumentError("runs must be at least 1");
  return evaluate(load_dataset(desc), desc.name, provider, store, pipeline, runs, seed, options);
}

EvalReport evaluate_ablation(const std::vector<CausalItem>& items, DatasetName dataset,
                             const Provider& provider, const KnowledgeStore* store,
                             const PipelineConfig& pipeline, std::size_t runs,
                             std::uint64_t seed, const EvalOptions& options) {
  static constexpr AblationFlags kVariants[] = {
      {true, true}, {true, false}, {false, true}, {false, false}};
  EvalReport report;
  report.run_count = runs;
  for (const auto& flags : kVariants) {
    PipelineConfig p = pipeline;
    p.flags = flags;
    EvalOptions o = options;
    if (!o.outdir.empty()) o.outdir /= to_string(flags);
    EvalReport part = evaluate(items, dataset, provider, store, p, runs, seed, o);
    report.error_count += part.error_count;
    for (auto& row : part.rows) report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace careca
