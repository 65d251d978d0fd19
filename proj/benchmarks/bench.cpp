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


#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "careca/careca.hpp"

namespace {

using namespace careca;

CausalItem rain_item() {
  return {"rain", TaskKind::CausalDiscovery, "Heavy rain fell on the city all night.",
          "What happened as a RESULT?", QuestionKind::Plausibility,
          {"The museum sold tickets.", "The streets flooded."}, 1};
}

SnapshotStore small_store() {
  std::istringstream tsv(
      "rain\tCapableOf\tcause_flooding\t2.0\n"
      "rain\tRelatedTo\twater\t1.0\n"
      "street\tUsedFor\tdriving\t1.0\n"
      "flood\tCauses\tdamage\t2.0\n"
      "city\tHasA\tstreet\t1.0\n"
      "night\tRelatedTo\tdark\t1.0\n");
  return SnapshotStore::from_stream(tsv);
}

void BM_ExtractConcepts(benchmark::State& state) {
  const std::string text =
      "The engineers noticed that the old bridge shook whenever heavy trucks crossed it "
      "during the storm, so the city closed the road until repairs were finished.";
  for (auto _ : state) benchmark::DoNotOptimize(extract_concepts(text));
}
BENCHMARK(BM_ExtractConcepts);

void BM_BuildContext(benchmark::State& state) {
  const auto store = small_store();
  const auto item = rain_item();
  for (auto _ : state) benchmark::DoNotOptimize(build_context(item, store, {}));
}
BENCHMARK(BM_BuildContext);

void BM_Assemble(benchmark::State& state) {
  const auto store = small_store();
  const auto item = rain_item();
  auto bundle = build_context(item, store, {});
  bundle = attach(bundle, generate_counterfactuals(item, bundle, {}));
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(item, bundle, budget));
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(1024);

void BM_ScoreRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<CausalItem> items(n);
  RunResult run;
  for (std::size_t i = 0; i < n; ++i) {
    items[i].id = "b" + std::to_string(i);
    items[i].choices = {"a", "b", "c"};
    items[i].gold = rng() % 3;
    run.per_item.push_back({items[i].id, items[i].gold, rng() % 3});
  }
  for (auto _ : state) benchmark::DoNotOptimize(score_run(run, items));
}
BENCHMARK(BM_ScoreRun)->Arg(100)->Arg(10000);

void BM_ParseAnswer(benchmark::State& state) {
  const auto labels = make_labels(4, LabelStyle::Hypothesis);
  const std::vector<std::string> choices = {"One.", "Two.", "Three.", "Four."};
  const std::string reply =
      "Considering the premise carefully, I believe the correct answer is Hypothesis 3 "
      "because the other options do not follow.";
  for (auto _ : state) benchmark::DoNotOptimize(parse_answer(reply, labels, choices));
}
BENCHMARK(BM_ParseAnswer);

}  // namespace

BENCHMARK_MAIN();
