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


#include "careca/counterfactual.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "careca/error.hpp"
#include "test_support.hpp"

namespace careca {
namespace {

using testing::fixture;

const SnapshotStore& snapshot() {
  static const SnapshotStore store = SnapshotStore::from_file(fixture("conceptnet_snapshot.tsv"));
  return store;
}

CausalItem rain_item() {
  return {"rain", TaskKind::CausalDiscovery, "Heavy rain fell on the city all night.",
          "What happened as a RESULT?", QuestionKind::Plausibility,
          {"The museum sold tickets.", "The streets flooded."}, 1};
}

CausalItem shadow_item() {
  return {"shadow", TaskKind::CausalDiscovery, "My body cast a shadow over the grass.",
          "What was the CAUSE of this?", QuestionKind::Plausibility,
          {"The sun was rising.", "The grass was cut."}, 0};
}

KnowledgeEdge edge(std::string s, Relation r, std::string e, double w) {
  return {std::move(s), r, std::move(e), w, std::nullopt};
}

ContextBundle bundle_of(std::vector<KnowledgeEdge> edges) {
  ContextBundle b;
  for (auto& e : edges) {
    b.statements.push_back(verbalize(e));
    b.sources.push_back(std::move(e));
  }
  return b;
}

std::vector<std::string> texts(const std::vector<Counterfactual>& cfs) {
  std::vector<std::string> out;
  for (const auto& c : cfs) out.push_back(c.text);
  return out;
}

TEST(Counterfactuals, RainFloodCauseNegation) {
  const auto bundle = build_context(rain_item(), snapshot(), {2, 3});
  CounterfactualOptions one;
  one.max_count = 1;
  EXPECT_EQ(texts(generate_counterfactuals(rain_item(), bundle, one)),
            (std::vector<std::string>{
                "If there had been no rain, would cause flooding still have occurred?"}));
}

TEST(Counterfactuals, DefaultCountAddsIrrelevanceProbe) {
  const auto bundle = build_context(rain_item(), snapshot(), {2, 3});
  const auto cfs = generate_counterfactuals(rain_item(), bundle, {});
  ASSERT_EQ(cfs.size(), 2u);
  EXPECT_EQ(cfs[0].template_id, "cause-negation");
  EXPECT_EQ(cfs[1].template_id, "irrelevance-probe");
  EXPECT_EQ(cfs[1].text, "If the water were different, cause flooding would be unaffected.");
}

TEST(Counterfactuals, AlternativeMechanismUsesSecondStrongEdge) {
  const auto bundle = bundle_of({edge("fire", Relation::Causes, "smoke", 2.5),
                                 edge("campfire", Relation::Causes, "smoke", 2.0)});
  const auto cfs = generate_counterfactuals(rain_item(), bundle, {});
  EXPECT_EQ(texts(cfs),
            (std::vector<std::string>{
                "If there had been no fire, would smoke still have occurred?",
                "If campfire were prevented, could smoke still come about another way?"}));
}

TEST(Counterfactuals, EmptyBundleGivesNothing) {
  EXPECT_TRUE(generate_counterfactuals(shadow_item(), {}, {}).empty());
}

TEST(Counterfactuals, WeakOnlyBundleGivesNothing) {
  const auto bundle = bundle_of({edge("rain", Relation::RelatedTo, "water", 1.0)});
  EXPECT_TRUE(generate_counterfactuals(rain_item(), bundle, {}).empty());
}

TEST(Counterfactuals, ZeroMaxCount) {
  const auto bundle = build_context(rain_item(), snapshot(), {});
  CounterfactualOptions none;
  none.max_count = 0;
  EXPECT_TRUE(generate_counterfactuals(rain_item(), bundle, none).empty());
}

TEST(Counterfactuals, BoundedAndDeterministic) {
  const auto bundle = bundle_of({edge("fire", Relation::Causes, "smoke", 2.5),
                                 edge("campfire", Relation::Causes, "smoke", 2.0),
                                 edge("smoke", Relation::RelatedTo, "chimney", 1.0)});
  for (std::size_t k = 0; k < 5; ++k) {
    CounterfactualOptions o;
    o.max_count = k;
    const auto a = generate_counterfactuals(rain_item(), bundle, o);
    EXPECT_LE(a.size(), k);
    EXPECT_EQ(texts(a), texts(generate_counterfactuals(rain_item(), bundle, o)));
  }
}

TEST(Counterfactuals, DropsStatementsThatRevealAChoice) {
  CausalItem item = rain_item();
  item.choices = {"Smoke.", "Rain stopped."};
  const auto bundle = bundle_of({edge("fire", Relation::Causes, "smoke", 2.5)});
  EXPECT_TRUE(generate_counterfactuals(item, bundle, {}).empty());
}

TEST(Counterfactuals, LeakageCheckNormalizes) {
  EXPECT_TRUE(leaks_choice("If  THE STREETS flooded, then...", {"The streets flooded."}));
  EXPECT_FALSE(leaks_choice("If the streets were dry.", {"The streets flooded."}));
}

TEST(Counterfactuals, CustomRegistry) {
  const auto registry = TemplateRegistry::from_file(fixture("templates.tsv"));
  const auto bundle = build_context(rain_item(), snapshot(), {2, 3});
  CounterfactualOptions o;
  o.registry = &registry;
  const auto cfs = generate_counterfactuals(rain_item(), bundle, o);
  EXPECT_EQ(texts(cfs),
            (std::vector<std::string>{
                "Suppose rain had never happened. Would cause flooding follow?",
                "Even if the water were different, cause flooding would be unaffected."}));
}

TEST(Counterfactuals, RewriteHookRunsBeforeLeakFilter) {
  const auto bundle = build_context(rain_item(), snapshot(), {2, 3});
  CounterfactualOptions o;
  o.max_count = 1;
  o.rewrite = [](const std::string& s) { return "  Rewritten: " + s + "  "; };
  auto cfs = generate_counterfactuals(rain_item(), bundle, o);
  ASSERT_EQ(cfs.size(), 1u);
  EXPECT_EQ(cfs[0].text.rfind("Rewritten: If there had been no rain", 0), 0u);

  o.rewrite = [](const std::string&) { return std::string("The streets flooded."); };
  EXPECT_TRUE(generate_counterfactuals(rain_item(), bundle, o).empty());
}

TEST(Registry, Validation) {
  EXPECT_THROW(TemplateRegistry({{"a", TemplateKind::CauseNegation, "no slots here"}}),
               ConfigError);
  EXPECT_THROW(TemplateRegistry({{"a", TemplateKind::CauseNegation, "{cause}"},
                                 {"a", TemplateKind::IrrelevanceProbe, "{effect}"}}),
               ConfigError);
  std::istringstream bad("x\tWhatIf\t{cause}\n");
  EXPECT_THROW(TemplateRegistry::from_stream(bad), LoadError);
  std::istringstream short_line("x\tCauseNegation\n");
  EXPECT_THROW(TemplateRegistry::from_stream(short_line), LoadError);
  EXPECT_THROW(TemplateRegistry::from_file(fixture("missing.tsv")), ConfigError);
}

TEST(Registry, DefaultsCoverEveryKind) {
  const auto& d = TemplateRegistry::defaults();
  for (auto k : {TemplateKind::CauseNegation, TemplateKind::AlternativeMechanism,
                 TemplateKind::IrrelevanceProbe}) {
    ASSERT_NE(d.first_of(k), nullptr);
    EXPECT_EQ(parse_template_kind(to_string(k)), k);
  }
}

TEST(FillTemplate, ReplacesKnownSlotsOnly) {
  EXPECT_EQ(fill_template("{cause}/{effect}/{context}/{unrelated}/{other}",
                          {"c", "e", "x", "u"}),
            "c/e/x/u/{other}");
}

TEST(Attach, ReplacesCounterfactualsOnly) {
  auto bundle = build_context(rain_item(), snapshot(), {});
  const auto statements = bundle.statements;
  const std::vector<Counterfactual> two = {{"One?", "cause-negation"}, {"Two.", "irrelevance-probe"}};
  auto once = attach(bundle, two);
  EXPECT_EQ(once.statements, statements);
  EXPECT_EQ(once.counterfactuals, (std::vector<std::string>{"One?", "Two."}));
  EXPECT_EQ(once.counterfactual_templates,
            (std::vector<std::string>{"cause-negation", "irrelevance-probe"}));
  EXPECT_EQ(attach(once, two), once);
  const auto cleared = attach(once, {});
  EXPECT_TRUE(cleared.counterfactuals.empty());
  EXPECT_EQ(cleared.statements, statements);
}

TEST(Counterfactuals, NoLeakageAcrossFixture) {
  std::ifstream in(fixture("mini_copa.jsonl"));
  for (const auto& item : load_dataset(in, DatasetName::COPA)) {
    const auto bundle = build_context(item, snapshot(), {});
    for (const auto& cf : generate_counterfactuals(item, bundle, {})) {
      EXPECT_FALSE(leaks_choice(cf.text, item.choices)) << item.id << ": " << cf.text;
    }
  }
}

}  // namespace
}  // namespace careca
