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

#include <gtest/gtest.h>

#include <sstream>

#include "careca/error.hpp"
#include "test_support.hpp"

namespace careca {
namespace {

using testing::fixture;

TEST(Config, DumpApplyRoundTrip) {
  AppConfig cfg;
  cfg.dataset.name = DatasetName::CLadder;
  cfg.dataset.path = "/data/cladder.jsonl";
  cfg.provider.kind = ProviderKind::HttpChat;
  cfg.provider.endpoint = "http://localhost:8000/v1/chat/completions";
  cfg.provider.model_name = "local";
  cfg.provider.temperature = 0.25;
  cfg.prompt.system_text = "Line one\nline\ttwo \\ end";
  cfg.prompt.label_style = LabelStyle::Letter;
  cfg.pipeline.flags = {false, true};
  cfg.eval.split_ratio = 0.6;
  cfg.eval.seed = 123456789012345ULL;

  std::istringstream in(dump_config(cfg));
  AppConfig back;
  apply_config(back, in);
  EXPECT_EQ(back, cfg);
  EXPECT_EQ(dump_config(back), dump_config(cfg));
}

TEST(Config, EveryKeyIsDumped) {
  const std::string dump = dump_config(AppConfig{});
  for (auto key : config_keys()) {
    EXPECT_NE(dump.find(std::string(key) + " = "), std::string::npos) << key;
  }
}

TEST(Config, CommentsAndErrorsCarryLine) {
  AppConfig cfg;
  std::istringstream ok("# comment\n\n  eval.runs = 5  \n");
  apply_config(cfg, ok);
  EXPECT_EQ(cfg.eval.runs, 5u);

  std::istringstream bad("eval.runs = 5\nnot.a.key = 1\n");
  try {
    apply_config(cfg, bad);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("config line 2: ", 0), 0u) << e.what();
  }
}

TEST(Config, BadValues) {
  AppConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "eval.runs", "three"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "pipeline.flags", "maybe"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "dataset.name", "imagenet"), ConfigError);
  EXPECT_THROW(apply_assignment(cfg, "eval.runs"), ConfigError);
  apply_assignment(cfg, "pipeline.flags=no-cki");
  EXPECT_EQ(cfg.pipeline.flags, (AblationFlags{false, true}));
}

TEST(Config, Flags) {
  EXPECT_EQ(parse_flags("ALL"), (AblationFlags{true, true}));
  EXPECT_EQ(parse_flags("cre+cki"), (AblationFlags{true, true}));
  EXPECT_EQ(parse_flags("cki"), (AblationFlags{true, false}));
  EXPECT_EQ(parse_flags("no-cre"), (AblationFlags{true, false}));
  EXPECT_EQ(parse_flags("off"), (AblationFlags{false, false}));
  EXPECT_FALSE(parse_flags("cki+"));
}

TEST(Config, Validation) {
  AppConfig cfg;
  cfg.knowledge.snapshot_path = "x.tsv";
  EXPECT_NO_THROW(validate(cfg));
  cfg.eval.runs = 0;
  EXPECT_THROW(validate(cfg), ArgumentError);
  cfg.eval.runs = 1;
  cfg.eval.split_ratio = 1.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.eval.split_ratio = 0.5;
  cfg.knowledge.endpoint = "http://kg";
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.knowledge = {};
  try {
    validate(cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("knowledge store not configured"), std::string::npos);
  }
  cfg.pipeline.flags = {false, true};
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, RelativePathsFollowConfigFile) {
  AppConfig cfg;
  apply_config_file(cfg, fixture("mini_copa.conf"));
  EXPECT_EQ(std::filesystem::path(cfg.dataset.path), fixture("mini_copa.jsonl"));
  EXPECT_EQ(std::filesystem::path(cfg.knowledge.snapshot_path), fixture("conceptnet_snapshot.tsv"));
  EXPECT_EQ(cfg.pipeline.flags, (AblationFlags{true, true}));
  EXPECT_EQ(cfg.eval.runs, 3u);
}

TEST(Config, MissingSnapshot) {
  AppConfig cfg;
  cfg.knowledge.snapshot_path = "/nonexistent/snapshot.tsv";
  try {
    make_store(cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("knowledge store not configured"), std::string::npos);
  }
}

TEST(Config, RuntimeFromFixture) {
  AppConfig cfg;
  apply_config_file(cfg, fixture("mini_copa.conf"));
  const Runtime rt = make_runtime(cfg);
  ASSERT_TRUE(rt.store);
  ASSERT_TRUE(rt.provider);
  EXPECT_EQ(rt.provider->id(), "mock-overlap");
  EXPECT_FALSE(rt.pipeline.rewrite);
  EXPECT_EQ(rt.pipeline.context.k_per_concept, 3u);
}

}  // namespace
}  // namespace careca
