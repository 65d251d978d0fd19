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


#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <nlohmann/json.hpp>

#include "careca/error.hpp"
#include "careca/knowledge.hpp"
#include "stub_server.hpp"
#include "test_support.hpp"

namespace careca {
namespace {

using namespace std::chrono_literals;
using testing::StubServer;
using testing::TempDir;

nlohmann::json conceptnet_body() {
  return {{"edges",
           {{{"start", {{"@id", "/c/en/rain"}}},
             {"rel", {{"@id", "/r/CapableOf"}}},
             {"end", {{"@id", "/c/en/cause_flooding/v"}}},
             {"weight", 2.0},
             {"surfaceText", "[[rain]] can [[cause flooding]]"}},
            {{"start", {{"@id", "/c/en/rain"}}},
             {"rel", {{"label", "RelatedTo"}}},
             {"end", {{"@id", "/c/en/water"}}},
             {"weight", 1.0}},
            {{"start", {{"@id", "/c/en/rain"}}},
             {"rel", {{"@id", "/r/Synonym"}}},
             {"end", {{"@id", "/c/en/precipitation"}}},
             {"weight", 5.0}},
            {{"start", {{"@id", "/c/fr/pluie"}}},
             {"rel", {{"@id", "/r/RelatedTo"}}},
             {"end", {{"@id", "/c/en/rain"}}},
             {"weight", 3.0}},
            {{"start", {{"@id", "/c/en/rain"}}},
             {"rel", {{"@id", "/r/Causes"}}},
             {"end", {{"@id", "/c/en/mud"}}},
             {"weight", -1.0}}}}};
}

TEST(ParseConceptNet, KeepsEnglishAllowListedEdges) {
  const auto edges = parse_conceptnet_response(conceptnet_body());
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[0].end, "cause_flooding");
  EXPECT_EQ(edges[0].surface, "[[rain]] can [[cause flooding]]");
  EXPECT_EQ(edges[1].relation, Relation::RelatedTo);
  EXPECT_EQ(edges[2].weight, 0.0);
}

TEST(ParseConceptNet, ToleratesOddBodies) {
  EXPECT_TRUE(parse_conceptnet_response(nlohmann::json::object()).empty());
  EXPECT_TRUE(parse_conceptnet_response({{"edges", 3}}).empty());
  EXPECT_TRUE(parse_conceptnet_response({{"edges", {1, "x", nullptr}}}).empty());
}

class RemoteStoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    stub_.server().Get(R"(/api/c/en/([^/]+))", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
      ++hits_;
      last_limit_ = req.get_param_value("limit");
      const std::string lemma = req.matches[1];
      if (lemma == "rain") {
        res.set_content(conceptnet_body().dump(), "application/json");
      } else if (lemma == "broken") {
        res.status = 500;
      } else if (lemma == "garbled") {
        res.set_content("{not json", "application/json");
      } else if (lemma == "slow") {
        std::this_thread::sleep_for(600ms);
        res.set_content("{}", "application/json");
      } else {
        res.status = 404;
      }
    });
    stub_.start();
  }

  StubServer stub_;
  std::atomic<int> hits_{0};
  std::string last_limit_;
};

TEST_F(RemoteStoreTest, FetchesAndParses) {
  RemoteStore store(stub_.url("/api/"), 2000ms, 50);
  const auto edges = query_edges("rain", store, 1);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(verbalize(edges[0]), "Rain is capable of cause flooding.");
  EXPECT_EQ(last_limit_, "50");
  store.fetch("rain", 80);
  EXPECT_EQ(last_limit_, "80");
}

TEST_F(RemoteStoreTest, MissingConceptIsEmpty) {
  RemoteStore store(stub_.url("/api"), 2000ms);
  EXPECT_TRUE(store.fetch("zzzqq", 3).empty());
}

TEST_F(RemoteStoreTest, ServerErrorsAreTransportErrors) {
  RemoteStore store(stub_.url("/api"), 2000ms);
  EXPECT_THROW(store.fetch("broken", 3), TransportError);
  EXPECT_THROW(store.fetch("garbled", 3), TransportError);
}

TEST_F(RemoteStoreTest, SlowEndpointTimesOut) {
  RemoteStore store(stub_.url("/api"), 150ms);
  EXPECT_THROW(store.fetch("slow", 3), TimeoutError);
}

TEST_F(RemoteStoreTest, UnreachableEndpoint) {
  const std::string url = stub_.url("/api");
  stub_.stop();
  RemoteStore store(url, 500ms);
  EXPECT_THROW(store.fetch("rain", 3), TransportError);
}

TEST_F(RemoteStoreTest, CacheAvoidsRepeatRequests) {
  TempDir dir;
  auto remote = std::make_shared<RemoteStore>(stub_.url("/api"), 2000ms);
  {
    CachingStore cache(remote, dir.path());
    const auto first = query_edges("rain", cache, 5);
    const auto second = query_edges("rain", cache, 5);
    EXPECT_EQ(first, second);
    EXPECT_EQ(first.size(), 3u);
  }
  EXPECT_EQ(hits_.load(), 1);
  stub_.stop();
  CachingStore offline(remote, dir.path());
  EXPECT_EQ(query_edges("rain", offline, 5).size(), 3u);
}

TEST(RemoteStore, RejectsUrlWithoutScheme) {
  EXPECT_THROW(RemoteStore("conceptnet.example/api", 1000ms), ConfigError);
}

}  // namespace
}  // namespace careca
