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

#include "careca/error.hpp"
#include "careca/evaluation.hpp"
#include "test_support.hpp"

namespace careca {
namespace {

EvalReport demo() {
  EvalReport r;
  r.run_count = 3;
  r.rows.push_back({"Causal Discovery", "COPA", "CARE-CA", {0.760, 1.0, 0.781, 0.823, {}}});
  return r;
}

TEST(Report, DemoTableGolden) {
  const std::string table = render_report(demo(), ReportFormat::Table);
  EXPECT_EQ(table, testing::golden("demo_report.txt", table));
  EXPECT_NE(table.find("Causal Discovery | COPA | CARE-CA | 76.0 | 82.3 | 100.0 | 78.1"),
            std::string::npos);
  EXPECT_EQ(table.rfind("Experiment | Dataset | Model | Mean Accuracy | Mean F1 | "
                        "Mean Precision | Mean Recall\n",
                        0),
            0u);
  EXPECT_NE(table.find("runs: 3 | item errors: 0\n"), std::string::npos);
}

TEST(Report, CsvRoundTripIsFixpoint) {
  EvalReport r = demo();
  r.rows.push_back({"Causal Inference", "CLadder", "model, \"quoted\"\nline", {0.5, 0.25, 0.125, 0.0, {}}});
  const std::string csv = render_report(r, ReportFormat::Csv);
  const EvalReport back = parse_report_csv(csv);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.rows[1].model, "model, \"quoted\"\nline");
  EXPECT_DOUBLE_EQ(back.rows[0].mean.f1, 0.823);
  EXPECT_EQ(render_report(back, ReportFormat::Csv), csv);
}

TEST(Report, CsvQuoting) {
  EvalReport r = demo();
  r.rows[0].model = "a,b";
  const std::string csv = render_report(r, ReportFormat::Csv);
  EXPECT_NE(csv.find(",\"a,b\",76.0,82.3,100.0,78.1\n"), std::string::npos);
}

TEST(Report, ParseErrors) {
  EXPECT_THROW(parse_report_csv("nope\n"), LoadError);
  const std::string header =
      "Experiment,Dataset,Model,Mean Accuracy,Mean F1,Mean Precision,Mean Recall\n";
  EXPECT_THROW(parse_report_csv(header + "a,b,c,1,2\n"), LoadError);
  EXPECT_THROW(parse_report_csv(header + "a,b,c,x,2,3,4\n"), LoadError);
  try {
    parse_report_csv(header + "a,b,c,1,2,3,4\n\"open\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_GE(e.line(), 3u);
  }
}

TEST(Report, EmptyThrows) {
  EXPECT_THROW(render_report(EvalReport{}, ReportFormat::Table), ArgumentError);
  EXPECT_THROW(render_report(EvalReport{}, ReportFormat::Csv), ArgumentError);
}

TEST(Report, WritesBothFiles) {
  testing::TempDir dir;
  write_report_files(demo(), dir / "out");
  EXPECT_EQ(testing::read_file(dir / "out" / "report.txt"),
            render_report(demo(), ReportFormat::Table));
  EXPECT_EQ(testing::read_file(dir / "out" / "report.csv"),
            render_report(demo(), ReportFormat::Csv));
}

}  // namespace
}  // namespace careca
