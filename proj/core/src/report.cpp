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


#include <fstream>
#include <sstream>

#include "careca/error.hpp"
#include "careca/evaluation.hpp"
#include "careca/text.hpp"

namespace careca {

namespace {

constexpr std::string_view kColumns[] = {"Experiment",    "Dataset", "Model",
                                         "Mean Accuracy", "Mean F1", "Mean Precision",
                                         "Mean Recall"};

std::vector<std::string> cells(const ReportRow& row) {
  return {row.experiment,
          row.dataset,
          row.model,
          format_percent(row.mean.accuracy),
          format_percent(row.mean.f1),
          format_percent(row.mean.precision),
          format_percent(row.mean.recall)};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// RFC 4180 records; quoted fields may contain separators and newlines.
std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        out.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw LoadError(out.size() + 1, "unterminated quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    out.push_back(std::move(record));
  }
  return out;
}

double parse_percent(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw LoadError(line, "not a number: " + s);
  return v / 100.0;
}

}  // namespace

std::string render_report(const EvalReport& report, ReportFormat format) {
  if (report.rows.empty()) throw ArgumentError("report has no rows");
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
      out << (i ? "," : "") << kColumns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
      const auto c = cells(row);
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << csv_field(c[i]);
      out << '\n';
    }
    return out.str();
  }

  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    out << (i ? " | " : "") << kColumns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    const auto c = cells(row);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " | " : "") << c[i];
    out << '\n';
  }
  out << "runs: " << report.run_count << " | item errors: " << report.error_count << '\n';
  return out.str();
}

EvalReport parse_report_csv(std::string_view csv) {
  const auto records = csv_records(csv);
  if (records.empty()) throw LoadError(1, "empty report");
  const auto& header = records.front();
  if (header.size() != std::size(kColumns) ||
      !std::equal(header.begin(), header.end(), std::begin(kColumns))) {
    throw LoadError(1, "unexpected report header");
  }
  EvalReport report;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != std::size(kColumns)) {
      throw LoadError(r + 1, "expected " + std::to_string(std::size(kColumns)) + " fields");
    }
    ReportRow row;
    row.experiment = f[0];
    row.dataset = f[1];
    row.model = f[2];
    row.mean.accuracy = parse_percent(f[3], r + 1);
    row.mean.f1 = parse_percent(f[4], r + 1);
    row.mean.precision = parse_percent(f[5], r + 1);
    row.mean.recall = parse_percent(f[6], r + 1);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_files(const EvalReport& report, const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  for (const auto& [name, format] :
       {std::pair{"report.txt", ReportFormat::Table}, std::pair{"report.csv", ReportFormat::Csv}}) {
    std::ofstream out(outdir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + (outdir / name).string());
    out << render_report(report, format);
  }
}

}  // namespace careca
