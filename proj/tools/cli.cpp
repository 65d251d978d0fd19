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


#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "careca/causalnet.hpp"
#include "careca/config.hpp"
#include "careca/error.hpp"
#include "careca/evaluation.hpp"
#include "careca/text.hpp"

namespace careca::cli {
namespace {

// Options shared by `eval` and `inspect`. Each dedicated flag becomes a
// key=value assignment applied after the config file, followed by --set.
struct ConfigArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::vector<std::string> flag_sets;
  bool print_config = false;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--set", sets, "override a config key (key=value), repeatable");
    app.add_flag("--print-config", print_config, "print the resolved config and exit");
    mapped(app, "--dataset", "dataset.name", "dataset schema (copa, e-care, ...)");
    mapped(app, "--data-path", "dataset.path", "dataset file (JSON Lines)");
    mapped(app, "--snapshot", "knowledge.snapshot_path", "knowledge snapshot TSV");
    mapped(app, "--kg-endpoint", "knowledge.endpoint", "ConceptNet-compatible base URL");
    mapped(app, "--provider", "provider.kind", "mock or http");
    mapped(app, "--model", "provider.model", "model name sent to the chat endpoint");
    mapped(app, "--endpoint", "provider.endpoint", "chat-completions URL");
    mapped(app, "--runs", "eval.runs", "repeated runs to average");
    mapped(app, "--seed", "eval.seed", "split seed");
    mapped(app, "--split-ratio", "eval.split_ratio", "train fraction");
    mapped(app, "--outdir", "eval.outdir", "output directory");
    mapped(app, "--flags", "pipeline.flags", "cki+cre, cki, cre, none, no-cki, no-cre");
    mapped(app, "--budget", "prompt.budget", "prompt token budget");
    mapped(app, "--label-style", "prompt.label_style", "hypothesis or letter");
    mapped(app, "--templates", "cre.templates_path", "counterfactual template TSV");
  }

  void mapped(CLI::App& app, const std::string& flag, std::string key, const std::string& help) {
    app.add_option_function<std::string>(
        flag, [this, key](const std::string& v) { flag_sets.push_back(key + "=" + v); }, help);
  }

  AppConfig resolve() const {
    AppConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& s : flag_sets) apply_assignment(cfg, s);
    for (const auto& s : sets) apply_assignment(cfg, s);
    return cfg;
  }
};

std::vector<CausalItem> load_items(const AppConfig& cfg) {
  if (cfg.dataset.path.empty()) throw ConfigError("dataset.path is not set (use --data-path)");
  return load_dataset(DatasetDescriptor{cfg.dataset.name, cfg.dataset.path});
}

int cmd_eval(const ConfigArgs& args, bool ablate, std::ostream& out) {
  const AppConfig cfg = args.resolve();
  if (args.print_config) {
    out << dump_config(cfg);
    return kExitOk;
  }
  const Runtime rt = make_runtime(cfg);
  const auto items = load_items(cfg);
  const EvalReport report =
      ablate ? evaluate_ablation(items, cfg.dataset.name, *rt.provider, rt.store.get(),
                                 rt.pipeline, cfg.eval.runs, cfg.eval.seed, rt.options)
             : evaluate(items, cfg.dataset.name, *rt.provider, rt.store.get(), rt.pipeline,
                        cfg.eval.runs, cfg.eval.seed, rt.options);
  write_report_files(report, cfg.eval.outdir);
  out << render_report(report, ReportFormat::Table);
  return kExitOk;
}

int cmd_inspect(const ConfigArgs& args, const std::string& item_id, std::ostream& out,
                std::ostream& err) {
  const AppConfig cfg = args.resolve();
  if (args.print_config) {
    out << dump_config(cfg);
    return kExitOk;
  }
  AppConfig offline = cfg;
  offline.provider = {};  // inspect never calls a model
  const Runtime rt = make_runtime(offline);
  const auto items = load_items(cfg);
  const auto it = std::find_if(items.begin(), items.end(),
                               [&](const CausalItem& i) { return i.id == item_id; });
  if (it == items.end()) {
    err << "care-ca: unknown item id: " << item_id << '\n';
    return kExitFailure;
  }
  const PreparedItem p = prepare_item(*it, rt.store.get(), rt.pipeline);

  out << "item: " << it->id << '\n';
  out << "flags: " << to_string(cfg.pipeline.flags) << "\n\n";
  out << "== knowledge ==\n";
  for (std::size_t i = 0; i < p.bundle.statements.size(); ++i) {
    out << p.bundle.statements[i];
    if (i < p.bundle.sources.size()) {
      const auto& e = p.bundle.sources[i];
      out << "  [" << e.start << ' ' << to_string(e.relation) << ' ' << e.end << ' '
          << format_double(e.weight) << ']';
    }
    out << '\n';
  }
  if (cfg.pipeline.flags.use_cre) {
    out << "\n== counterfactuals ==\n";
    for (std::size_t i = 0; i < p.bundle.counterfactuals.size(); ++i) {
      out << p.bundle.counterfactuals[i];
      if (i < p.bundle.counterfactual_templates.size()) {
        out << "  [" << p.bundle.counterfactual_templates[i] << ']';
      }
      out << '\n';
    }
  }
  out << "\n== prompt ==\n";
  out << "tokens: " << p.prompt.token_estimate << " / " << cfg.prompt.budget << '\n';
  if (p.prompt.dropped_statements || p.prompt.dropped_counterfactuals) {
    out << "dropped: " << p.prompt.dropped_statements << " statements, "
        << p.prompt.dropped_counterfactuals << " counterfactuals\n";
  }
  out << "[system]\n" << p.prompt.system_text << "\n[user]\n" << p.prompt.user_text << '\n';
  return kExitOk;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

int cmd_causalnet_validate(const std::string& path, std::ostream& out) {
  auto in = open_input(path);
  const auto results = causalnet::validate_stream(in);
  std::size_t bad = 0;
  for (const auto& r : results) {
    if (r.result.ok()) continue;
    ++bad;
    for (const auto& v : r.result.violations) out << "line " << r.line << ": " << v << '\n';
  }
  out << results.size() << " records, " << bad << " invalid\n";
  return bad == 0 ? kExitOk : kExitFailure;
}

struct FilterArgs {
  std::string path;
  std::size_t min_words = causalnet::FilterPolicy{}.min_context_words;
  bool keep_duplicates = false;
  bool require_both = false;
  std::string out_path;
};

int cmd_causalnet_filter(const FilterArgs& a, std::ostream& out, std::ostream& err) {
  causalnet::FilterPolicy policy;
  policy.min_context_words = a.min_words;
  policy.drop_duplicates = !a.keep_duplicates;
  policy.require_both_kinds = a.require_both;
  const auto result = causalnet::filter_corpus(causalnet::load_entries(a.path), policy);

  std::ofstream file;
  if (!a.out_path.empty()) {
    file.open(a.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot write " + a.out_path);
  }
  std::ostream& sink = a.out_path.empty() ? out : file;
  for (const auto& e : result.kept) sink << causalnet::to_json(e).dump() << '\n';

  std::map<std::string, std::size_t> reasons;
  for (const auto& r : result.rejected) ++reasons[r.reason];
  err << "kept " << result.kept.size() << " of " << result.kept.size() + result.rejected.size();
  for (const auto& [reason, n] : reasons) err << "; " << reason << ": " << n;
  err << '\n';
  return kExitOk;
}

int cmd_causalnet_stats(const std::string& path, std::ostream& out) {
  const auto s = causalnet::stats(causalnet::load_entries(path));
  std::ostringstream mean;
  mean << std::fixed << std::setprecision(2) << s.mean_choices;
  out << "entries: " << s.entry_count << '\n'
      << "questions: " << s.question_count << '\n'
      << "cause-effect questions: " << s.cause_effect_questions << '\n'
      << "counterfactual questions: " << s.counterfactual_questions << '\n'
      << "mean choices per question: " << mean.str() << '\n'
      << "duplicate contexts: " << s.duplicate_contexts << '\n';
  return kExitOk;
}

int cmd_report_render(const std::string& path, const std::string& format, std::ostream& out) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const EvalReport report = parse_report_csv(buf.str());
  out << render_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Table);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal reasoning evaluation with knowledge and counterfactual context",
               "care-ca"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "care-ca 0.1.0");

  ConfigArgs eval_args;
  bool ablate = false;
  auto* eval = app.add_subcommand("eval", "evaluate a dataset and write report files");
  eval_args.add_to(*eval);
  eval->add_flag("--ablate", ablate, "one row each for cki+cre, cki, cre and none");

  ConfigArgs inspect_args;
  std::string item_id;
  auto* inspect = app.add_subcommand("inspect", "show knowledge, counterfactuals and prompt for one item");
  inspect_args.add_to(*inspect);
  inspect->add_option("--item", item_id, "item id")->required();

  auto* cn = app.add_subcommand("causalnet", "CausalNet corpus tools");
  cn->require_subcommand(1);
  std::string cn_path;
  auto* cn_validate = cn->add_subcommand("validate", "check every record against the schema");
  cn_validate->add_option("file", cn_path)->required();
  FilterArgs filter_args;
  auto* cn_filter = cn->add_subcommand("filter", "drop short, duplicate or incomplete entries");
  cn_filter->add_option("file", filter_args.path)->required();
  cn_filter->add_option("--min-words", filter_args.min_words, "minimum context length");
  cn_filter->add_flag("--keep-duplicates", filter_args.keep_duplicates);
  cn_filter->add_flag("--require-both-kinds", filter_args.require_both);
  cn_filter->add_option("-o,--out", filter_args.out_path, "write kept entries here");
  auto* cn_stats = cn->add_subcommand("stats", "entry and question counts");
  cn_stats->add_option("file", cn_path)->required();
  auto* cn_prompt = cn->add_subcommand("emit-prompt", "print the generation prompt");

  auto* report = app.add_subcommand("report", "report utilities");
  report->require_subcommand(1);
  std::string report_path;
  std::string report_format = "table";
  auto* render = report->add_subcommand("render", "render a report.csv");
  render->add_option("file", report_path)->required();
  render->add_option("--format", report_format)->check(CLI::IsMember({"table", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, ablate, out);
    if (*inspect) return cmd_inspect(inspect_args, item_id, out, err);
    if (*cn_validate) return cmd_causalnet_validate(cn_path, out);
    if (*cn_filter) return cmd_causalnet_filter(filter_args, out, err);
    if (*cn_stats) return cmd_causalnet_stats(cn_path, out);
    if (*cn_prompt) {
      out << causalnet::emit_generation_prompt();
      return kExitOk;
    }
    if (*render) return cmd_report_render(report_path, report_format, out);
  } catch (const ArgumentError& e) {
    err << "care-ca: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "care-ca: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "care-ca: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace careca::cli
