// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "namegauge/corpus.h"
#include "namegauge/errors.h"
#include "namegauge/report.h"
#include "namegauge/sectioned_text.h"
#include "namegauge/store.h"
#include "namegauge/tagger.h"

namespace namegauge::cli {

namespace {

using json = nlohmann::json;

std::vector<std::pair<std::filesystem::path, std::string>> notebook_inputs(
    const std::filesystem::path& path) {
  std::vector<std::pair<std::filesystem::path, std::string>> inputs;
  if (!std::filesystem::is_directory(path)) {
    inputs.emplace_back(path, path.generic_string());
    return inputs;
  }
  for (const auto& entry : std::filesystem::recursive_directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ipynb") {
      inputs.emplace_back(entry.path(), entry.path().lexically_relative(path).generic_string());
    }
  }
  std::sort(inputs.begin(), inputs.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return inputs;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_snapshot(const std::vector<raters::RaterConfig>& configs) {
  json list = json::array();
  for (const auto& c : configs) {
    json entry = {
        {"rater_name", c.rater_name},
        {"backend", c.backend == raters::Backend::Rule ? "rule" : "chat"},
        {"mode", raters::mode_name(c.mode)},
    };
    if (c.backend == raters::Backend::Chat) {
      entry["endpoint"] = c.endpoint;
      entry["model_id"] = c.model_id;
      entry["temperature"] = c.temperature;
      entry["max_retries"] = c.max_retries;
      entry["timeout_ms"] = c.timeout.count();
      entry["backoff_ms"] = c.initial_backoff.count();
      entry["concurrency"] = c.concurrency;
    }
    list.push_back(std::move(entry));
  }
  return {
      {"raters", list},
      {"extraction", {{"nested_defs", true}, {"lambdas", false}}},
  };
}

const tagger::Lexicon& choose_lexicon(const std::filesystem::path& file,
                                      std::optional<tagger::Lexicon>& storage) {
  if (file.empty()) return tagger::Lexicon::default_lexicon();
  storage = tagger::Lexicon::load(file);
  return *storage;
}

void lint_one(const std::string& name, const tagger::Lexicon& lex, std::ostream& out,
              std::size_t& findings) {
  const auto split = lexeme::split_identifier(name);
  const auto pattern = tagger::rule_tag(split, lex);
  for (const auto& f : tagger::lint_name(split, pattern, lex)) {
    ++findings;
    out << name << ": " << tagger::lint_code_name(f.code);
    if (f.term_index) out << " [term " << *f.term_index << "]";
    out << ": " << f.message << "\n";
  }
}

}  // namespace

int cmd_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err) {
  auto db = store::Store::open(opts.db);
  std::size_t notebooks = 0, methods = 0, failures = 0, inputs = 0;
  store::Store::Transaction tx(db);
  for (const auto& path : opts.paths) {
    if (!std::filesystem::exists(path)) {
      ++inputs;
      ++failures;
      err << "namegauge: " << path.generic_string() << ": no such file or directory\n";
      continue;
    }
    for (const auto& [file, stored] : notebook_inputs(path)) {
      ++inputs;
      try {
        const auto doc = corpus::load_notebook(file, stored);
        std::vector<corpus::Diagnostic> diagnostics;
        const auto records = corpus::extract_methods(doc, &diagnostics);
        for (const auto& d : diagnostics) {
          err << "namegauge: " << d.notebook_path << " cell " << d.cell_index << ": " << d.message
              << "\n";
        }
        for (const auto& m : records) db.record(m);
        ++notebooks;
        methods += records.size();
      } catch (const MalformedNotebook& e) {
        ++failures;
        err << "namegauge: skipped " << stored << ": " << e.what() << "\n";
      }
    }
  }
  tx.commit();
  out << "ingested " << notebooks << " notebooks, " << methods << " methods, " << failures
      << " failures\n";
  return inputs > 0 && failures == inputs ? kExitFailure : kExitOk;
}

int cmd_import_annotations(const AnnotationOptions& opts, std::ostream& out, std::ostream& err) {
  auto db = store::Store::open(opts.db);
  const auto imported = corpus::import_annotations(opts.file);
  std::size_t rejected = imported.rejected.size();
  for (const auto& r : imported.rejected) {
    err << "namegauge: row " << r.row << ": " << r.message << "\n";
  }
  std::set<std::string> annotated;
  store::Store::Transaction tx(db);
  for (const auto& a : imported.records) {
    std::vector<std::string> ids;
    if (opts.key != KeyMode::Name && db.method(a.method_key)) ids.push_back(a.method_key);
    if (ids.empty() && opts.key != KeyMode::Id) ids = db.method_ids_named(a.method_key);
    if (ids.empty()) {
      ++rejected;
      err << "namegauge: no method matches key '" << a.method_key << "'\n";
      continue;
    }
    for (const auto& id : ids) {
      db.record(store::AnnotationRow{id, a.pattern});
      annotated.insert(id);
    }
  }
  tx.commit();
  out << "imported " << imported.records.size() + imported.rejected.size() - rejected
      << " annotations covering " << annotated.size() << " methods, " << rejected << " rejected\n";
  return kExitOk;
}

int cmd_rate(const RateOptions& opts, std::ostream& out, std::ostream& err,
             const raters::TransportFactory& transport) {
  auto db = store::Store::open(opts.db);
  const auto methods = db.methods();
  if (methods.empty()) {
    err << "namegauge: no methods in " << opts.db.generic_string() << "; run ingest first\n";
    return kExitFailure;
  }

  std::vector<raters::RaterConfig> configs;
  if (!opts.config.empty()) configs = raters::load_rater_configs(opts.config);
  if (opts.rule_rater) {
    if (std::any_of(configs.begin(), configs.end(), [](const auto& c) { return c.rater_name == "rule"; })) {
      throw ConfigError("rater 'rule' is already configured");
    }
    raters::RaterConfig rule;
    rule.rater_name = "rule";
    rule.backend = raters::Backend::Rule;
    configs.push_back(rule);
  }
  if (configs.empty()) throw ConfigError("no raters: pass --config or --rule-rater");
  for (auto& c : configs) {
    if (opts.mode) c.mode = *opts.mode;
    if (!opts.save_fixtures.empty() && c.backend == raters::Backend::Chat && c.mode == raters::Mode::Live) {
      c.record_dir = opts.save_fixtures / c.rater_name;
      std::filesystem::create_directories(c.record_dir);
    }
    raters::validate_config(c);
  }

  std::map<std::string, std::vector<raters::RaterOutput>> results;
  for (const auto& c : configs) results[c.rater_name] = raters::run_rater(c, methods, transport);

  store::RunRecord run{db.next_run_id(), utc_timestamp(), std::string(raters::kTemplateVersion),
                       config_snapshot(configs).dump(), db.corpus_hash()};
  store::Store::Transaction tx(db);
  db.record(run);
  for (const auto& m : methods) db.record_prompt(run.run_id, raters::build_prompt(m));
  for (const auto& [name, outputs] : results) {
    for (const auto& o : outputs) db.record(run.run_id, o);
  }
  tx.commit();

  for (const auto& c : configs) {
    std::map<raters::Status, std::size_t> tally;
    for (const auto& o : results[c.rater_name]) ++tally[o.status];
    out << c.rater_name << ": valid=" << tally[raters::Status::Valid]
        << " malformed=" << tally[raters::Status::Malformed]
        << " hallucinated=" << tally[raters::Status::Hallucinated]
        << " missing=" << tally[raters::Status::Missing] << "\n";
  }
  out << "common valid subset: " << raters::common_valid_subset(results).size() << " of "
      << methods.size() << " methods\n";
  out << "run " << run.run_id << "\n";
  return kExitOk;
}

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  const auto db = store::Store::open(opts.db);
  std::string run_id = opts.run;
  if (run_id == "latest") {
    const auto runs = db.runs();
    if (runs.empty()) {
      err << "namegauge: no runs in " << opts.db.generic_string() << "\n";
      return kExitFailure;
    }
    run_id = runs.back().run_id;
  }
  std::optional<tagger::Lexicon> storage;
  const auto& lex = choose_lexicon(opts.lexicon, storage);
  const auto report = report::build_report(db, run_id, lex, {opts.top_k});
  for (const auto& path : report::write_report(report, opts.out)) {
    out << "wrote " << path.generic_string() << "\n";
  }
  for (const auto& d : report.diagnostics) err << "namegauge: " << d << "\n";
  if (report.missing_annotations) {
    err << "namegauge: " << MissingAnnotations("agreement tables need imported annotations").what()
        << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_lint(const LintOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  std::optional<tagger::Lexicon> storage;
  const auto& lex = choose_lexicon(opts.lexicon, storage);
  std::vector<std::string> names = opts.names;
  if (names.empty() && !opts.db.empty()) {
    std::set<std::string> seen;
    for (const auto& m : store::Store::open(opts.db).methods()) {
      if (seen.insert(m.name).second) names.push_back(m.name);
    }
  } else if (names.empty()) {
    for (std::string line; std::getline(in, line);) {
      const auto name = trim_view(line);
      if (!name.empty()) names.emplace_back(name);
    }
  }
  std::size_t findings = 0;
  bool bad_input = false;
  for (const auto& name : names) {
    try {
      lint_one(name, lex, out, findings);
    } catch (const Error& e) {
      bad_input = true;
      err << "namegauge: " << name << ": " << e.what() << "\n";
    }
  }
  if (bad_input) return kExitUsage;
  return findings > 0 ? kExitFailure : kExitOk;
}

int cmd_methods(const std::filesystem::path& db_path, std::ostream& out, std::ostream&) {
  for (const auto& m : store::Store::open(db_path).methods()) {
    out << m.id << "\t" << raters::fixture_file_name(m.id) << "\n";
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Method-name grammar and rename-quality analysis for notebooks", "namegauge"};
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Extract methods from notebooks into the database");
  ingest_cmd->add_option("paths", ingest.paths, "Notebook files or directories")->required();
  ingest_cmd->add_option("--db", ingest.db, "Database file")->required();

  AnnotationOptions annotations;
  std::string key_mode = "auto";
  auto* annotations_cmd = app.add_subcommand("annotations", "Human annotation management");
  annotations_cmd->require_subcommand(1);
  auto* import_cmd = annotations_cmd->add_subcommand("import", "Import a method_key,pattern CSV");
  import_cmd->add_option("file", annotations.file, "Annotation CSV")->required();
  import_cmd->add_option("--db", annotations.db, "Database file")->required();
  import_cmd->add_option("--key", key_mode, "Match keys by method id, name, or auto")
      ->check(CLI::IsMember({"auto", "id", "name"}));

  RateOptions rate;
  std::string mode;
  auto* rate_cmd = app.add_subcommand("rate", "Collect rater outputs for every method");
  rate_cmd->add_option("--db", rate.db, "Database file")->required();
  rate_cmd->add_option("--config", rate.config, "Rater configuration file");
  rate_cmd->add_option("--mode", mode, "Override every rater's mode")
      ->check(CLI::IsMember({"live", "replay"}));
  rate_cmd->add_flag("--rule-rater", rate.rule_rater, "Add the built-in rule tagger as rater 'rule'");
  rate_cmd->add_option("--save-fixtures", rate.save_fixtures,
                       "Live mode: store replies under DIR/<rater> for later replay");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Write the report tables for a run");
  report_cmd->add_option("--db", report.db, "Database file")->required();
  report_cmd->add_option("--run", report.run, "Run id or 'latest'");
  report_cmd->add_option("--out", report.out, "Output directory")->required();
  report_cmd->add_option("--top-k", report.top_k, "Entries per ranked table")->check(CLI::PositiveNumber);
  report_cmd->add_option("--lexicon", report.lexicon, "Lexicon file")->check(CLI::ExistingFile);

  LintOptions lint;
  auto* lint_cmd = app.add_subcommand("lint", "Check method names against naming conventions");
  lint_cmd->add_option("names", lint.names, "Names to check (default: stdin)");
  lint_cmd->add_option("--db", lint.db, "Lint every method name in the database");
  lint_cmd->add_option("--lexicon", lint.lexicon, "Lexicon file")->check(CLI::ExistingFile);

  std::filesystem::path methods_db;
  auto* methods_cmd = app.add_subcommand("methods", "List method ids and replay fixture names");
  methods_cmd->add_option("--db", methods_db, "Database file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest, out, err);
    if (*import_cmd) {
      annotations.key = key_mode == "id" ? KeyMode::Id : key_mode == "name" ? KeyMode::Name : KeyMode::Auto;
      return cmd_import_annotations(annotations, out, err);
    }
    if (*rate_cmd) {
      if (!mode.empty()) rate.mode = raters::parse_mode(mode);
      return cmd_rate(rate, out, err);
    }
    if (*report_cmd) return cmd_report(report, out, err);
    if (*lint_cmd) return cmd_lint(lint, in, out, err);
    if (*methods_cmd) return cmd_methods(methods_db, out, err);
  } catch (const ConfigError& e) {
    err << "namegauge: configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "namegauge: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace namegauge::cli
