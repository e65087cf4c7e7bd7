// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// The namegauge command line. Commands write results to `out`, problems to
// `err`, and return the process exit code.
//
//   namegauge ingest PATH... --db FILE
//   namegauge annotations import FILE --db FILE [--key auto|id|name]
//   namegauge rate --db FILE [--config FILE] [--mode live|replay]
//                  [--rule-rater] [--save-fixtures DIR]
//   namegauge report --db FILE [--run ID|latest] --out DIR [--top-k N]
//                    [--lexicon FILE]
//   namegauge lint [NAME... | --db FILE] [--lexicon FILE]
//   namegauge methods --db FILE

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "namegauge/raters.h"

namespace namegauge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class KeyMode { Auto, Id, Name };

struct IngestOptions {
  std::vector<std::filesystem::path> paths;
  std::filesystem::path db;
};

struct AnnotationOptions {
  std::filesystem::path file;
  std::filesystem::path db;
  KeyMode key = KeyMode::Auto;
};

struct RateOptions {
  std::filesystem::path db;
  std::filesystem::path config;  // optional when rule_rater is set
  std::optional<raters::Mode> mode;
  bool rule_rater = false;
  std::filesystem::path save_fixtures;
};

struct ReportOptions {
  std::filesystem::path db;
  std::string run = "latest";
  std::filesystem::path out;
  std::size_t top_k = 3;
  std::filesystem::path lexicon;
};

struct LintOptions {
  std::vector<std::string> names;
  std::filesystem::path db;
  std::filesystem::path lexicon;
};

int cmd_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err);
int cmd_import_annotations(const AnnotationOptions& opts, std::ostream& out, std::ostream& err);
int cmd_rate(const RateOptions& opts, std::ostream& out, std::ostream& err,
             const raters::TransportFactory& transport = raters::make_http_transport);
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);
// Names come from opts.names, else the database, else one per line of `in`.
int cmd_lint(const LintOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_methods(const std::filesystem::path& db, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace namegauge::cli
