// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Report tables for one run, restricted to the common valid subset.

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/store.h"
#include "namegauge/tagger.h"

namespace namegauge::report {

struct Table {
  std::string file_name;  // e.g. "table1_agreement.csv"
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ReportOptions {
  std::size_t top_k = 3;
};

struct Report {
  std::vector<Table> tables;
  std::string fleiss_text;
  std::size_t subset_size = 0;
  std::vector<std::string> rater_names;  // sorted
  bool missing_annotations = false;
  std::vector<std::string> diagnostics;
};

// "65.3%" style rendering of a fraction.
std::string percent(double fraction, int decimals);
// "+55.62%" style rendering of a growth already in percent.
std::string signed_percent(double pct, int decimals);
std::string fixed(double value, int decimals);

// Computes every table. Throws StoreError when the run does not exist or
// has no outputs. Missing annotations leave the agreement tables empty and
// set missing_annotations.
Report build_report(const store::Store& db, std::string_view run_id, const tagger::Lexicon& lex,
                    const ReportOptions& options = {});

std::string render_markdown(const Report& report);

// Writes every table as CSV plus fleiss.txt and report.md into out_dir
// (created when absent). Returns the written paths.
std::vector<std::filesystem::path> write_report(const Report& report,
                                                const std::filesystem::path& out_dir);

}  // namespace namegauge::report
