// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Notebook ingestion: parse .ipynb documents, recover every `def` block
// from their code cells, and import human grammar-pattern annotations.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/lexeme.h"

namespace namegauge::corpus {

struct CodeCell {
  std::size_t index = 0;  // ordinal among the notebook's code cells
  std::string source;
};

struct NotebookDocument {
  std::string path;
  std::vector<CodeCell> cells;
};

struct MethodRecord {
  std::string id;
  std::string name;
  // Decorators (if any), the def line, and the indented body.
  std::string source;
  std::string notebook_path;
  std::size_t cell_index = 0;
  std::size_t start_line = 0;  // 1-based line of the def within the cell

  friend bool operator==(const MethodRecord&, const MethodRecord&) = default;
};

std::string make_method_id(std::string_view notebook_path, std::size_t cell_index,
                           std::size_t start_line, std::string_view name);

struct Diagnostic {
  std::string notebook_path;
  std::size_t cell_index = 0;
  std::string message;
};

// Throws MalformedNotebook when `bytes` is not a notebook document.
NotebookDocument parse_notebook(std::string_view bytes, std::string path = {});

NotebookDocument load_notebook(const std::filesystem::path& file, std::string stored_path);

// One record per def statement, nested definitions included. Cells that end
// inside an open string or bracket are skipped and reported in
// `diagnostics` when it is non-null.
std::vector<MethodRecord> extract_methods(const NotebookDocument& doc,
                                          std::vector<Diagnostic>* diagnostics = nullptr);

// Block-scans a single cell's text; exposed for reuse and testing.
std::vector<MethodRecord> extract_methods_from_cell(std::string_view notebook_path,
                                                    const CodeCell& cell,
                                                    std::vector<Diagnostic>* diagnostics);

// Number of def lines at the minimum indentation of `source`; well-formed
// MethodRecord sources always yield 1.
std::size_t count_top_level_defs(std::string_view source);

struct AnnotationRecord {
  std::string method_key;
  lexeme::GrammarPattern pattern;
};

struct RejectedRow {
  std::size_t row = 0;  // 1-based data row, header excluded
  std::string message;
};

struct AnnotationImport {
  std::vector<AnnotationRecord> records;
  std::vector<RejectedRow> rejected;
};

// Reads the `method_key,pattern` CSV. Rows with bad patterns are collected in
// `rejected` and the import continues. Throws CsvError for an unreadable
// table or a wrong header.
AnnotationImport import_annotations(std::istream& in);
AnnotationImport import_annotations(const std::filesystem::path& file);

}  // namespace namegauge::corpus
