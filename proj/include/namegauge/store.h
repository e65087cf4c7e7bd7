// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Single-file SQLite persistence for a study: methods, annotations, runs,
// prompts and rater outputs.
//
// Tables (column names are part of the external interface):
//   methods(id, name, source, notebook_path, cell_index, start_line)
//   annotations(method_id, pattern)
//   runs(run_id, timestamp, template_version, config_json, corpus_hash)
//   rater_outputs(run_id, method_id, rater_name, status, current_name,
//                 current_pattern, corrected_name, corrected_pattern,
//                 raw_response)
//   prompts(run_id, method_id, prompt)
//   meta(key, value)  -- holds schema_version
//
// A Store is used from one thread at a time.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/corpus.h"
#include "namegauge/metrics.h"
#include "namegauge/raters.h"

struct sqlite3;

namespace namegauge::store {

inline constexpr int kSchemaVersion = 1;

struct RunRecord {
  std::string run_id;
  std::string timestamp;
  std::string template_version;
  std::string config_json;
  std::string corpus_hash;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct AnnotationRow {
  std::string method_id;
  lexeme::GrammarPattern pattern;
};

struct PairQuery {
  std::vector<metrics::LabeledPair> pairs;  // label_a human, label_b rater
  std::size_t missing = 0;                  // subset members lacking a side
};

class Store {
 public:
  // Opens or creates the database and ensures the schema. Throws
  // IncompatibleSchema when the file holds a different schema version or is
  // not a namegauge database, StoreError for other failures.
  static Store open(const std::filesystem::path& path);

  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  ~Store();

  int schema_version() const;

  // Upserts keyed on the natural id; recording identical content again
  // changes nothing. Foreign keys are enforced (ForeignKeyViolation).
  std::string record(const corpus::MethodRecord& method);
  std::string record(const AnnotationRow& annotation);
  std::string record(const RunRecord& run);
  std::string record(std::string_view run_id, const raters::RaterOutput& output);
  void record_prompt(std::string_view run_id, const raters::PromptBundle& prompt);

  std::vector<corpus::MethodRecord> methods() const;
  std::optional<corpus::MethodRecord> method(std::string_view id) const;
  std::vector<std::string> method_ids_named(std::string_view name) const;
  std::vector<AnnotationRow> annotations() const;
  std::optional<RunRecord> run(std::string_view run_id) const;
  std::vector<RunRecord> runs() const;
  // Next unused id of the form "run-0001".
  std::string next_run_id() const;
  // Rater name -> outputs ordered by method id.
  std::map<std::string, std::vector<raters::RaterOutput>> outputs(std::string_view run_id) const;
  std::optional<std::string> prompt(std::string_view run_id, std::string_view method_id) const;

  // Human annotation vs the rater's current pattern for each subset member
  // that has both, ordered by method id.
  PairQuery query_pairs(std::string_view run_id, std::string_view rater_name,
                        const std::set<std::string>& subset) const;

  // SHA-256 over (id, source) of every method in id order.
  std::string corpus_hash() const;

  // All-or-nothing batch of writes; rolls back unless commit() was called.
  class Transaction {
   public:
    explicit Transaction(Store& store);
    Transaction(const Transaction&) = delete;
    Transaction& operator=(const Transaction&) = delete;
    ~Transaction();
    void commit();

   private:
    Store* store_;
    bool done_ = false;
  };

 private:
  explicit Store(sqlite3* db);
  void exec(const char* sql) const;
  void ensure_schema();

  sqlite3* db_ = nullptr;
};

}  // namespace namegauge::store
