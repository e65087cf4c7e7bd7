// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/store.h"

#include <sqlite3.h>

#include <cstdio>
#include <utility>

#include <openssl/evp.h>

#include "namegauge/errors.h"

namespace namegauge::store {

namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE meta (
  key TEXT PRIMARY KEY,
  value TEXT NOT NULL
);
CREATE TABLE methods (
  id TEXT PRIMARY KEY,
  name TEXT NOT NULL,
  source TEXT NOT NULL,
  notebook_path TEXT NOT NULL,
  cell_index INTEGER NOT NULL,
  start_line INTEGER NOT NULL
);
CREATE TABLE annotations (
  method_id TEXT PRIMARY KEY REFERENCES methods(id),
  pattern TEXT NOT NULL
);
CREATE TABLE runs (
  run_id TEXT PRIMARY KEY,
  timestamp TEXT NOT NULL,
  template_version TEXT NOT NULL,
  config_json TEXT NOT NULL,
  corpus_hash TEXT NOT NULL
);
CREATE TABLE rater_outputs (
  run_id TEXT NOT NULL REFERENCES runs(run_id),
  method_id TEXT NOT NULL REFERENCES methods(id),
  rater_name TEXT NOT NULL,
  status TEXT NOT NULL,
  current_name TEXT NOT NULL,
  current_pattern TEXT,
  corrected_name TEXT,
  corrected_pattern TEXT,
  raw_response TEXT NOT NULL,
  PRIMARY KEY (run_id, method_id, rater_name)
);
CREATE TABLE prompts (
  run_id TEXT NOT NULL REFERENCES runs(run_id),
  method_id TEXT NOT NULL REFERENCES methods(id),
  prompt TEXT NOT NULL,
  PRIMARY KEY (run_id, method_id)
);
)sql";

[[noreturn]] void fail(sqlite3* db, const std::string& what) {
  const int code = sqlite3_extended_errcode(db);
  const std::string message = what + ": " + sqlite3_errmsg(db);
  if (code == SQLITE_CONSTRAINT_FOREIGNKEY) throw ForeignKeyViolation(message);
  if (code == SQLITE_NOTADB) throw IncompatibleSchema(message);
  throw StoreError(message);
}

// Prepared statement with positional binding helpers.
class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) fail(db, "prepare");
  }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;
  ~Statement() { sqlite3_finalize(stmt_); }

  Statement& bind(int index, std::string_view text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Statement& bind_nullable(int index, const std::optional<std::string>& text) {
    if (text) return bind(index, std::string_view(*text));
    sqlite3_bind_null(stmt_, index);
    return *this;
  }
  Statement& bind(int index, std::int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
    return *this;
  }

  // True while a row is available.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail(db_, "step");
  }
  void run() {
    while (step()) {
    }
  }

  std::string text(int col) const {
    const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : std::string();
  }
  std::optional<std::string> optional_text(int col) const {
    if (sqlite3_column_type(stmt_, col) == SQLITE_NULL) return std::nullopt;
    return text(col);
  }
  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::optional<std::string> pattern_text(const std::optional<lexeme::GrammarPattern>& p) {
  if (!p) return std::nullopt;
  return p->to_string();
}

std::optional<lexeme::GrammarPattern> pattern_value(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return lexeme::parse_pattern(*text);
}

corpus::MethodRecord read_method(const Statement& s) {
  corpus::MethodRecord m;
  m.id = s.text(0);
  m.name = s.text(1);
  m.source = s.text(2);
  m.notebook_path = s.text(3);
  m.cell_index = static_cast<std::size_t>(s.integer(4));
  m.start_line = static_cast<std::size_t>(s.integer(5));
  return m;
}

RunRecord read_run(const Statement& s) {
  return {s.text(0), s.text(1), s.text(2), s.text(3), s.text(4)};
}

constexpr const char* kMethodColumns =
    "SELECT id, name, source, notebook_path, cell_index, start_line FROM methods";
constexpr const char* kRunColumns =
    "SELECT run_id, timestamp, template_version, config_json, corpus_hash FROM runs";

}  // namespace

Store::Store(sqlite3* db) : db_(db) {}

Store::Store(Store&& other) noexcept : db_(std::exchange(other.db_, nullptr)) {}

Store& Store::operator=(Store&& other) noexcept {
  if (this != &other) {
    if (db_) sqlite3_close(db_);
    db_ = std::exchange(other.db_, nullptr);
  }
  return *this;
}

Store::~Store() {
  if (db_) sqlite3_close(db_);
}

Store Store::open(const std::filesystem::path& path) {
  sqlite3* db = nullptr;
  const int rc = sqlite3_open_v2(path.string().c_str(), &db,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE, nullptr);
  Store store(db);
  if (rc != SQLITE_OK) fail(db, "open " + path.string());
  store.exec("PRAGMA foreign_keys = ON");
  store.ensure_schema();
  return store;
}

void Store::exec(const char* sql) const {
  char* error = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &error) != SQLITE_OK) {
    const std::string message = error ? error : "unknown error";
    sqlite3_free(error);
    fail(db_, message);
  }
}

void Store::ensure_schema() {
  Statement tables(db_, "SELECT name FROM sqlite_master WHERE type = 'table'");
  std::set<std::string> existing;
  while (tables.step()) existing.insert(tables.text(0));

  if (existing.empty()) {
    Transaction tx(*this);
    exec(kSchema);
    Statement(db_, "INSERT INTO meta (key, value) VALUES ('schema_version', ?)")
        .bind(1, std::to_string(kSchemaVersion))
        .run();
    tx.commit();
    return;
  }
  if (!existing.count("meta")) {
    throw IncompatibleSchema("database has tables but no namegauge schema version");
  }
  const int version = schema_version();
  if (version != kSchemaVersion) {
    throw IncompatibleSchema("database schema version " + std::to_string(version) +
                             " does not match supported version " + std::to_string(kSchemaVersion));
  }
}

int Store::schema_version() const {
  Statement s(db_, "SELECT value FROM meta WHERE key = 'schema_version'");
  if (!s.step()) return 0;
  try {
    return std::stoi(s.text(0));
  } catch (const std::logic_error&) {
    return 0;
  }
}

std::string Store::record(const corpus::MethodRecord& m) {
  Statement(db_,
            "INSERT INTO methods (id, name, source, notebook_path, cell_index, start_line) "
            "VALUES (?, ?, ?, ?, ?, ?) ON CONFLICT (id) DO UPDATE SET name = excluded.name, "
            "source = excluded.source, notebook_path = excluded.notebook_path, "
            "cell_index = excluded.cell_index, start_line = excluded.start_line")
      .bind(1, m.id)
      .bind(2, m.name)
      .bind(3, m.source)
      .bind(4, m.notebook_path)
      .bind(5, static_cast<std::int64_t>(m.cell_index))
      .bind(6, static_cast<std::int64_t>(m.start_line))
      .run();
  return m.id;
}

std::string Store::record(const AnnotationRow& a) {
  Statement(db_,
            "INSERT INTO annotations (method_id, pattern) VALUES (?, ?) "
            "ON CONFLICT (method_id) DO UPDATE SET pattern = excluded.pattern")
      .bind(1, a.method_id)
      .bind(2, a.pattern.to_string())
      .run();
  return a.method_id;
}

std::string Store::record(const RunRecord& r) {
  Statement(db_,
            "INSERT INTO runs (run_id, timestamp, template_version, config_json, corpus_hash) "
            "VALUES (?, ?, ?, ?, ?) ON CONFLICT (run_id) DO UPDATE SET "
            "timestamp = excluded.timestamp, template_version = excluded.template_version, "
            "config_json = excluded.config_json, corpus_hash = excluded.corpus_hash")
      .bind(1, r.run_id)
      .bind(2, r.timestamp)
      .bind(3, r.template_version)
      .bind(4, r.config_json)
      .bind(5, r.corpus_hash)
      .run();
  return r.run_id;
}

std::string Store::record(std::string_view run_id, const raters::RaterOutput& o) {
  Statement(db_,
            "INSERT INTO rater_outputs (run_id, method_id, rater_name, status, current_name, "
            "current_pattern, corrected_name, corrected_pattern, raw_response) "
            "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?) "
            "ON CONFLICT (run_id, method_id, rater_name) DO UPDATE SET status = excluded.status, "
            "current_name = excluded.current_name, current_pattern = excluded.current_pattern, "
            "corrected_name = excluded.corrected_name, "
            "corrected_pattern = excluded.corrected_pattern, raw_response = excluded.raw_response")
      .bind(1, run_id)
      .bind(2, o.method_id)
      .bind(3, o.rater_name)
      .bind(4, raters::status_name(o.status))
      .bind(5, o.current_name)
      .bind_nullable(6, pattern_text(o.current_pattern))
      .bind_nullable(7, o.corrected_name)
      .bind_nullable(8, pattern_text(o.corrected_pattern))
      .bind(9, o.raw_response)
      .run();
  return std::string(run_id) + "/" + o.method_id + "/" + o.rater_name;
}

void Store::record_prompt(std::string_view run_id, const raters::PromptBundle& prompt) {
  Statement(db_,
            "INSERT INTO prompts (run_id, method_id, prompt) VALUES (?, ?, ?) "
            "ON CONFLICT (run_id, method_id) DO UPDATE SET prompt = excluded.prompt")
      .bind(1, run_id)
      .bind(2, prompt.method_id)
      .bind(3, prompt.text)
      .run();
}

std::vector<corpus::MethodRecord> Store::methods() const {
  Statement s(db_, (std::string(kMethodColumns) + " ORDER BY id").c_str());
  std::vector<corpus::MethodRecord> out;
  while (s.step()) out.push_back(read_method(s));
  return out;
}

std::optional<corpus::MethodRecord> Store::method(std::string_view id) const {
  Statement s(db_, (std::string(kMethodColumns) + " WHERE id = ?").c_str());
  s.bind(1, id);
  if (!s.step()) return std::nullopt;
  return read_method(s);
}

std::vector<std::string> Store::method_ids_named(std::string_view name) const {
  Statement s(db_, "SELECT id FROM methods WHERE name = ? ORDER BY id");
  s.bind(1, name);
  std::vector<std::string> out;
  while (s.step()) out.push_back(s.text(0));
  return out;
}

std::vector<AnnotationRow> Store::annotations() const {
  Statement s(db_, "SELECT method_id, pattern FROM annotations ORDER BY method_id");
  std::vector<AnnotationRow> out;
  while (s.step()) out.push_back({s.text(0), lexeme::parse_pattern(s.text(1))});
  return out;
}

std::optional<RunRecord> Store::run(std::string_view run_id) const {
  Statement s(db_, (std::string(kRunColumns) + " WHERE run_id = ?").c_str());
  s.bind(1, run_id);
  if (!s.step()) return std::nullopt;
  return read_run(s);
}

std::vector<RunRecord> Store::runs() const {
  Statement s(db_, (std::string(kRunColumns) + " ORDER BY run_id").c_str());
  std::vector<RunRecord> out;
  while (s.step()) out.push_back(read_run(s));
  return out;
}

std::string Store::next_run_id() const {
  for (std::size_t n = runs().size() + 1;; ++n) {
    char id[32];
    std::snprintf(id, sizeof id, "run-%04zu", n);
    if (!run(id)) return id;
  }
}

std::map<std::string, std::vector<raters::RaterOutput>> Store::outputs(std::string_view run_id) const {
  Statement s(db_,
              "SELECT method_id, rater_name, status, current_name, current_pattern, corrected_name, "
              "corrected_pattern, raw_response FROM rater_outputs WHERE run_id = ? "
              "ORDER BY rater_name, method_id");
  s.bind(1, run_id);
  std::map<std::string, std::vector<raters::RaterOutput>> out;
  while (s.step()) {
    raters::RaterOutput o;
    o.method_id = s.text(0);
    o.rater_name = s.text(1);
    const auto status = raters::parse_status(s.text(2));
    if (!status) throw StoreError("unknown status '" + s.text(2) + "' in rater_outputs");
    o.status = *status;
    o.current_name = s.text(3);
    o.current_pattern = pattern_value(s.optional_text(4));
    o.corrected_name = s.optional_text(5);
    o.corrected_pattern = pattern_value(s.optional_text(6));
    o.raw_response = s.text(7);
    out[o.rater_name].push_back(std::move(o));
  }
  return out;
}

std::optional<std::string> Store::prompt(std::string_view run_id, std::string_view method_id) const {
  Statement s(db_, "SELECT prompt FROM prompts WHERE run_id = ? AND method_id = ?");
  s.bind(1, run_id).bind(2, method_id);
  if (!s.step()) return std::nullopt;
  return s.text(0);
}

PairQuery Store::query_pairs(std::string_view run_id, std::string_view rater_name,
                             const std::set<std::string>& subset) const {
  PairQuery result;
  for (const auto& id : subset) {
    Statement q(db_,
                "SELECT a.pattern, o.current_pattern FROM annotations a "
                "JOIN rater_outputs o ON o.method_id = a.method_id "
                "WHERE o.run_id = ? AND o.rater_name = ? AND a.method_id = ? "
                "AND o.current_pattern IS NOT NULL");
    q.bind(1, run_id).bind(2, rater_name).bind(3, id);
    if (q.step()) {
      result.pairs.push_back({id, q.text(0), q.text(1)});
    } else {
      ++result.missing;
    }
  }
  return result;
}

std::string Store::corpus_hash() const {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  for (const auto& m : methods()) {
    EVP_DigestUpdate(ctx.get(), m.id.data(), m.id.size());
    EVP_DigestUpdate(ctx.get(), "\0", 1);
    EVP_DigestUpdate(ctx.get(), m.source.data(), m.source.size());
    EVP_DigestUpdate(ctx.get(), "\0", 1);
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Store::Transaction::Transaction(Store& store) : store_(&store) { store_->exec("BEGIN"); }

Store::Transaction::~Transaction() {
  if (!done_) {
    char* error = nullptr;
    sqlite3_exec(store_->db_, "ROLLBACK", nullptr, nullptr, &error);
    sqlite3_free(error);
  }
}

void Store::Transaction::commit() {
  store_->exec("COMMIT");
  done_ = true;
}

}  // namespace namegauge::store
