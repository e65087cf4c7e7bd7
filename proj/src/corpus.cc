// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "namegauge/csv.h"
#include "namegauge/errors.h"
#include "namegauge/sectioned_text.h"

namespace namegauge::corpus {

namespace {

using json = nlohmann::json;

// Per-line facts gathered by one lexical pass over a cell.
struct LineInfo {
  std::string_view text;
  // The line starts inside a string, an open bracket, or after a backslash
  // continuation, so it is not the start of a statement.
  bool continuation = false;
  bool blank = false;         // whitespace only
  bool comment_only = false;  // first non-blank char is '#'
  std::size_t indent = 0;     // tabs advance to the next multiple of 8
};

struct ScanResult {
  std::vector<LineInfo> lines;
  bool open_string = false;
  bool open_bracket = false;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (true) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.size() > 1 && lines.back().empty()) lines.pop_back();
  return lines;
}

std::size_t measure_indent(std::string_view line) {
  std::size_t col = 0;
  for (char c : line) {
    if (c == ' ') {
      ++col;
    } else if (c == '\t') {
      col = (col / 8 + 1) * 8;
    } else if (c == '\f') {
      col = 0;
    } else {
      break;
    }
  }
  return col;
}

// Minimal Python lexical state: strings (single and triple quoted), comments,
// bracket depth and backslash continuations. Enough to keep `def` inside a
// docstring from being taken as a definition.
ScanResult scan_lines(std::string_view source) {
  ScanResult result;
  char quote = 0;       // active string delimiter, 0 when outside a string
  bool triple = false;
  int depth = 0;
  bool backslash_continues = false;

  for (std::string_view text : split_lines(source)) {
    LineInfo info;
    info.text = text;
    info.continuation = quote != 0 || depth > 0 || backslash_continues;
    const std::string_view body = trim_view(text);
    info.blank = body.empty();
    info.comment_only = !info.continuation && !body.empty() && body.front() == '#';
    info.indent = measure_indent(text);
    backslash_continues = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (quote != 0) {
        if (c == '\\') {
          ++i;
        } else if (c == quote) {
          if (!triple) {
            quote = 0;
          } else if (i + 2 < text.size() && text[i + 1] == quote && text[i + 2] == quote) {
            quote = 0;
            i += 2;
          }
        }
        continue;
      }
      if (c == '#') break;
      if (c == '"' || c == '\'') {
        quote = c;
        triple = i + 2 < text.size() && text[i + 1] == c && text[i + 2] == c;
        if (triple) i += 2;
      } else if (c == '(' || c == '[' || c == '{') {
        ++depth;
      } else if (c == ')' || c == ']' || c == '}') {
        depth = std::max(0, depth - 1);
      } else if (c == '\\' && i + 1 == text.size()) {
        backslash_continues = true;
      }
    }
    // A single-quoted string cannot span lines without a backslash; recover.
    if (quote != 0 && !triple && !(text.size() > 0 && text.back() == '\\')) quote = 0;
    result.lines.push_back(info);
  }
  result.open_string = quote != 0;
  result.open_bracket = depth > 0;
  return result;
}

bool is_identifier_start(char c) {
  return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}
bool is_identifier_char(char c) {
  return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

// Returns the defined name when `line` (a statement start) is a def.
std::optional<std::string> match_def(std::string_view line) {
  std::string_view s = trim_view(line);
  auto eat_keyword = [&s](std::string_view kw) {
    if (s.substr(0, kw.size()) != kw || s.size() == kw.size()) return false;
    if (!std::isspace(static_cast<unsigned char>(s[kw.size()]))) return false;
    s = trim_view(s.substr(kw.size()));
    return true;
  };
  eat_keyword("async");
  if (!eat_keyword("def")) return std::nullopt;
  if (s.empty() || !is_identifier_start(s.front())) return std::nullopt;
  std::size_t n = 1;
  while (n < s.size() && is_identifier_char(s[n])) ++n;
  std::string name(s.substr(0, n));
  const std::string_view rest = trim_view(s.substr(n));
  if (rest.empty() || (rest.front() != '(' && rest.front() != '[')) return std::nullopt;
  return name;
}

bool is_decorator(const LineInfo& line) {
  const std::string_view body = trim_view(line.text);
  return !line.continuation && !body.empty() && body.front() == '@';
}

std::string join_lines(const std::vector<LineInfo>& lines, std::size_t first, std::size_t last) {
  std::string out;
  for (std::size_t i = first; i <= last; ++i) {
    if (i > first) out += '\n';
    out += lines[i].text;
  }
  return out;
}

const std::string& string_field(const json& cell, const char* key) {
  const auto it = cell.find(key);
  if (it == cell.end() || !it->is_string()) {
    throw MalformedNotebook(std::string("cell field '") + key + "' missing or not a string");
  }
  return it->get_ref<const std::string&>();
}

std::string joined_source(const json& cell) {
  const auto it = cell.find("source");
  if (it == cell.end()) throw MalformedNotebook("cell has no 'source'");
  if (it->is_string()) return it->get<std::string>();
  if (!it->is_array()) throw MalformedNotebook("cell 'source' must be a string or an array");
  std::string out;
  for (const auto& piece : *it) {
    if (!piece.is_string()) throw MalformedNotebook("cell 'source' array holds a non-string");
    out += piece.get_ref<const std::string&>();
  }
  return out;
}

}  // namespace

std::string make_method_id(std::string_view notebook_path, std::size_t cell_index,
                           std::size_t start_line, std::string_view name) {
  std::ostringstream id;
  id << notebook_path << '#' << cell_index << ':' << start_line << ':' << name;
  return id.str();
}

NotebookDocument parse_notebook(std::string_view bytes, std::string path) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw MalformedNotebook("not a notebook document: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw MalformedNotebook("notebook root must be an object");
  const auto cells = doc.find("cells");
  if (cells == doc.end() || !cells->is_array()) {
    throw MalformedNotebook("notebook has no 'cells' array");
  }

  NotebookDocument out;
  out.path = std::move(path);
  for (const auto& cell : *cells) {
    if (!cell.is_object()) throw MalformedNotebook("cell must be an object");
    if (string_field(cell, "cell_type") != "code") continue;
    out.cells.push_back({out.cells.size(), joined_source(cell)});
  }
  return out;
}

NotebookDocument load_notebook(const std::filesystem::path& file, std::string stored_path) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw MalformedNotebook("cannot read " + file.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_notebook(bytes, std::move(stored_path));
}

std::vector<MethodRecord> extract_methods_from_cell(std::string_view notebook_path,
                                                    const CodeCell& cell,
                                                    std::vector<Diagnostic>* diagnostics) {
  std::vector<MethodRecord> records;
  const ScanResult scan = scan_lines(cell.source);
  if (scan.open_string || scan.open_bracket) {
    if (diagnostics) {
      diagnostics->push_back({std::string(notebook_path), cell.index,
                              scan.open_string ? "cell ends inside an unterminated string"
                                               : "cell ends inside an unclosed bracket"});
    }
    return records;
  }

  const auto& lines = scan.lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].continuation) continue;
    auto name = match_def(lines[i].text);
    if (!name) continue;
    const std::size_t def_indent = lines[i].indent;

    std::size_t first = i;
    while (first > 0) {
      // Walk back over the decorator block, continuation lines included.
      std::size_t k = first - 1;
      while (k > 0 && lines[k].continuation) --k;
      if (!is_decorator(lines[k]) || lines[k].indent != def_indent) break;
      first = k;
    }

    std::size_t last = i;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const LineInfo& line = lines[j];
      if (line.continuation) {
        last = j;
        continue;
      }
      if (line.blank || line.comment_only) continue;
      if (line.indent <= def_indent) break;
      last = j;
    }

    MethodRecord record;
    record.name = std::move(*name);
    record.notebook_path = std::string(notebook_path);
    record.cell_index = cell.index;
    record.start_line = i + 1;
    record.source = join_lines(lines, first, last);
    record.id = make_method_id(record.notebook_path, record.cell_index, record.start_line, record.name);
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<MethodRecord> extract_methods(const NotebookDocument& doc,
                                          std::vector<Diagnostic>* diagnostics) {
  std::vector<MethodRecord> records;
  for (const auto& cell : doc.cells) {
    auto found = extract_methods_from_cell(doc.path, cell, diagnostics);
    records.insert(records.end(), std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
  }
  return records;
}

std::size_t count_top_level_defs(std::string_view source) {
  const ScanResult scan = scan_lines(source);
  std::optional<std::size_t> min_indent;
  for (const auto& line : scan.lines) {
    if (line.continuation || line.blank || line.comment_only) continue;
    if (!min_indent || line.indent < *min_indent) min_indent = line.indent;
  }
  std::size_t count = 0;
  for (const auto& line : scan.lines) {
    if (!line.continuation && min_indent && line.indent == *min_indent && match_def(line.text)) {
      ++count;
    }
  }
  return count;
}

AnnotationImport import_annotations(std::istream& in) {
  const auto rows = csv::read(in);
  if (rows.empty()) throw CsvError("annotation table is empty");
  const auto& header = rows.front();
  if (header.size() != 2 || trim_view(header[0]) != "method_key" || trim_view(header[1]) != "pattern") {
    throw CsvError("annotation table header must be 'method_key,pattern'");
  }
  AnnotationImport result;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && trim_view(row[0]).empty()) continue;
    if (row.size() != 2) {
      result.rejected.push_back({r, "expected 2 fields, found " + std::to_string(row.size())});
      continue;
    }
    const std::string key(trim_view(row[0]));
    if (key.empty()) {
      result.rejected.push_back({r, "empty method_key"});
      continue;
    }
    try {
      result.records.push_back({key, lexeme::parse_pattern(row[1])});
    } catch (const BadPattern& e) {
      result.rejected.push_back({r, e.what()});
    }
  }
  return result;
}

AnnotationImport import_annotations(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CsvError("cannot read " + file.string());
  return import_annotations(in);
}

}  // namespace namegauge::corpus
