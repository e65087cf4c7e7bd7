// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "study_fixture.h"

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "namegauge/lexeme.h"
#include "namegauge/raters.h"

namespace study_fixture {

namespace {

using namegauge::lexeme::parse_pattern;

constexpr std::size_t kExpandedAcronyms = 32;

struct Entry {
  std::string name;
  std::string corrected;
};

std::string code(std::size_t i) {
  return {static_cast<char>('a' + (i / 26) % 26), static_cast<char>('a' + i % 26)};
}

// Lowercase token, unique per (prefix, i), padded with 'x' to `len`.
std::string token(char prefix, std::size_t i, std::size_t len) {
  std::string t = prefix + code(i);
  while (t.size() < len) t += 'x';
  return t;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "_") + p;
  return out;
}

std::string acronym(std::size_t i) { return "zq" + code(i); }
std::string expansion_first(std::size_t i) { return "qe" + code(i) + "xx"; }
std::string expansion_second(std::size_t i) { return "qf" + code(i) + "xx"; }

std::vector<Entry> entries() {
  std::vector<Entry> out;
  const auto repeat = [&out](std::size_t n, const std::string& name, const std::string& corrected) {
    for (std::size_t i = 0; i < n; ++i) out.push_back({name, corrected});
  };
  // Renamed names.
  repeat(8, "MSE", "calculate_mean_squared_error");
  repeat(5, "pdiguide_imgRead", "read_pdiguide_image");
  repeat(7, "im_convert", "convert_image");
  repeat(43, "w", "calculate_w");
  for (std::size_t i = 0; i < kExpandedAcronyms; ++i) {
    out.push_back({"plot_" + acronym(i), join({"plot", expansion_first(i), expansion_second(i)})});
  }
  for (std::size_t i = 0; i < 35; ++i) out.push_back({"load_csv", "load_csv_" + token('q', 100 + i, 5)});
  for (std::size_t i = 0; i < 8; ++i) {
    const std::string name = join({token('v', 3 * i, 8), token('v', 3 * i + 1, 8), token('v', 3 * i + 2, 8)});
    out.push_back({name, name + "_" + token('q', i, 3)});
  }
  for (std::size_t i = 0; i < 28; ++i) {
    const std::string name = join({token('v', 100 + 2 * i, 12), token('v', 101 + 2 * i, 13)});
    out.push_back({name, name + "_" + token('q', 8 + i, 3)});
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string name = join({token('v', 300 + 2 * i, 12), token('v', 301 + 2 * i, i < 3 ? 12 : 11)});
    const std::string corrected = join({token('y', 2 * i, 5), token('y', 2 * i + 1, i < 2 ? 5 : 4)});
    out.push_back({name, corrected});
  }
  // Preserved names.
  const char* verbs[] = {"save", "read", "write", "parse"};
  const char* acronyms[] = {"csv", "json", "ascii", "png"};
  for (std::size_t i = 0; i < 53; ++i) {
    const std::string name = std::string(verbs[i % 4]) + "_" + acronyms[i % 4];
    out.push_back({name, name});
  }
  for (std::size_t i = 0; i < 271; ++i) {
    const std::string name = join({token('j', i, 6), token('j', 300 + i, 6)});
    out.push_back({name, name});
  }
  return out;
}

// Human and rater current patterns for item i: 303 matches, then the
// disagreements N->PRE x16, VM->V x11, V,NPL->V,N x9 and 157 spread over
// twenty smaller groups.
std::pair<std::string, std::string> current_patterns(std::size_t i) {
  if (i < 303) return {"V,N", "V,N"};
  i -= 303;
  if (i < 16) return {"N", "PRE"};
  i -= 16;
  if (i < 11) return {"VM", "V"};
  i -= 11;
  if (i < 9) return {"V,NPL", "V,N"};
  i -= 9;
  const std::size_t group = i / 8;
  const auto& tags = namegauge::lexeme::kAllTags;
  const std::string truth = (group < tags.size() ? "P," : "CJ,") +
                            std::string(namegauge::lexeme::mnemonic(tags[group % tags.size()]));
  return {truth, truth + ",N"};
}

std::string corrected_pattern(std::size_t plain_index, std::size_t words) {
  std::size_t tags = words;
  bool verb_first = true;
  if (plain_index != std::string::npos) {
    if (plain_index < 19) ++tags;
    else if (plain_index < 21) --tags;
    if (plain_index >= 200) verb_first = false;
  }
  std::string pattern = verb_first ? "V" : "N";
  for (std::size_t t = 1; t < tags; ++t) pattern += ",N";
  return pattern;
}

}  // namespace

namegauge::tagger::Lexicon lexicon() {
  std::string text(namegauge::tagger::default_lexicon_text());
  text += "\n[acronyms]\n";
  for (std::size_t i = 0; i < kExpandedAcronyms; ++i) {
    text += acronym(i) + " = " + expansion_first(i) + " " + expansion_second(i) + "\n";
  }
  return namegauge::tagger::Lexicon::parse(text);
}

void populate(namegauge::store::Store& db) {
  const auto all = entries();
  const std::size_t plain_start = all.size() - 271;
  namegauge::store::Store::Transaction tx(db);
  db.record(namegauge::store::RunRecord{kRunId, "2024-01-01T00:00:00Z",
                                        std::string(namegauge::raters::kTemplateVersion),
                                        R"({"raters":[{"rater_name":"gemini"}]})", "fixture"});
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& e = all[i];
    char prefix[32];
    std::snprintf(prefix, sizeof prefix, "study/m%03zu.ipynb", i);
    namegauge::corpus::MethodRecord m;
    m.notebook_path = prefix;
    m.cell_index = 0;
    m.start_line = 1;
    m.name = e.name;
    m.id = namegauge::corpus::make_method_id(m.notebook_path, 0, 1, e.name);
    m.source = "def " + e.name + "():\n    pass\n";
    db.record(m);

    const auto [human, current] = current_patterns(i);
    db.record(namegauge::store::AnnotationRow{m.id, parse_pattern(human)});

    const std::size_t plain = i >= plain_start ? i - plain_start : std::string::npos;
    const auto words = namegauge::lexeme::split_identifier(e.corrected).word_count();
    namegauge::raters::RaterOutput o;
    o.method_id = m.id;
    o.rater_name = kRater;
    o.status = namegauge::raters::Status::Valid;
    o.current_name = e.name;
    o.current_pattern = parse_pattern(current);
    o.corrected_name = e.corrected;
    o.corrected_pattern = parse_pattern(corrected_pattern(plain, words));
    o.raw_response = nlohmann::json{
        {"current_method_name", o.current_name},
        {"current_grammar_pattern", o.current_pattern->to_string()},
        {"corrected_method_name", *o.corrected_name},
        {"corrected_grammar_pattern", o.corrected_pattern->to_string()},
    }.dump();
    db.record(kRunId, o);
  }
  tx.commit();
}

}  // namespace study_fixture
