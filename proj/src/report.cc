// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/report.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "namegauge/csv.h"
#include "namegauge/errors.h"
#include "namegauge/metrics.h"

namespace namegauge::report {

namespace {

using raters::RaterOutput;
using OutputsByRater = std::map<std::string, std::vector<RaterOutput>>;

std::string count(std::size_t n) { return std::to_string(n); }

double ratio(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

Table make_table(std::string file_name, std::string title, std::vector<std::string> header) {
  return {std::move(file_name), std::move(title), std::move(header), {}};
}

Table agreement_table(const store::Store& db, std::string_view run_id, const OutputsByRater& subset_outputs,
                      const std::set<std::string>& subset, bool have_annotations,
                      const ReportOptions& options, Table& confusion, Report& report) {
  Table table = make_table("table1_agreement.csv", "Agreement with human annotations",
                           {"rater", "n", "matches", "accuracy", "cohen_kappa"});
  if (!have_annotations || subset.empty()) return table;
  for (const auto& [rater, outputs] : subset_outputs) {
    const auto query = db.query_pairs(run_id, rater, subset);
    if (query.missing > 0) {
      report.diagnostics.push_back(rater + ": " + count(query.missing) +
                                   " subset methods lack a human annotation");
    }
    if (query.pairs.empty()) continue;
    const auto result = metrics::agreement(query.pairs);
    table.rows.push_back({rater, count(result.n), count(result.matches), fixed(result.accuracy, 3),
                          fixed(result.kappa, 3)});
    const std::size_t disagreements = result.n - result.matches;
    const auto entries = metrics::misclassification_topk(query.pairs, options.top_k);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      confusion.rows.push_back({rater, count(i + 1), e.truth, e.predicted, count(e.count),
                                count(disagreements), percent(e.pct_of_disagreements, 2)});
    }
  }
  return table;
}

Table preservation_table(const OutputsByRater& outputs) {
  Table table = make_table("table3_preservation.csv", "Original names preserved",
                           {"rater", "preserved", "percentage", "changed", "n",
                            "preserved_normalized", "percentage_normalized"});
  for (const auto& [rater, outs] : outputs) {
    if (outs.empty()) continue;
    const auto exact = metrics::preservation_rate(outs);
    const auto normalized = metrics::normalized_preservation_rate(outs);
    table.rows.push_back({rater, count(exact.preserved), percent(exact.fraction, 1),
                          count(exact.changed()), count(exact.n), count(normalized.preserved),
                          percent(normalized.fraction, 1)});
  }
  return table;
}

std::vector<std::pair<lexeme::SplitName, lexeme::SplitName>> changed_names(
    const std::vector<RaterOutput>& outs) {
  std::vector<std::pair<lexeme::SplitName, lexeme::SplitName>> changed;
  for (const auto& o : outs) {
    if (*o.corrected_name == o.current_name) continue;
    changed.emplace_back(lexeme::split_identifier(o.current_name),
                         lexeme::split_identifier(*o.corrected_name));
  }
  return changed;
}

Table length_table(const OutputsByRater& outputs, Report& report) {
  Table table = make_table("table4_length_growth.csv", "Length of changed names",
                           {"rater", "n_changed", "avg_words_original", "avg_words_corrected",
                            "word_growth", "avg_chars_original", "avg_chars_corrected",
                            "char_growth"});
  for (const auto& [rater, outs] : outputs) {
    const auto changed = changed_names(outs);
    if (changed.empty()) {
      if (!outs.empty()) report.diagnostics.push_back(rater + ": no changed names for length growth");
      continue;
    }
    const auto g = metrics::length_growth(changed);
    table.rows.push_back({rater, count(g.n), fixed(g.avg_words_original, 2),
                          fixed(g.avg_words_corrected, 2), signed_percent(g.word_growth_pct, 2),
                          fixed(g.avg_chars_original, 2), fixed(g.avg_chars_corrected, 2),
                          signed_percent(g.char_growth_pct, 2)});
  }
  return table;
}

Table term_table(const OutputsByRater& outputs, const ReportOptions& options) {
  Table table = make_table("table5_term_changes.csv", "Terms added and removed",
                           {"rater", "action", "rank", "term", "count", "example_original",
                            "example_corrected"});
  for (const auto& [rater, outs] : outputs) {
    std::vector<metrics::TermDiff> diffs;
    for (const auto& [original, corrected] : changed_names(outs)) {
      diffs.push_back(metrics::term_diff(original, corrected));
    }
    const auto ranking = metrics::top_added_removed(diffs, options.top_k);
    const auto emit = [&, r = rater](const char* action, const std::vector<metrics::TermCount>& terms) {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        table.rows.push_back({r, action, count(i + 1), t.term, count(t.count), t.example_original,
                              t.example_corrected});
      }
    };
    emit("added", ranking.added);
    emit("removed", ranking.removed);
  }
  return table;
}

Table consistency_table(const OutputsByRater& outputs) {
  Table table = make_table("table6_tag_word_consistency.csv",
                           "Word count versus tag count of corrected names",
                           {"rater", "equal", "equal_pct", "more_tags", "more_tags_pct",
                            "fewer_tags", "fewer_tags_pct", "n"});
  for (const auto& [rater, outs] : outputs) {
    if (outs.empty()) continue;
    std::vector<std::pair<lexeme::SplitName, lexeme::GrammarPattern>> items;
    for (const auto& o : outs) {
      items.emplace_back(lexeme::split_identifier(*o.corrected_name), *o.corrected_pattern);
    }
    const auto t = metrics::tag_word_consistency(items);
    const std::size_t n = t.total();
    table.rows.push_back({rater, count(t.equal), percent(ratio(t.equal, n), 2), count(t.more_tags),
                          percent(ratio(t.more_tags, n), 2), count(t.fewer_tags),
                          percent(ratio(t.fewer_tags, n), 2), count(n)});
  }
  return table;
}

Table abbreviation_table(const OutputsByRater& outputs, const tagger::Lexicon& lex) {
  Table table = make_table("table7_abbreviations.csv", "Abbreviations and acronyms expanded",
                           {"rater", "not_expanded", "not_expanded_pct", "expanded", "expanded_pct",
                            "instances", "methods", "preserved_methods"});
  for (const auto& [rater, outs] : outputs) {
    if (outs.empty()) continue;
    const auto a = metrics::abbreviation_expansion_report(outs, lex);
    const std::size_t n = a.instances();
    table.rows.push_back({rater, count(a.not_expanded), percent(ratio(a.not_expanded, n), 2),
                          count(a.expanded), percent(ratio(a.expanded, n), 2), count(n),
                          count(a.methods), count(a.preserved_methods)});
  }
  return table;
}

Table verb_start_table(const OutputsByRater& outputs, const std::vector<store::AnnotationRow>& annotations,
                       const std::set<std::string>& subset) {
  Table table = make_table("verb_start.csv", "Corrected patterns starting with a verb",
                           {"rater", "verb_initial", "n", "percentage"});
  const auto add_row = [&table](const std::string& name, const std::vector<lexeme::GrammarPattern>& patterns) {
    if (patterns.empty()) return;
    const double rate = metrics::verb_start_rate(patterns);
    const auto verbs = static_cast<std::size_t>(rate * static_cast<double>(patterns.size()) + 0.5);
    table.rows.push_back({name, count(verbs), count(patterns.size()), percent(rate, 2)});
  };
  std::vector<lexeme::GrammarPattern> human;
  for (const auto& a : annotations) {
    if (subset.count(a.method_id)) human.push_back(a.pattern);
  }
  add_row("human", human);
  for (const auto& [rater, outs] : outputs) {
    std::vector<lexeme::GrammarPattern> patterns;
    for (const auto& o : outs) patterns.push_back(*o.corrected_pattern);
    add_row(rater, patterns);
  }
  return table;
}

std::string fleiss_summary(const OutputsByRater& outputs, std::size_t subset_size) {
  std::ostringstream out;
  const std::size_t raters = outputs.size();
  out << "raters: " << raters << "\n";
  out << "items: " << subset_size << "\n";
  if (raters < 3) {
    out << "Fleiss' kappa requires \xE2\x89\xA5" "3 raters; this run has " << raters << "\n";
    return out.str();
  }
  if (subset_size == 0) {
    out << "Fleiss' kappa not computed: the common valid subset is empty\n";
    return out.str();
  }
  std::vector<std::vector<std::string>> patterns(subset_size), names(subset_size);
  for (const auto& [rater, outs] : outputs) {
    for (std::size_t i = 0; i < outs.size(); ++i) {
      patterns[i].push_back(outs[i].current_pattern->to_string());
      names[i].push_back(lexeme::normalize_name(*outs[i].corrected_name));
    }
  }
  const auto pattern_table = metrics::build_fleiss_table(patterns);
  const auto name_table = metrics::build_fleiss_table(names);
  std::size_t identical_names = 0;
  for (const auto& item : names) {
    if (std::set<std::string>(item.begin(), item.end()).size() == 1) ++identical_names;
  }
  out << "pattern_fleiss_kappa: " << fixed(metrics::fleiss_kappa(pattern_table.table, raters), 3) << "\n";
  out << "pattern_categories: " << pattern_table.categories.size() << "\n";
  out << "pattern_unanimity: " << percent(metrics::unanimity(patterns), 2) << "\n";
  out << "corrected_name_fleiss_kappa: " << fixed(metrics::fleiss_kappa(name_table.table, raters), 3)
      << "\n";
  out << "corrected_name_categories: " << name_table.categories.size() << "\n";
  out << "corrected_name_identical: " << identical_names << " of " << subset_size << "\n";
  return out.str();
}

std::string markdown_cell(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string percent(double fraction, int decimals) { return fixed(fraction * 100.0, decimals) + "%"; }

std::string signed_percent(double pct, int decimals) {
  const std::string body = fixed(pct, decimals) + "%";
  return body.front() == '-' ? body : "+" + body;
}

Report build_report(const store::Store& db, std::string_view run_id, const tagger::Lexicon& lex,
                    const ReportOptions& options) {
  if (!db.run(run_id)) throw StoreError("no run with id '" + std::string(run_id) + "'");
  const auto all = db.outputs(run_id);
  if (all.empty()) throw StoreError("run '" + std::string(run_id) + "' has no rater outputs");

  Report report;
  const auto subset = raters::common_valid_subset(all);
  report.subset_size = subset.size();
  OutputsByRater outputs;
  for (const auto& [rater, outs] : all) {
    report.rater_names.push_back(rater);
    auto& kept = outputs[rater];
    for (const auto& o : outs) {
      if (subset.count(o.method_id)) kept.push_back(o);
    }
  }
  if (subset.empty()) {
    report.diagnostics.push_back("no method has a Valid output from every rater; tables are empty");
  }

  const auto annotations = db.annotations();
  report.missing_annotations = annotations.empty();
  if (report.missing_annotations) {
    report.diagnostics.push_back("no human annotations imported; agreement tables are empty");
  }

  Table confusion = make_table("table2_misclassifications.csv", "Most common pattern misclassifications",
                               {"rater", "rank", "human_pattern", "model_pattern", "count",
                                "disagreements", "percentage"});
  Table agreement = agreement_table(db, run_id, outputs, subset, !report.missing_annotations,
                                    options, confusion, report);
  report.tables.push_back(std::move(agreement));
  report.tables.push_back(std::move(confusion));
  report.tables.push_back(preservation_table(outputs));
  report.tables.push_back(length_table(outputs, report));
  report.tables.push_back(term_table(outputs, options));
  report.tables.push_back(consistency_table(outputs));
  report.tables.push_back(abbreviation_table(outputs, lex));
  report.tables.push_back(verb_start_table(outputs, annotations, subset));
  report.fleiss_text = fleiss_summary(outputs, subset.size());
  return report;
}

std::string render_markdown(const Report& report) {
  std::ostringstream out;
  out << "# namegauge report\n\n";
  out << "Raters:";
  for (const auto& name : report.rater_names) out << " " << name;
  out << "\n\nCommon valid subset: " << report.subset_size << " methods\n";
  if (!report.diagnostics.empty()) {
    out << "\n## Diagnostics\n\n";
    for (const auto& d : report.diagnostics) out << "- " << d << "\n";
  }
  for (const auto& table : report.tables) {
    out << "\n## " << table.title << "\n\n";
    out << "Source: `" << table.file_name << "`\n\n|";
    for (const auto& h : table.header) out << " " << markdown_cell(h) << " |";
    out << "\n|";
    for (std::size_t i = 0; i < table.header.size(); ++i) out << " --- |";
    out << "\n";
    for (const auto& row : table.rows) {
      out << "|";
      for (const auto& cell : row) out << " " << markdown_cell(cell) << " |";
      out << "\n";
    }
  }
  out << "\n## Fleiss' kappa\n\n```\n" << report.fleiss_text << "```\n";
  return out.str();
}

std::vector<std::filesystem::path> write_report(const Report& report,
                                                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const auto open = [&](const std::string& name) {
    written.push_back(out_dir / name);
    std::ofstream file(written.back(), std::ios::binary);
    if (!file) throw Error("cannot write " + written.back().string());
    return file;
  };
  for (const auto& table : report.tables) {
    auto file = open(table.file_name);
    csv::write_row(file, table.header);
    for (const auto& row : table.rows) csv::write_row(file, row);
  }
  open("fleiss.txt") << report.fleiss_text;
  open("report.md") << render_markdown(report);
  return written;
}

}  // namespace namegauge::report
