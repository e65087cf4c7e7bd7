// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "namegauge/errors.h"

namespace namegauge::metrics {

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

double growth_pct(double original, double corrected) {
  const double o = round2(original);
  const double c = round2(corrected);
  if (o == 0.0) return 0.0;
  return (c - o) / o * 100.0;
}

void require_valid(const raters::RaterOutput& out) {
  if (out.status != raters::Status::Valid || !out.corrected_name) {
    throw EmptyInput("analysis requires Valid rater outputs; " + out.method_id + " is " +
                     std::string(raters::status_name(out.status)));
  }
}

std::vector<TermCount> rank_terms(const std::vector<TermDiff>& diffs, bool added, std::size_t k) {
  std::map<std::string, TermCount> by_term;
  for (const auto& diff : diffs) {
    for (const auto& [term, count] : added ? diff.added : diff.removed) {
      auto [it, inserted] = by_term.try_emplace(term);
      if (inserted) {
        it->second.term = term;
        it->second.example_original = diff.original_name;
        it->second.example_corrected = diff.corrected_name;
      }
      it->second.count += count;
    }
  }
  std::vector<TermCount> ranked;
  ranked.reserve(by_term.size());
  for (auto& [term, entry] : by_term) ranked.push_back(std::move(entry));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace

double accuracy(const std::vector<LabeledPair>& pairs) { return agreement(pairs).accuracy; }

double cohen_kappa(const std::vector<LabeledPair>& pairs) { return agreement(pairs).kappa; }

AgreementResult agreement(const std::vector<LabeledPair>& pairs) {
  if (pairs.empty()) throw EmptyInput("agreement needs at least one labeled pair");
  std::map<std::string, std::size_t> marginal_a, marginal_b;
  AgreementResult result;
  result.n = pairs.size();
  for (const auto& p : pairs) {
    if (p.label_a == p.label_b) ++result.matches;
    ++marginal_a[p.label_a];
    ++marginal_b[p.label_b];
  }
  const double n = static_cast<double>(result.n);
  const double observed = static_cast<double>(result.matches) / n;
  double expected = 0.0;
  for (const auto& [label, count] : marginal_a) {
    const auto it = marginal_b.find(label);
    if (it != marginal_b.end()) {
      expected += (static_cast<double>(count) / n) * (static_cast<double>(it->second) / n);
    }
  }
  result.accuracy = observed;
  result.kappa = expected >= 1.0 ? 1.0 : (observed - expected) / (1.0 - expected);
  return result;
}

double fleiss_kappa(const CountTable& table, std::size_t raters_per_item) {
  if (raters_per_item < 2) throw RaggedTable("Fleiss' kappa needs at least two raters per item");
  if (table.empty()) throw EmptyInput("Fleiss' kappa needs at least one item");
  const std::size_t categories = table.front().size();
  const double r = static_cast<double>(raters_per_item);
  std::vector<double> column_totals(categories, 0.0);
  double mean_item_agreement = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& row = table[i];
    if (row.size() != categories) {
      throw RaggedTable("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                        " categories, expected " + std::to_string(categories));
    }
    std::size_t sum = 0;
    double squares = 0.0;
    for (std::size_t j = 0; j < categories; ++j) {
      sum += row[j];
      squares += static_cast<double>(row[j]) * static_cast<double>(row[j]);
      column_totals[j] += static_cast<double>(row[j]);
    }
    if (sum != raters_per_item) {
      throw RaggedTable("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                        ", expected " + std::to_string(raters_per_item));
    }
    mean_item_agreement += (squares - r) / (r * (r - 1.0));
  }
  const double items = static_cast<double>(table.size());
  mean_item_agreement /= items;
  double expected = 0.0;
  for (double total : column_totals) {
    const double p = total / (items * r);
    expected += p * p;
  }
  if (expected >= 1.0 - 1e-12) return 1.0;
  return (mean_item_agreement - expected) / (1.0 - expected);
}

FleissInput build_fleiss_table(const std::vector<std::vector<std::string>>& labels_by_item) {
  FleissInput input;
  std::set<std::string> categories;
  for (const auto& item : labels_by_item) categories.insert(item.begin(), item.end());
  input.categories.assign(categories.begin(), categories.end());
  input.table.reserve(labels_by_item.size());
  for (const auto& item : labels_by_item) {
    std::vector<std::size_t> row(input.categories.size(), 0);
    for (const auto& label : item) {
      const auto it = std::lower_bound(input.categories.begin(), input.categories.end(), label);
      ++row[static_cast<std::size_t>(it - input.categories.begin())];
    }
    input.table.push_back(std::move(row));
  }
  return input;
}

double unanimity(const std::vector<std::vector<std::string>>& labels_by_item) {
  if (labels_by_item.empty()) throw EmptyInput("unanimity needs at least one item");
  std::size_t unanimous = 0;
  for (const auto& item : labels_by_item) {
    if (std::adjacent_find(item.begin(), item.end(), std::not_equal_to<>()) == item.end()) {
      ++unanimous;
    }
  }
  return static_cast<double>(unanimous) / static_cast<double>(labels_by_item.size());
}

std::vector<ConfusionEntry> misclassification_topk(const std::vector<LabeledPair>& pairs,
                                                   std::size_t k) {
  std::map<std::pair<std::string, std::string>, std::size_t> groups;
  std::size_t disagreements = 0;
  for (const auto& p : pairs) {
    if (p.label_a == p.label_b) continue;
    ++groups[{p.label_a, p.label_b}];
    ++disagreements;
  }
  std::vector<ConfusionEntry> entries;
  entries.reserve(groups.size());
  for (const auto& [key, count] : groups) {
    entries.push_back({key.first, key.second, count,
                       static_cast<double>(count) / static_cast<double>(disagreements)});
  }
  // The map already orders ties by (truth, predicted).
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ConfusionEntry& a, const ConfusionEntry& b) { return a.count > b.count; });
  if (entries.size() > k) entries.resize(k);
  return entries;
}

Preservation preservation_rate(const std::vector<raters::RaterOutput>& outputs) {
  Preservation p;
  p.n = outputs.size();
  for (const auto& out : outputs) {
    require_valid(out);
    if (*out.corrected_name == out.current_name) ++p.preserved;
  }
  p.fraction = p.n == 0 ? 0.0 : static_cast<double>(p.preserved) / static_cast<double>(p.n);
  return p;
}

Preservation normalized_preservation_rate(const std::vector<raters::RaterOutput>& outputs) {
  Preservation p;
  p.n = outputs.size();
  for (const auto& out : outputs) {
    require_valid(out);
    if (lexeme::normalize_name(*out.corrected_name) == lexeme::normalize_name(out.current_name)) {
      ++p.preserved;
    }
  }
  p.fraction = p.n == 0 ? 0.0 : static_cast<double>(p.preserved) / static_cast<double>(p.n);
  return p;
}

LengthGrowth length_growth(
    const std::vector<std::pair<lexeme::SplitName, lexeme::SplitName>>& changed) {
  if (changed.empty()) throw EmptyInput("length growth needs at least one changed name");
  LengthGrowth g;
  g.n = changed.size();
  double words_o = 0, words_c = 0, chars_o = 0, chars_c = 0;
  for (const auto& [original, corrected] : changed) {
    words_o += static_cast<double>(original.word_count());
    words_c += static_cast<double>(corrected.word_count());
    chars_o += static_cast<double>(original.original.size());
    chars_c += static_cast<double>(corrected.original.size());
  }
  const double n = static_cast<double>(g.n);
  g.avg_words_original = words_o / n;
  g.avg_words_corrected = words_c / n;
  g.avg_chars_original = chars_o / n;
  g.avg_chars_corrected = chars_c / n;
  g.word_growth_pct = growth_pct(g.avg_words_original, g.avg_words_corrected);
  g.char_growth_pct = growth_pct(g.avg_chars_original, g.avg_chars_corrected);
  return g;
}

TermDiff term_diff(const lexeme::SplitName& original, const lexeme::SplitName& corrected) {
  TermDiff diff;
  diff.original_name = original.original;
  diff.corrected_name = corrected.original;
  std::map<std::string, long> balance;
  for (const auto& t : corrected.terms) ++balance[t.lower];
  for (const auto& t : original.terms) --balance[t.lower];
  for (const auto& [term, b] : balance) {
    if (b > 0) diff.added[term] = static_cast<std::size_t>(b);
    if (b < 0) diff.removed[term] = static_cast<std::size_t>(-b);
  }
  return diff;
}

TermRanking top_added_removed(const std::vector<TermDiff>& diffs, std::size_t k) {
  return {rank_terms(diffs, true, k), rank_terms(diffs, false, k)};
}

double verb_start_rate(const std::vector<lexeme::GrammarPattern>& patterns) {
  if (patterns.empty()) throw EmptyInput("verb start rate needs at least one pattern");
  const auto verbs = std::count_if(patterns.begin(), patterns.end(),
                                   [](const auto& p) { return p.front() == lexeme::Tag::V; });
  return static_cast<double>(verbs) / static_cast<double>(patterns.size());
}

ArityTally tag_word_consistency(
    const std::vector<std::pair<lexeme::SplitName, lexeme::GrammarPattern>>& outputs) {
  ArityTally tally;
  for (const auto& [split, pattern] : outputs) {
    switch (lexeme::compare_arity(split, pattern)) {
      case lexeme::Arity::Equal: ++tally.equal; break;
      case lexeme::Arity::MoreTagsThanWords: ++tally.more_tags; break;
      case lexeme::Arity::FewerTagsThanWords: ++tally.fewer_tags; break;
    }
  }
  return tally;
}

AbbreviationReport abbreviation_expansion_report(const std::vector<raters::RaterOutput>& outputs,
                                                 const tagger::Lexicon& lex) {
  AbbreviationReport report;
  for (const auto& out : outputs) {
    require_valid(out);
    const auto original = lexeme::split_identifier(out.current_name);
    std::vector<const lexeme::Term*> tokens;
    for (const auto& term : original.terms) {
      if (tagger::is_abbreviation(term, lex)) tokens.push_back(&term);
    }
    if (tokens.empty()) continue;
    ++report.methods;
    if (*out.corrected_name == out.current_name) ++report.preserved_methods;

    const auto corrected = lexeme::split_identifier(*out.corrected_name);
    const auto corrected_terms = corrected.lower_terms();
    const std::set<std::string> present(corrected_terms.begin(), corrected_terms.end());
    for (const auto* token : tokens) {
      bool expanded = false;
      if (!present.count(token->lower)) {
        const auto it = lex.acronyms.find(token->lower);
        if (it != lex.acronyms.end() && !it->second.empty()) {
          expanded = std::all_of(it->second.begin(), it->second.end(),
                                 [&](const std::string& w) { return present.count(w) > 0; });
        } else {
          expanded = corrected.word_count() >= original.word_count() + 2;
        }
      }
      auto& detail = report.per_token[token->lower];
      if (expanded) {
        ++report.expanded;
        ++detail.expanded;
      } else {
        ++report.not_expanded;
        ++detail.not_expanded;
      }
    }
  }
  return report;
}

}  // namespace namegauge::metrics
