// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Agreement statistics and the rename-quality analyses.
//
// Labels are compared as whole canonical strings: a grammar pattern such as
// "V,NPL" is one categorical label, not a sequence of per-term labels.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "namegauge/lexeme.h"
#include "namegauge/raters.h"
#include "namegauge/tagger.h"

namespace namegauge::metrics {

struct LabeledPair {
  std::string item_id;
  std::string label_a;
  std::string label_b;
};

struct AgreementResult {
  double accuracy = 0.0;
  double kappa = 0.0;
  std::size_t n = 0;
  std::size_t matches = 0;
};

// Exact-match fraction. Throws EmptyInput.
double accuracy(const std::vector<LabeledPair>& pairs);

// (p_o - p_e) / (1 - p_e), p_e from the two marginal distributions. When
// p_e is 1 (both raters constant on the same label) the result is 1.
// Throws EmptyInput.
double cohen_kappa(const std::vector<LabeledPair>& pairs);

AgreementResult agreement(const std::vector<LabeledPair>& pairs);

using CountTable = std::vector<std::vector<std::size_t>>;

// Items x categories count matrix; every row must sum to
// `raters_per_item` (>= 2), else RaggedTable. A table whose expected
// agreement is 1 yields 1. Throws EmptyInput for a table without items.
double fleiss_kappa(const CountTable& table, std::size_t raters_per_item);

struct FleissInput {
  std::vector<std::string> categories;  // sorted
  CountTable table;
};

// labels_by_item[i] holds one label per rater for item i.
FleissInput build_fleiss_table(const std::vector<std::vector<std::string>>& labels_by_item);

// Fraction of items on which every rater gave the same label.
double unanimity(const std::vector<std::vector<std::string>>& labels_by_item);

struct ConfusionEntry {
  std::string truth;
  std::string predicted;
  std::size_t count = 0;
  double pct_of_disagreements = 0.0;  // fraction in [0, 1]
};

// Disagreeing pairs grouped by (label_a as truth, label_b as predicted),
// most frequent first, ties by (truth, predicted). The denominator is the
// number of disagreeing pairs.
std::vector<ConfusionEntry> misclassification_topk(const std::vector<LabeledPair>& pairs,
                                                   std::size_t k);

struct Preservation {
  std::size_t preserved = 0;
  std::size_t n = 0;
  double fraction = 0.0;
  std::size_t changed() const { return n - preserved; }
};

// corrected_name == current_name, byte for byte.
Preservation preservation_rate(const std::vector<raters::RaterOutput>& outputs);

// Same, comparing normalize_name() of both sides.
Preservation normalized_preservation_rate(const std::vector<raters::RaterOutput>& outputs);

struct LengthGrowth {
  std::size_t n = 0;
  double avg_words_original = 0.0;
  double avg_words_corrected = 0.0;
  double avg_chars_original = 0.0;
  double avg_chars_corrected = 0.0;
  // Growth in percent, relative to the averages rounded to two decimals as
  // they are displayed, so a reader can recompute it from the table.
  double word_growth_pct = 0.0;
  double char_growth_pct = 0.0;
};

// Character counts are raw identifier lengths, underscores included.
// Throws EmptyInput.
LengthGrowth length_growth(
    const std::vector<std::pair<lexeme::SplitName, lexeme::SplitName>>& changed);

struct TermDiff {
  std::string original_name;
  std::string corrected_name;
  std::map<std::string, std::size_t> added;    // lowercase term -> multiplicity
  std::map<std::string, std::size_t> removed;
};

TermDiff term_diff(const lexeme::SplitName& original, const lexeme::SplitName& corrected);

struct TermCount {
  std::string term;
  std::size_t count = 0;
  std::string example_original;   // first diff, in input order, containing the term
  std::string example_corrected;
};

struct TermRanking {
  std::vector<TermCount> added;
  std::vector<TermCount> removed;
};

// Occurrence counts across diffs, highest first, ties lexicographic.
TermRanking top_added_removed(const std::vector<TermDiff>& diffs, std::size_t k);

// Fraction of patterns whose first tag is V. Throws EmptyInput.
double verb_start_rate(const std::vector<lexeme::GrammarPattern>& patterns);

struct ArityTally {
  std::size_t equal = 0;
  std::size_t more_tags = 0;
  std::size_t fewer_tags = 0;
  std::size_t total() const { return equal + more_tags + fewer_tags; }
};

ArityTally tag_word_consistency(
    const std::vector<std::pair<lexeme::SplitName, lexeme::GrammarPattern>>& outputs);

struct AbbreviationDetail {
  std::size_t expanded = 0;
  std::size_t not_expanded = 0;
};

struct AbbreviationReport {
  std::size_t not_expanded = 0;
  std::size_t expanded = 0;
  std::size_t instances() const { return not_expanded + expanded; }
  // Methods containing an abbreviation whose corrected name equals the
  // current name.
  std::size_t methods = 0;
  std::size_t preserved_methods = 0;
  std::map<std::string, AbbreviationDetail> per_token;
};

// Counts abbreviation tokens (tagger::is_abbreviation) in each output's
// current name. A token is expanded when it is absent from the corrected
// terms and every word of its known expansion is present; a token without a
// known expansion is expanded when absent and the corrected name has at
// least two more terms than the current one. Outputs must be Valid.
AbbreviationReport abbreviation_expansion_report(const std::vector<raters::RaterOutput>& outputs,
                                                 const tagger::Lexicon& lex);

}  // namespace namegauge::metrics
