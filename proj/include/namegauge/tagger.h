// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Rule-and-lexicon grammar-pattern tagger and the method-name lint.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/lexeme.h"

namespace namegauge::tagger {

// Word lists keyed by lowercase word. Loaded once and then read-only.
//
// File format: "[section]" headers followed by one entry per line, '#'
// comments. Sections: verbs, nouns, prepositions, determiners,
// conjunctions, pronouns, verb_modifiers, preambles, and acronyms, whose
// lines read "mse = mean squared error".
struct Lexicon {
  std::set<std::string> verbs;
  std::set<std::string> nouns;
  std::set<std::string> prepositions;
  std::set<std::string> determiners;
  std::set<std::string> conjunctions;
  std::set<std::string> pronouns;
  std::set<std::string> verb_modifiers;
  std::map<std::string, std::vector<std::string>> acronyms;
  std::set<std::string> preamble_prefixes;

  // Throws LexiconError on unknown sections or malformed acronym lines.
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& file);
  // The lexicon shipped with the tool.
  static const Lexicon& default_lexicon();

  bool in_any_word_set(const std::string& lower) const;
  bool is_acronym(const std::string& lower) const { return acronyms.count(lower) > 0; }
};

std::string_view default_lexicon_text();

// Ends in "s" but not "ss", minus a list of singular words ("bias", "gas").
bool is_plural(std::string_view lower_term);

// One tag per term. Closed-class words first, in precedence order digit,
// acronym, preposition, determiner, conjunction, pronoun, verb modifier.
// Then: a preamble prefix at position 0 of a multi-term name is PRE; a
// listed verb in head position is V (a single-term name that is also a
// listed noun stays a noun); every remaining term is nominal and becomes NM
// when the next term is nominal, otherwise N or NPL by is_plural.
lexeme::GrammarPattern rule_tag(const lexeme::SplitName& split, const Lexicon& lex);

enum class LintCode {
  NotVerbFirst,
  EndsWithVerb,
  SingleAmbiguousTerm,
  ContainsAbbreviation,
  PluralMismatch,
};

std::string_view lint_code_name(LintCode code);

struct LintFinding {
  LintCode code;
  std::optional<std::size_t> term_index;
  std::string message;
};

// A known acronym, or an all-caps raw term of length 2 to 5 that no word
// list contains.
bool is_abbreviation(const lexeme::Term& term, const Lexicon& lex);

// Findings are ordered by rule, then by term index. Throws MismatchedPattern
// when the pattern's tag count differs from the word count.
std::vector<LintFinding> lint_name(const lexeme::SplitName& split,
                                   const lexeme::GrammarPattern& pattern, const Lexicon& lex);

}  // namespace namegauge::tagger
