// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/tagger.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "namegauge/errors.h"
#include "namegauge/sectioned_text.h"

namespace namegauge::tagger {

namespace {

using lexeme::GrammarPattern;
using lexeme::SplitName;
using lexeme::Tag;

constexpr std::array<std::string_view, 40> kSingularEndingInS = {
    "alias",  "always",   "analysis", "as",      "atlas",  "axis",    "basis",  "bias",
    "bus",    "canvas",   "chaos",    "corpus",  "cosmos", "does",    "focus",  "gas",
    "genus",  "has",      "is",       "its",     "iris",   "lens",    "minus",  "news",
    "perhaps", "plus",    "previous", "radius",  "s",      "series",  "species", "status",
    "thesis", "this",     "thus",     "us",      "various", "virus",  "was",    "yes"};

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool all_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) >= 0x80 || std::isalpha(static_cast<unsigned char>(c));
  });
}

bool all_caps(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::istringstream in{std::string(text)};
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  const std::map<std::string, std::set<std::string>*, std::less<>> word_sections = {
      {"verbs", &lex.verbs},
      {"nouns", &lex.nouns},
      {"prepositions", &lex.prepositions},
      {"determiners", &lex.determiners},
      {"conjunctions", &lex.conjunctions},
      {"pronouns", &lex.pronouns},
      {"verb_modifiers", &lex.verb_modifiers},
      {"preambles", &lex.preamble_prefixes},
  };
  for (const Section& section : parse_sections(text)) {
    if (section.name == "acronyms") {
      for (const auto& [line_no, line] : section.lines) {
        std::string key, value;
        if (!split_key_value(line, key, value) || key.empty()) {
          throw LexiconError("line " + std::to_string(line_no) +
                             ": acronym entries read 'token = expansion words'");
        }
        std::vector<std::string> words;
        for (const auto& w : split_words(value)) words.push_back(lowercase(w));
        lex.acronyms[lowercase(key)] = std::move(words);
      }
      continue;
    }
    const auto it = word_sections.find(section.name);
    if (it == word_sections.end()) {
      throw LexiconError("line " + std::to_string(section.line) + ": unknown lexicon section '" +
                         section.name + "'");
    }
    for (const auto& [line_no, line] : section.lines) {
      for (const auto& word : split_words(line)) it->second->insert(lowercase(word));
    }
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LexiconError("cannot read lexicon " + file.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse(text);
}

const Lexicon& Lexicon::default_lexicon() {
  static const Lexicon lex = parse(default_lexicon_text());
  return lex;
}

bool Lexicon::in_any_word_set(const std::string& lower) const {
  for (const auto* set : {&verbs, &nouns, &prepositions, &determiners, &conjunctions, &pronouns,
                          &verb_modifiers}) {
    if (set->count(lower)) return true;
  }
  return false;
}

bool is_plural(std::string_view lower_term) {
  if (lower_term.size() < 2 || lower_term.back() != 's') return false;
  if (lower_term[lower_term.size() - 2] == 's') return false;
  return std::find(kSingularEndingInS.begin(), kSingularEndingInS.end(), lower_term) ==
         kSingularEndingInS.end();
}

GrammarPattern rule_tag(const SplitName& split, const Lexicon& lex) {
  const std::size_t n = split.terms.size();
  if (n == 0) throw EmptyInput("cannot tag a name without terms");

  std::vector<std::optional<Tag>> tags(n);
  std::size_t head = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = split.terms[i].lower;
    if (all_digits(w)) {
      tags[i] = Tag::D;
    } else if (lex.is_acronym(w)) {
      // Nominal; resolved to N or NM below.
    } else if (lex.prepositions.count(w)) {
      tags[i] = Tag::P;
    } else if (lex.determiners.count(w)) {
      tags[i] = Tag::DT;
    } else if (lex.conjunctions.count(w)) {
      tags[i] = Tag::CJ;
    } else if (lex.pronouns.count(w)) {
      tags[i] = Tag::PR;
    } else if (lex.verb_modifiers.count(w)) {
      tags[i] = Tag::VM;
    } else if (i == 0 && n > 1 && lex.preamble_prefixes.count(w)) {
      tags[i] = Tag::PRE;
      head = 1;
    }
  }

  if (head < n && !tags[head]) {
    const std::string& w = split.terms[head].lower;
    const bool single = n == 1;
    if (lex.verbs.count(w) && !lex.is_acronym(w) && !(single && lex.nouns.count(w))) {
      tags[head] = Tag::V;
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    if (tags[k]) continue;
    const bool modifies_next = k + 1 < n && lexeme::is_nominal(*tags[k + 1]);
    if (modifies_next) {
      tags[k] = Tag::NM;
    } else {
      const std::string& w = split.terms[k].lower;
      tags[k] = all_alpha(w) && is_plural(w) && !lex.is_acronym(w) ? Tag::NPL : Tag::N;
    }
  }

  std::vector<Tag> out;
  out.reserve(n);
  for (const auto& t : tags) out.push_back(*t);
  return GrammarPattern(std::move(out));
}

std::string_view lint_code_name(LintCode code) {
  switch (code) {
    case LintCode::NotVerbFirst: return "NotVerbFirst";
    case LintCode::EndsWithVerb: return "EndsWithVerb";
    case LintCode::SingleAmbiguousTerm: return "SingleAmbiguousTerm";
    case LintCode::ContainsAbbreviation: return "ContainsAbbreviation";
    case LintCode::PluralMismatch: return "PluralMismatch";
  }
  return "?";
}

bool is_abbreviation(const lexeme::Term& term, const Lexicon& lex) {
  if (lex.is_acronym(term.lower)) return true;
  return term.raw.size() >= 2 && term.raw.size() <= 5 && all_caps(term.raw) &&
         !lex.in_any_word_set(term.lower);
}

std::vector<LintFinding> lint_name(const SplitName& split, const GrammarPattern& pattern,
                                   const Lexicon& lex) {
  if (lexeme::compare_arity(split, pattern) != lexeme::Arity::Equal) {
    throw MismatchedPattern("pattern " + pattern.to_string() + " has " +
                            std::to_string(pattern.size()) + " tags but '" + split.original +
                            "' has " + std::to_string(split.word_count()) + " words");
  }
  std::vector<LintFinding> findings;
  const auto& tags = pattern.tags();

  if (tags.front() != Tag::V && tags.front() != Tag::VM) {
    findings.push_back({LintCode::NotVerbFirst, 0,
                        "name starts with " + std::string(lexeme::mnemonic(tags.front())) +
                            " instead of a verb"});
  }
  if (tags.size() > 1 && tags.back() == Tag::V) {
    findings.push_back({LintCode::EndsWithVerb, tags.size() - 1, "name ends with a verb"});
  }
  if (split.word_count() == 1 && tags.front() != Tag::V) {
    findings.push_back({LintCode::SingleAmbiguousTerm, 0,
                        "single-term name '" + split.terms.front().raw + "' does not state an action"});
  }
  for (std::size_t i = 0; i < split.terms.size(); ++i) {
    if (is_abbreviation(split.terms[i], lex)) {
      std::string message = "'" + split.terms[i].raw + "' is an abbreviation";
      const auto it = lex.acronyms.find(split.terms[i].lower);
      if (it != lex.acronyms.end() && !it->second.empty()) {
        message += " of '";
        for (std::size_t w = 0; w < it->second.size(); ++w) {
          message += (w ? " " : "") + it->second[w];
        }
        message += "'";
      }
      findings.push_back({LintCode::ContainsAbbreviation, i, std::move(message)});
    }
  }
  for (std::size_t i = 0; i < split.terms.size(); ++i) {
    const std::string& w = split.terms[i].lower;
    if (!all_alpha(w) || lex.is_acronym(w)) continue;
    if (tags[i] == Tag::N && is_plural(w)) {
      findings.push_back({LintCode::PluralMismatch, i, "'" + split.terms[i].raw + "' is plural but tagged N"});
    } else if (tags[i] == Tag::NPL && !is_plural(w)) {
      findings.push_back({LintCode::PluralMismatch, i, "'" + split.terms[i].raw + "' is singular but tagged NPL"});
    }
  }
  return findings;
}

}  // namespace namegauge::tagger
