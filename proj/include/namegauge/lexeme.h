// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// Identifier splitting and the grammar-pattern type shared by every other
// module. A grammar pattern is an ordered list of part-of-speech tags drawn
// from a closed tagset designed for source-code identifiers; its canonical
// text form is the uppercase mnemonics joined by "," ("V,NPL").

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace namegauge::lexeme {

enum class Tag {
  N,    // noun
  NM,   // noun modifier (adjective or noun-adjunct)
  NPL,  // plural noun
  V,    // verb
  VM,   // verb modifier
  P,    // preposition
  DT,   // determiner
  CJ,   // conjunction
  PR,   // pronoun
  D,    // digit
  PRE,  // preamble
};

inline constexpr std::array<Tag, 11> kAllTags = {
    Tag::N, Tag::NM, Tag::NPL, Tag::V,  Tag::VM,  Tag::P,
    Tag::DT, Tag::CJ, Tag::PR, Tag::D, Tag::PRE};

std::string_view mnemonic(Tag tag);

// Exact, case-sensitive lookup of an uppercase mnemonic.
std::optional<Tag> tag_from_mnemonic(std::string_view text);

// True for N, NM and NPL.
bool is_nominal(Tag tag);

class GrammarPattern {
 public:
  // Throws BadPattern when `tags` is empty.
  explicit GrammarPattern(std::vector<Tag> tags);

  const std::vector<Tag>& tags() const { return tags_; }
  std::size_t size() const { return tags_.size(); }
  Tag front() const { return tags_.front(); }
  Tag back() const { return tags_.back(); }

  // Canonical form, e.g. "V,NPL".
  std::string to_string() const;

  friend bool operator==(const GrammarPattern&, const GrammarPattern&) = default;

 private:
  std::vector<Tag> tags_;
};

// Accepts "," or ";" separators, surrounding whitespace and any letter case.
// Throws BadPattern for empty input, empty components and unknown mnemonics.
GrammarPattern parse_pattern(std::string_view text);

struct Term {
  std::string raw;
  std::string lower;

  friend bool operator==(const Term&, const Term&) = default;
};

struct SplitName {
  std::string original;
  std::vector<Term> terms;
  // gaps[i] is the number of underscores between terms[i] and terms[i + 1].
  std::vector<std::size_t> gaps;
  std::size_t leading_underscores = 0;
  std::size_t trailing_underscores = 0;

  std::size_t word_count() const { return terms.size(); }

  // Reassembles the identifier from terms, gaps and underscore counts.
  std::string reconstruct() const;

  // Lowercase terms joined by single underscores.
  std::string lower_snake() const;

  std::vector<std::string> lower_terms() const;
};

// Splits on underscores, lower-to-upper case changes, acronym runs
// ("HTTPResponse" -> "HTTP", "Response") and letter/digit boundaries.
// Bytes >= 0x80 are treated as caseless letters so UTF-8 identifiers pass
// through intact.
//
// Throws InvalidIdentifier for characters outside [A-Za-z0-9_] and UTF-8,
// EmptyIdentifier when nothing but underscores remains.
SplitName split_identifier(std::string_view name);

enum class Arity { Equal, MoreTagsThanWords, FewerTagsThanWords };

std::string_view arity_name(Arity arity);

Arity compare_arity(const SplitName& split, const GrammarPattern& pattern);

// Lowercase with underscores removed; used wherever two spellings of one
// name must compare equal ("MSE" vs "mse", "loadImage" vs "load_image").
std::string normalize_name(std::string_view name);

bool is_legal_identifier(std::string_view name);

}  // namespace namegauge::lexeme
