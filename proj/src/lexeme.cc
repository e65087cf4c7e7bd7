// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/lexeme.h"

#include <algorithm>
#include <cctype>

#include "namegauge/errors.h"

namespace namegauge::lexeme {

namespace {

enum class CharClass { Upper, Lower, Digit };

bool is_high_byte(char c) { return static_cast<unsigned char>(c) >= 0x80; }

CharClass classify(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (std::isdigit(u)) return CharClass::Digit;
  if (std::isupper(u)) return CharClass::Upper;
  return CharClass::Lower;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (!is_high_byte(c)) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one underscore-free chunk at case and digit boundaries.
void split_chunk(std::string_view chunk, std::vector<std::string_view>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < chunk.size(); ++i) {
    const CharClass prev = classify(chunk[i - 1]);
    const CharClass cur = classify(chunk[i]);
    bool boundary = false;
    if ((prev == CharClass::Digit) != (cur == CharClass::Digit)) {
      boundary = true;
    } else if (prev == CharClass::Lower && cur == CharClass::Upper) {
      boundary = true;
    } else if (prev == CharClass::Upper && cur == CharClass::Upper &&
               i + 1 < chunk.size() && classify(chunk[i + 1]) == CharClass::Lower) {
      // Acronym run: the last capital starts the next word.
      boundary = true;
    }
    if (boundary) {
      out.push_back(chunk.substr(start, i - start));
      start = i;
    }
  }
  out.push_back(chunk.substr(start));
}

}  // namespace

std::string_view mnemonic(Tag tag) {
  switch (tag) {
    case Tag::N: return "N";
    case Tag::NM: return "NM";
    case Tag::NPL: return "NPL";
    case Tag::V: return "V";
    case Tag::VM: return "VM";
    case Tag::P: return "P";
    case Tag::DT: return "DT";
    case Tag::CJ: return "CJ";
    case Tag::PR: return "PR";
    case Tag::D: return "D";
    case Tag::PRE: return "PRE";
  }
  return "?";
}

std::optional<Tag> tag_from_mnemonic(std::string_view text) {
  for (Tag tag : kAllTags) {
    if (mnemonic(tag) == text) return tag;
  }
  return std::nullopt;
}

bool is_nominal(Tag tag) { return tag == Tag::N || tag == Tag::NM || tag == Tag::NPL; }

GrammarPattern::GrammarPattern(std::vector<Tag> tags) : tags_(std::move(tags)) {
  if (tags_.empty()) throw BadPattern("grammar pattern must contain at least one tag");
}

std::string GrammarPattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (i > 0) out += ',';
    out += mnemonic(tags_[i]);
  }
  return out;
}

GrammarPattern parse_pattern(std::string_view text) {
  if (trim(text).empty()) throw BadPattern("empty grammar pattern");
  std::vector<Tag> tags;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = text.find_first_of(",;", start);
    const std::string_view piece =
        trim(text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start));
    if (piece.empty()) {
      throw BadPattern("empty tag in grammar pattern '" + std::string(text) + "'");
    }
    std::string upper(piece);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const auto tag = tag_from_mnemonic(upper);
    if (!tag) {
      throw BadPattern("unknown tag '" + std::string(piece) + "' in grammar pattern '" +
                       std::string(text) + "'");
    }
    tags.push_back(*tag);
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return GrammarPattern(std::move(tags));
}

std::string SplitName::reconstruct() const {
  std::string out(leading_underscores, '_');
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out += terms[i].raw;
    if (i < gaps.size()) out.append(gaps[i], '_');
  }
  out.append(trailing_underscores, '_');
  return out;
}

std::string SplitName::lower_snake() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += '_';
    out += terms[i].lower;
  }
  return out;
}

std::vector<std::string> SplitName::lower_terms() const {
  std::vector<std::string> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.lower);
  return out;
}

SplitName split_identifier(std::string_view name) {
  for (char c : name) {
    if (c != '_' && !is_high_byte(c) && !std::isalnum(static_cast<unsigned char>(c))) {
      throw InvalidIdentifier("'" + std::string(name) + "' is not an identifier");
    }
  }
  SplitName split;
  split.original = std::string(name);

  std::size_t begin = 0;
  while (begin < name.size() && name[begin] == '_') ++begin;
  if (begin == name.size()) {
    throw EmptyIdentifier("identifier '" + std::string(name) + "' has no letters or digits");
  }
  std::size_t end = name.size();
  while (name[end - 1] == '_') --end;
  split.leading_underscores = begin;
  split.trailing_underscores = name.size() - end;

  std::vector<std::string_view> pieces;
  std::size_t pos = begin;
  std::size_t run = 0;  // underscores before the current chunk
  while (pos < end) {
    std::size_t stop = name.find('_', pos);
    if (stop == std::string_view::npos || stop > end) stop = end;
    const std::size_t before = pieces.size();
    split_chunk(name.substr(pos, stop - pos), pieces);
    for (std::size_t i = std::max<std::size_t>(before, 1); i < pieces.size(); ++i) {
      split.gaps.push_back(i == before ? run : 0);
    }
    std::size_t next = stop;
    while (next < end && name[next] == '_') ++next;
    run = next - stop;
    pos = next;
  }

  split.terms.reserve(pieces.size());
  for (std::string_view p : pieces) split.terms.push_back({std::string(p), to_lower(p)});
  return split;
}

std::string_view arity_name(Arity arity) {
  switch (arity) {
    case Arity::Equal: return "Equal";
    case Arity::MoreTagsThanWords: return "MoreTagsThanWords";
    case Arity::FewerTagsThanWords: return "FewerTagsThanWords";
  }
  return "?";
}

Arity compare_arity(const SplitName& split, const GrammarPattern& pattern) {
  if (pattern.size() == split.word_count()) return Arity::Equal;
  return pattern.size() > split.word_count() ? Arity::MoreTagsThanWords
                                             : Arity::FewerTagsThanWords;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '_') continue;
    out += is_high_byte(c) ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_legal_identifier(std::string_view name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return c == '_' || is_high_byte(c) || std::isalnum(static_cast<unsigned char>(c));
  });
}

}  // namespace namegauge::lexeme
