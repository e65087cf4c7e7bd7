// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace namegauge {

// A "[name]" header followed by its content lines. Used by the lexicon and
// rater configuration files. Blank lines and lines starting with '#' are
// dropped; remaining lines are whitespace-trimmed.
struct Section {
  std::string name;
  std::size_t line = 0;  // 1-based line of the header
  std::vector<std::pair<std::size_t, std::string>> lines;
};

// Content before the first header goes into a section with an empty name.
std::vector<Section> parse_sections(std::string_view text);

// Splits "key = value" at the first '='; both sides trimmed. Returns false
// when the line has no '='.
bool split_key_value(std::string_view line, std::string& key, std::string& value);

std::string_view trim_view(std::string_view s);

}  // namespace namegauge
