// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include "namegauge/sectioned_text.h"

#include <cctype>

namespace namegauge {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Section> parse_sections(std::string_view text) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim_view(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      sections.push_back({std::string(trim_view(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    if (sections.empty()) sections.push_back({"", 0, {}});
    sections.back().lines.emplace_back(line_no, std::string(line));
  }
  return sections;
}

bool split_key_value(std::string_view line, std::string& key, std::string& value) {
  const std::size_t eq = line.find('=');
  if (eq == std::string_view::npos) return false;
  key = std::string(trim_view(line.substr(0, eq)));
  value = std::string(trim_view(line.substr(eq + 1)));
  return true;
}

}  // namespace namegauge
