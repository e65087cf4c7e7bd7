// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

// RFC 4180 reading and writing.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace namegauge::csv {

using Row = std::vector<std::string>;

// Reads every record, honoring quoted fields with embedded commas, quotes and
// line breaks. Accepts LF or CRLF record terminators. Throws CsvError on an
// unterminated quoted field.
std::vector<Row> read(std::istream& in);

std::string quote_field(std::string_view field);

// One record terminated by CRLF, as RFC 4180 prescribes.
void write_row(std::ostream& out, const Row& row);

}  // namespace namegauge::csv
