// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCOSRISK_CSV_HPP_
#define PCOSRISK_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace pcosrisk::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: comma separated, double-quoted fields with "" escapes,
// LF or CRLF line endings. A UTF-8 byte-order mark is skipped. Blank lines
// are ignored. Throws Error(kValidation) on unterminated quotes.
Table Parse(std::string_view text);

// Quotes a field only when it contains a comma, quote or newline.
std::string Escape(std::string_view field);

std::string JoinRow(const std::vector<std::string>& fields);

// Formats a double with enough digits to round-trip.
std::string FormatNumber(double value);

}  // namespace pcosrisk::csv

#endif  // PCOSRISK_CSV_HPP_
