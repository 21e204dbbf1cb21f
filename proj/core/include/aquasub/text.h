// Copyright 2026 The AquaSub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AQUASUB_TEXT_H_
#define AQUASUB_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aquasub {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// Parses the whole of `text` as a finite decimal number. Leading '+' and
// surrounding whitespace are rejected.
std::optional<double> ParseNumber(std::string_view text);

// Hexadecimal float text, exact in both directions.
std::string FormatHexDouble(double value);
std::optional<double> ParseHexDouble(std::string_view text);

std::string AsciiLower(std::string_view text);

// Splits on '\n'; a trailing '\r' on each line is dropped. A final empty
// segment after the last newline is not returned.
std::vector<std::string_view> SplitLines(std::string_view text);

// One parsed CSV record: its fields and the 1-based line it starts on.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Throws Error(kMalformedLine) on an unterminated quote.
std::vector<CsvRecord> ParseCsv(std::string_view text);

// Quotes a field when it contains a comma, quote, or line break.
std::string CsvField(std::string_view field);

// Writes `contents` to `path` through a temporary sibling file and a rename,
// so readers never observe a partial file.
void WriteFileAtomic(const std::string &path, std::string_view contents);
std::string ReadFile(const std::string &path);

}  // namespace aquasub

#endif  // AQUASUB_TEXT_H_
