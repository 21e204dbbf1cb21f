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

#include "aquasub/text.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "aquasub/error.h"

namespace aquasub {
namespace {

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(3.0), "3");
  EXPECT_EQ(FormatNumber(36.1), "36.1");
  EXPECT_EQ(FormatNumber(0.1 + 0.2), "0.30000000000000004");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    double v = std::ldexp(static_cast<double>(rng() >> 11), -40);
    EXPECT_EQ(ParseNumber(FormatNumber(v)), v);
  }
}

TEST(ParseNumberTest, AcceptsOnlyWholeFiniteDecimals) {
  EXPECT_EQ(ParseNumber("81.1"), 81.1);
  EXPECT_EQ(ParseNumber("-2"), -2.0);
  EXPECT_EQ(ParseNumber("1e3"), 1000.0);
  EXPECT_FALSE(ParseNumber(""));
  EXPECT_FALSE(ParseNumber("+1"));
  EXPECT_FALSE(ParseNumber(" 1"));
  EXPECT_FALSE(ParseNumber("1 "));
  EXPECT_FALSE(ParseNumber("1.2.3"));
  EXPECT_FALSE(ParseNumber("inf"));
  EXPECT_FALSE(ParseNumber("nan"));
  EXPECT_FALSE(ParseNumber("1e999"));
}

TEST(HexDoubleTest, ExactInBothDirections) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, -123456.789,
                   std::numeric_limits<double>::denorm_min()}) {
    auto back = ParseHexDouble(FormatHexDouble(v));
    ASSERT_TRUE(back);
    EXPECT_EQ(std::signbit(*back), std::signbit(v));
    EXPECT_EQ(*back, v);
  }
  EXPECT_FALSE(ParseHexDouble("zz"));
}

TEST(SplitLinesTest, DropsCarriageReturnsAndFinalEmptySegment) {
  auto lines = SplitLines("a\r\nb\n\nc\n");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[1], "b");
  EXPECT_EQ(lines[2], "");
  EXPECT_EQ(lines[3], "c");
  EXPECT_TRUE(SplitLines("").empty());
  EXPECT_EQ(SplitLines("x").size(), 1u);
}

TEST(ParseCsvTest, QuotedFieldsAndLineNumbers) {
  auto records = ParseCsv(
      "name,wf\n\"Butter, unsalted\",5550\n\"say \"\"hi\"\"\",1\n\n"
      "\"two\nlines\",2\nlast,3");
  ASSERT_EQ(records.size(), 5u);
  EXPECT_EQ(records[1].fields[0], "Butter, unsalted");
  EXPECT_EQ(records[1].line, 2u);
  EXPECT_EQ(records[2].fields[0], "say \"hi\"");
  EXPECT_EQ(records[3].fields[0], "two\nlines");
  EXPECT_EQ(records[3].line, 5u);
  EXPECT_EQ(records[4].line, 7u);
  EXPECT_EQ(records[4].fields[1], "3");
}

TEST(ParseCsvTest, UnterminatedQuoteIsAnError) {
  try {
    ParseCsv("a,b\n\"open,1\n");
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(CsvFieldTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"x\""), "\"say \"\"x\"\"\"");
  auto back = ParseCsv(CsvField("multi\nline") + "," + CsvField("q\"") + "\n");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].fields[0], "multi\nline");
  EXPECT_EQ(back[0].fields[1], "q\"");
}

TEST(FileTest, AtomicWriteReplacesContents) {
  auto dir = std::filesystem::temp_directory_path() / "aquasub_text_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "out.txt").string();
  WriteFileAtomic(path, "first");
  WriteFileAtomic(path, "second");
  EXPECT_EQ(ReadFile(path), "second");
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().filename(), "out.txt");
  }
  std::filesystem::remove_all(dir);
}

TEST(FileTest, MissingFileIsAnIoError) {
  try {
    ReadFile("/nonexistent/aquasub/file");
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ErrorTest, MessageCarriesCodeAndLine) {
  Error e(ErrorCode::kColumnCount, "expected 4 columns", 7);
  EXPECT_EQ(std::string(e.what()), "column_count at line 7: expected 4 columns");
  Error plain(ErrorCode::kUnknownNode, "no x");
  EXPECT_EQ(std::string(plain.what()), "unknown_node: no x");
}

}  // namespace
}  // namespace aquasub
