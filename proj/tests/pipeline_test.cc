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

#include "aquasub/pipeline.h"

#include <gtest/gtest.h>

#include "aquasub/error.h"
#include "aquasub/text.h"
#include "test_support.h"

namespace aquasub {
namespace {

using testsupport::FixturePath;

std::vector<SourceText> FixtureSources() {
  return {
      {SourceKind::kNTriples, "foodon.nt", ReadFile(FixturePath("foodon.nt"))},
      {SourceKind::kKgtk, "nutrients.kgtk.tsv",
       ReadFile(FixturePath("nutrients.kgtk.tsv"))},
      {SourceKind::kWaterFootprint, "water_footprint.csv",
       ReadFile(FixturePath("water_footprint.csv"))},
  };
}

TEST(IngestTest, FixtureMatchesCommittedEdges) {
  IngestResult r = Ingest(FixtureSources());
  EXPECT_EQ(r.rows.size(), 44u);
  EXPECT_EQ(WriteKgtkEdges(r.rows), ReadFile(FixturePath("edges.kgtk.tsv")));
  ASSERT_EQ(r.report.size(), 3u);
  EXPECT_EQ(r.report[0].id_prefix, "nt1-");
  EXPECT_EQ(r.report[0].rows, 23u);
  EXPECT_EQ(r.report[1].id_prefix, "kgtk1-");
  EXPECT_EQ(r.report[1].rows, 12u);
  EXPECT_EQ(r.report[2].id_prefix, "wf1-");
  EXPECT_EQ(r.report[2].rows, 9u);
  for (const auto &row : r.rows) {
    std::string source = RowSource(row.id);
    EXPECT_TRUE(source == "nt1" || source == "kgtk1" || source == "wf1") << row.id;
  }
}

TEST(IngestTest, RowSource) {
  EXPECT_EQ(RowSource("nt1-3"), "nt1");
  EXPECT_EQ(RowSource("imputed:kgtk2-7"), "kgtk2");
  EXPECT_EQ(RowSource("e9"), "edges");
}

TEST(IngestTest, OrdinalsCountPerKind) {
  std::vector<SourceText> sources{
      {SourceKind::kKgtk, "a.tsv", "id\tnode1\tlabel\tnode2\ne1\tx\thas_fat\t1\n"},
      {SourceKind::kKgtk, "b.tsv",
       "id\tnode1\tlabel\tnode2\nimputed:e1\ty\thas_fat\t2\n"}};
  IngestResult r = Ingest(sources);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].id, "kgtk1-e1");
  EXPECT_EQ(r.rows[1].id, "imputed:kgtk2-e1");
}

TEST(IngestTest, ErrorsNameTheSourceAndLine) {
  std::vector<SourceText> sources{
      {SourceKind::kKgtk, "good.tsv", "id\tnode1\tlabel\tnode2\ne1\tx\thas_fat\t1\n"},
      {SourceKind::kNTriples, "bad.nt", "<a> <b> <c> .\n<a> <b> <c>\n"}};
  try {
    Ingest(sources);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("bad.nt"), std::string::npos);
  }
}

TEST(IngestTest, LenientModeReportsSkippedLines) {
  std::vector<SourceText> sources{
      {SourceKind::kNTriples, "mixed.nt",
       "<http://x/a> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://x/b> .\n"
       "garbage\n"}};
  IngestResult r = Ingest(sources, ParseMode::kLenient);
  EXPECT_EQ(r.rows.size(), 1u);
  ASSERT_EQ(r.report[0].skipped.size(), 1u);
  EXPECT_EQ(r.report[0].skipped[0].line, 2u);
}

TEST(AlignTest, FixtureMatchesCommittedLinks) {
  IngestResult r = Ingest(FixtureSources());
  LinkTable links = Align(r.rows);
  EXPECT_EQ(links.ToCsv(), ReadFile(FixturePath("links.csv")));
  const LinkEntry *yoghurt = links.Find("dairy yoghurt");
  ASSERT_NE(yoghurt, nullptr);
  EXPECT_EQ(yoghurt->canonical_id, "dairy_yogurt");
  EXPECT_EQ(yoghurt->method, LinkMethod::kEmbedding);
  EXPECT_EQ(links.Find("heavy dairy cream")->method, LinkMethod::kNormalized);
  EXPECT_EQ(links.Find("Butter, unsalted")->canonical_id, "butter");
}

TEST(BuildTest, FixtureMatchesCommittedSnapshot) {
  IngestResult r = Ingest(FixtureSources());
  Graph g = BuildGraph(r.rows, Align(r.rows));
  EXPECT_EQ(g.Stats(), (GraphStats{17, 7, 44}));
  EXPECT_EQ(SaveSnapshot(g), ReadFile(FixturePath("fixture.snapshot")));
}

TEST(BuildTest, DuplicatesCollapseAndBadRowsAreNamed) {
  std::vector<KgtkEdgeRow> rows{
      {"r1", "a", "subclass_of", "b"},
      {"r2", "a", "subclass_of", "b"},
      {"r3", "a", "has_fat", "2"}};
  Graph g = BuildGraph(rows, LinkTable{});
  EXPECT_EQ(g.Stats().edge_count, 2u);

  rows.push_back({"r4", "a", "has_fat", "b"});
  try {
    BuildGraph(rows, LinkTable{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("r4"), std::string::npos);
  }
}

}  // namespace
}  // namespace aquasub
