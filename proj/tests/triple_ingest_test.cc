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

#include "aquasub/triple_ingest.h"

#include <gtest/gtest.h>

#include <random>

#include "aquasub/error.h"
#include "aquasub/text.h"
#include "test_support.h"

namespace aquasub {
namespace {

using testsupport::FixturePath;
using testsupport::JoinLines;

constexpr const char *kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";

ErrorCode CodeOf(auto &&fn, std::size_t *line = nullptr) {
  try {
    fn();
  } catch (const Error &e) {
    if (line) *line = e.line();
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

TEST(ParseNTriplesTest, TypedNumericLiteral) {
  auto result = ParseNTriples("<i:butter> <p:hasFat> \"81.1\"^^<x:decimal> .");
  ASSERT_EQ(result.triples.size(), 1u);
  const RawTriple &t = result.triples[0];
  EXPECT_EQ(t.subject, "i:butter");
  EXPECT_EQ(t.predicate, "p:hasFat");
  EXPECT_EQ(t.line, 1u);
  const auto &lit = std::get<Literal>(t.object);
  ASSERT_TRUE(lit.is_number());
  EXPECT_EQ(lit.number(), 81.1);
  EXPECT_FALSE(lit.unit);
}

TEST(ParseNTriplesTest, CommentsAndBlankLinesYieldNothing) {
  EXPECT_TRUE(ParseNTriples("# comment\n\n").triples.empty());
  EXPECT_TRUE(ParseNTriples("").triples.empty());
}

TEST(ParseNTriplesTest, IriObjectsAndEscapes) {
  auto result = ParseNTriples(
      "<a> <b> <c> .\n"
      "<a> <label> \"say \\\"hi\\\"\\n\\tback\\\\slash\" .  # trailing comment\n");
  ASSERT_EQ(result.triples.size(), 2u);
  EXPECT_EQ(std::get<std::string>(result.triples[0].object), "c");
  EXPECT_EQ(std::get<Literal>(result.triples[1].object).text(),
            "say \"hi\"\n\tback\\slash");
  EXPECT_EQ(result.triples[1].line, 2u);
}

TEST(ParseNTriplesTest, UnitDatatypeBecomesUnit) {
  auto result =
      ParseNTriples("<a> <wf> \"4000\"^^<http://example.org/unit#m3_per_ton> .");
  const auto &lit = std::get<Literal>(result.triples[0].object);
  EXPECT_EQ(lit.number(), 4000.0);
  EXPECT_EQ(lit.unit, "m3_per_ton");
}

TEST(ParseNTriplesTest, StringDatatypeStaysText) {
  auto result = ParseNTriples(
      "<a> <b> \"12\"^^<http://www.w3.org/2001/XMLSchema#string> .");
  const auto &lit = std::get<Literal>(result.triples[0].object);
  EXPECT_FALSE(lit.is_number());
  EXPECT_EQ(lit.text(), "12");
}

TEST(ParseNTriplesTest, RejectsUnsupportedSyntaxWithLine) {
  const char *bad[] = {
      "<a> <b> <c>",             // missing dot
      "<a> <b> \"open .",        // unbalanced quote
      "<a <b> <c> .",            // unbalanced angle
      "_:x <b> <c> .",           // blank node subject
      "<a> <b> _:y .",           // blank node object
      "<a> <b> \"chat\"@fr .",   // language tag
      "<a> <b> <c> . extra",     // trailing content
      "<a> <b> \"x\"^^<" "http://www.w3.org/2001/XMLSchema#integer> .",
  };
  for (const char *line : bad) {
    std::size_t at = 0;
    std::string doc = std::string("<ok> <ok> <ok> .\n# fine\n") + line + "\n";
    EXPECT_EQ(CodeOf([&] { ParseNTriples(doc); }, &at), ErrorCode::kMalformedLine)
        << line;
    EXPECT_EQ(at, 3u) << line;
  }
}

TEST(ParseNTriplesTest, LenientModeSkipsAndReports) {
  std::string doc = "<a> <b> <c> .\n<a> <b>\n<d> <e> \"1\"^^<x:decimal> .\n_:z <b> <c> .\n";
  auto result = ParseNTriples(doc, ParseMode::kLenient);
  ASSERT_EQ(result.triples.size(), 2u);
  ASSERT_EQ(result.errors.size(), 2u);
  EXPECT_EQ(result.errors[0].line, 2u);
  EXPECT_EQ(result.errors[1].line, 4u);
  EXPECT_EQ(result.triples[1].line, 3u);
}

TEST(WriteNTriplesTest, CanonicalForm) {
  RawTriple iri{"s", "p", std::string("o"), "", 1};
  RawTriple number{"s", "p", Literal{36.1, std::nullopt}, "", 2};
  RawTriple unit{"s", "p", Literal{900.0, "m3_per_ton"}, "", 3};
  RawTriple text{"s", "p", Literal{std::string("a\"b"), std::nullopt}, "", 4};
  std::vector<RawTriple> triples{iri, number, unit, text};
  EXPECT_EQ(WriteNTriples(triples),
            "<s> <p> <o> .\n"
            "<s> <p> \"36.1\"^^<" + std::string(kDecimal) + "> .\n"
            "<s> <p> \"900\"^^<unit:m3_per_ton> .\n"
            "<s> <p> \"a\\\"b\" .\n");
}

TEST(NTriplesRoundTripTest, GeneratedCorpusIsAFixedPoint) {
  auto lines = testsupport::GenerateNTriplesLines(2000, 11);
  auto first = ParseNTriples(JoinLines(lines));
  ASSERT_EQ(first.triples.size(), lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ASSERT_EQ(first.triples[i].line, i + 1);
  }
  std::string written = WriteNTriples(first.triples);
  auto second = ParseNTriples(written);
  ASSERT_EQ(second.triples.size(), first.triples.size());
  for (std::size_t i = 0; i < first.triples.size(); ++i) {
    EXPECT_EQ(second.triples[i].subject, first.triples[i].subject);
    EXPECT_EQ(second.triples[i].predicate, first.triples[i].predicate);
    EXPECT_EQ(second.triples[i].object, first.triples[i].object);
  }
  EXPECT_EQ(WriteNTriples(second.triples), written);
}

TEST(NTriplesMutationTest, EveryMutationIsLocated) {
  auto lines = testsupport::GenerateNTriplesLines(200, 5);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto corpus = lines;
    std::size_t at = rng() % corpus.size();
    std::string kind;
    corpus[at] = testsupport::MutateNTriplesLine(corpus[at], rng, &kind);
    std::size_t line = 0;
    EXPECT_EQ(CodeOf([&] { ParseNTriples(JoinLines(corpus)); }, &line),
              ErrorCode::kMalformedLine)
        << kind;
    EXPECT_EQ(line, at + 1) << kind << ": " << corpus[at];
  }
}

TEST(ParseKgtkEdgesTest, SingleRow) {
  auto rows = ParseKgtkEdges(
      "id\tnode1\tlabel\tnode2\ne1\ti:cream\thas_water_footprint\t4000\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (KgtkEdgeRow{"e1", "i:cream", "has_water_footprint", "4000"}));
}

TEST(ParseKgtkEdgesTest, Errors) {
  std::size_t line = 0;
  EXPECT_EQ(CodeOf([] { ParseKgtkEdges("node1\tid\tlabel\tnode2\n"); }, &line),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(line, 1u);
  EXPECT_EQ(CodeOf([] { ParseKgtkEdges(""); }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] {
              ParseKgtkEdges("id\tnode1\tlabel\tnode2\ne1\ta\tb\tc\ne1\td\te\tf\n");
            }, &line),
            ErrorCode::kDuplicateEdgeId);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(CodeOf([] { ParseKgtkEdges("id\tnode1\tlabel\tnode2\ne1\ta\tb\n"); },
                   &line),
            ErrorCode::kColumnCount);
  EXPECT_EQ(line, 2u);
  EXPECT_EQ(CodeOf([] {
              ParseKgtkEdges("id\tnode1\tlabel\tnode2\ne1\ta\tb\tc\td\n");
            }),
            ErrorCode::kColumnCount);
  EXPECT_EQ(CodeOf([] { ParseKgtkEdges("id\tnode1\tlabel\tnode2\ne1\t\tb\tc\n"); }),
            ErrorCode::kMalformedLine);
}

TEST(WriteKgtkEdgesTest, EmptyAndSingle) {
  EXPECT_EQ(WriteKgtkEdges({}), "id\tnode1\tlabel\tnode2\n");
  std::vector<KgtkEdgeRow> one{{"e1", "a", "has_fat", "3"}};
  std::string text = WriteKgtkEdges(one);
  EXPECT_EQ(SplitLines(text).size(), 2u);
  EXPECT_EQ(ParseKgtkEdges(text), one);
}

TEST(KgtkRoundTripTest, GeneratedRowsSurvive) {
  auto lines = testsupport::GenerateKgtkLines(2000, 17);
  std::string text = std::string(kKgtkHeader) + "\n" + JoinLines(lines);
  auto rows = ParseKgtkEdges(text);
  ASSERT_EQ(rows.size(), lines.size());
  EXPECT_EQ(WriteKgtkEdges(rows), text);
  // Values reach their canonical spelling after one format and stay there.
  for (const KgtkEdgeRow &row : rows) {
    TripleObject value = ParseKgtkValue(row.node2);
    std::string canonical = FormatKgtkValue(value);
    EXPECT_EQ(ParseKgtkValue(canonical), value);
    EXPECT_EQ(FormatKgtkValue(ParseKgtkValue(canonical)), canonical);
  }
}

TEST(KgtkValueTest, Forms) {
  EXPECT_EQ(std::get<std::string>(ParseKgtkValue("dairy_cream")), "dairy_cream");
  Literal num = std::get<Literal>(ParseKgtkValue("12.5[g]"));
  EXPECT_EQ(num.number(), 12.5);
  EXPECT_EQ(num.unit, "g");
  EXPECT_EQ(std::get<Literal>(ParseKgtkValue("\"a\\tb\"")).text(), "a\tb");
  EXPECT_EQ(FormatKgtkValue(Literal{std::string("x\"y"), std::nullopt}),
            "\"x\\\"y\"");
  EXPECT_THROW(ParseKgtkValue("\"open"), Error);
}

TEST(FixtureKgtkTest, IngestedFixtureHas44Rows) {
  auto rows = ParseKgtkEdges(ReadFile(FixturePath("edges.kgtk.tsv")));
  EXPECT_EQ(rows.size(), 44u);
}

TEST(ParseWfTableTest, Records) {
  auto records = ParseWfTable(
      "name,wf_m3_per_ton,source\nsoy cream,1200,fixture\n\"a, b\",10,s\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].name, "soy cream");
  EXPECT_EQ(records[0].wf_value, 1200.0);
  EXPECT_EQ(records[0].source, "fixture");
  EXPECT_EQ(records[0].line, 2u);
  EXPECT_EQ(records[1].name, "a, b");
}

TEST(ParseWfTableTest, Errors) {
  std::size_t line = 0;
  EXPECT_EQ(CodeOf([] { ParseWfTable("name,wf_m3_per_ton,source\nx,-5,s\n"); },
                   &line),
            ErrorCode::kNegativeValue);
  EXPECT_EQ(line, 2u);
  EXPECT_EQ(CodeOf([] {
              ParseWfTable("name,wf_m3_per_ton,source\nx,1,s\ny,lots,s\n");
            }, &line),
            ErrorCode::kUnparsableNumber);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(CodeOf([] { ParseWfTable("name,wf\nx,1\n"); }),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { ParseWfTable("name,wf_m3_per_ton,source\nx,1\n"); }),
            ErrorCode::kColumnCount);
  EXPECT_EQ(CodeOf([] { ParseWfTable("name,wf_m3_per_ton,source\n,1,s\n"); }),
            ErrorCode::kMalformedLine);
}

TEST(PredicateToLabelTest, Vocabulary) {
  EXPECT_EQ(PredicateToLabel("http://www.w3.org/2000/01/rdf-schema#subClassOf"),
            "subclass_of");
  EXPECT_EQ(PredicateToLabel("http://www.w3.org/2000/01/rdf-schema#label"),
            "has_label");
  EXPECT_EQ(PredicateToLabel("http://www.w3.org/2002/07/owl#sameAs"), "same_as");
  EXPECT_EQ(PredicateToLabel("http://example.org/vocab/hasWaterFootprint"),
            "has_water_footprint");
  EXPECT_EQ(PredicateToLabel("p:hasFat"), "has_fat");
  EXPECT_EQ(IriLocalName("http://example.org/food/soy_cream"), "soy_cream");
  EXPECT_EQ(IriLocalName("plain"), "plain");
}

TEST(TriplesToRowsTest, LocalNamesAndIds) {
  auto result = ParseNTriples(
      "<http://x.org/food/soy_cream> <http://x.org/v/hasFat> \"3\"^^<x:decimal> .\n"
      "<http://x.org/food/soy_cream> <http://www.w3.org/2000/01/rdf-schema#subClassOf> "
      "<http://x.org/food/plant_cream> .\n");
  auto rows = TriplesToRows(result.triples, "nt1-");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (KgtkEdgeRow{"nt1-1", "soy_cream", "has_fat", "3"}));
  EXPECT_EQ(rows[1],
            (KgtkEdgeRow{"nt1-2", "soy_cream", "subclass_of", "plant_cream"}));
}

TEST(WfRecordsToRowsTest, RawNamesKept) {
  auto rows = WfRecordsToRows(
      ParseWfTable("name,wf_m3_per_ton,source\nOat Cream (barista),900,s\n"), "wf1-");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0],
            (KgtkEdgeRow{"wf1-1", "Oat Cream (barista)", "has_water_footprint", "900"}));
}

}  // namespace
}  // namespace aquasub
