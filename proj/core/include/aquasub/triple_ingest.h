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

#ifndef AQUASUB_TRIPLE_INGEST_H_
#define AQUASUB_TRIPLE_INGEST_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aquasub {

// A literal object: exactly one of a string or a decimal number, with an
// optional unit tag.
struct Literal {
  std::variant<std::string, double> value;
  std::optional<std::string> unit;

  bool is_number() const { return std::holds_alternative<double>(value); }
  double number() const { return std::get<double>(value); }
  const std::string &text() const { return std::get<std::string>(value); }

  friend bool operator==(const Literal &, const Literal &) = default;
};

// An IRI (or CURIE) object is held as a plain string.
using TripleObject = std::variant<std::string, Literal>;

struct RawTriple {
  std::string subject;
  std::string predicate;
  TripleObject object;
  // Datatype IRI of a typed literal; empty for plain literals and IRIs.
  std::string datatype;
  std::size_t line = 0;

  friend bool operator==(const RawTriple &, const RawTriple &) = default;
};

enum class ParseMode { kStrict, kLenient };

struct ParseIssue {
  std::size_t line = 0;
  std::string reason;
};

struct NTriplesResult {
  std::vector<RawTriple> triples;
  // Only populated in lenient mode; strict mode throws on the first issue.
  std::vector<ParseIssue> errors;
};

// Parses the supported N-Triples subset: IRI subject and predicate, IRI or
// (typed) literal object, '#' comments and blank lines. Blank nodes,
// language tags and multi-line literals are rejected.
NTriplesResult ParseNTriples(std::string_view text,
                             ParseMode mode = ParseMode::kStrict);

// Canonical N-Triples text, one line per triple, '\n' terminated.
std::string WriteNTriples(std::span<const RawTriple> triples);

struct KgtkEdgeRow {
  std::string id;
  std::string node1;
  std::string label;
  std::string node2;

  friend bool operator==(const KgtkEdgeRow &, const KgtkEdgeRow &) = default;
};

inline constexpr std::string_view kKgtkHeader = "id\tnode1\tlabel\tnode2";

std::vector<KgtkEdgeRow> ParseKgtkEdges(std::string_view text);
std::string WriteKgtkEdges(std::span<const KgtkEdgeRow> rows);

// KGTK node2 values: a quoted string is a string literal, a decimal number
// (optionally followed by "[unit]") is a numeric literal, anything else is a
// node id.
TripleObject ParseKgtkValue(std::string_view node2);
std::string FormatKgtkValue(const TripleObject &value);

struct WfRecord {
  std::string name;
  double wf_value = 0;  // m3 per ton
  std::string source;
  std::size_t line = 0;
};

inline constexpr std::string_view kWfHeader = "name,wf_m3_per_ton,source";

std::vector<WfRecord> ParseWfTable(std::string_view text);

// Local name of an IRI: the text after the last '/', '#' or ':'.
std::string_view IriLocalName(std::string_view iri);

// Maps an RDF predicate onto a relation label: well-known vocabulary terms
// (rdfs:subClassOf, rdfs:label, owl:sameAs) by table, anything else by
// converting the camelCase local name to snake_case.
std::string PredicateToLabel(std::string_view predicate_iri);

// Conversions used by the ingest stage to merge every source into KGTK rows.
// Generated ids are `<prefix><n>` with n counting from 1.
std::vector<KgtkEdgeRow> TriplesToRows(std::span<const RawTriple> triples,
                                       std::string_view id_prefix);
std::vector<KgtkEdgeRow> WfRecordsToRows(std::span<const WfRecord> records,
                                         std::string_view id_prefix);

}  // namespace aquasub

#endif  // AQUASUB_TRIPLE_INGEST_H_
