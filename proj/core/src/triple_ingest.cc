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

#include <array>
#include <unordered_set>

#include "aquasub/error.h"
#include "aquasub/text.h"

namespace aquasub {

namespace {

constexpr std::string_view kXsdDecimal =
    "http://www.w3.org/2001/XMLSchema#decimal";

bool IsSpace(char c) { return c == ' ' || c == '\t'; }

bool IsNumericDatatype(std::string_view local) {
  static constexpr std::array<std::string_view, 9> kNumeric = {
      "decimal", "double",  "float",
      "integer", "int",     "long",
      "short",   "nonNegativeInteger", "positiveInteger"};
  for (auto name : kNumeric) {
    if (local == name) return true;
  }
  return false;
}

// Cursor over one N-Triples line. Every failure throws kMalformedLine.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t number)
      : line_(line), number_(number) {}

  RawTriple Parse() {
    RawTriple triple;
    triple.line = number_;
    triple.subject = ParseSubjectOrPredicate("subject");
    RequireSpace();
    triple.predicate = ParseSubjectOrPredicate("predicate");
    RequireSpace();
    ParseObject(triple);
    SkipSpace();
    if (pos_ >= line_.size() || line_[pos_] != '.') {
      Fail("missing terminal dot");
    }
    ++pos_;
    SkipSpace();
    if (pos_ < line_.size() && line_[pos_] != '#') {
      Fail("unexpected content after terminal dot");
    }
    return triple;
  }

 private:
  [[noreturn]] void Fail(const std::string &reason) const {
    throw Error(ErrorCode::kMalformedLine, reason, number_);
  }

  void SkipSpace() {
    while (pos_ < line_.size() && IsSpace(line_[pos_])) ++pos_;
  }

  void RequireSpace() {
    if (pos_ >= line_.size() || !IsSpace(line_[pos_])) {
      Fail("expected whitespace between terms");
    }
    SkipSpace();
  }

  std::string ParseIri() {
    // line_[pos_] == '<'
    std::size_t start = ++pos_;
    while (pos_ < line_.size() && line_[pos_] != '>') {
      char c = line_[pos_];
      if (IsSpace(c) || c == '<' || c == '"') Fail("unbalanced angle bracket");
      ++pos_;
    }
    if (pos_ >= line_.size()) Fail("unbalanced angle bracket");
    std::string iri(line_.substr(start, pos_ - start));
    ++pos_;
    if (iri.empty()) Fail("empty IRI");
    return iri;
  }

  std::string ParseSubjectOrPredicate(const char *what) {
    if (pos_ >= line_.size()) Fail(std::string("missing ") + what);
    if (line_.compare(pos_, 2, "_:") == 0) {
      Fail("blank nodes are not supported");
    }
    if (line_[pos_] != '<') Fail(std::string("expected IRI as ") + what);
    return ParseIri();
  }

  void ParseObject(RawTriple &triple) {
    if (pos_ >= line_.size()) Fail("missing object");
    char c = line_[pos_];
    if (c == '<') {
      triple.object = ParseIri();
      return;
    }
    if (line_.compare(pos_, 2, "_:") == 0) {
      Fail("blank nodes are not supported");
    }
    if (c != '"') Fail("expected IRI or literal as object");

    std::string lexical;
    ++pos_;
    bool closed = false;
    while (pos_ < line_.size()) {
      char ch = line_[pos_++];
      if (ch == '"') {
        closed = true;
        break;
      }
      if (ch != '\\') {
        lexical.push_back(ch);
        continue;
      }
      if (pos_ >= line_.size()) break;
      char esc = line_[pos_++];
      switch (esc) {
        case '"': lexical.push_back('"'); break;
        case '\\': lexical.push_back('\\'); break;
        case 'n': lexical.push_back('\n'); break;
        case 't': lexical.push_back('\t'); break;
        case 'r': lexical.push_back('\r'); break;
        default: Fail(std::string("unsupported escape \\") + esc);
      }
    }
    if (!closed) Fail("unbalanced quotes");

    Literal literal{lexical, std::nullopt};
    if (pos_ < line_.size() && line_[pos_] == '@') {
      Fail("language tags are not supported");
    }
    if (line_.compare(pos_, 2, "^^") == 0) {
      pos_ += 2;
      if (pos_ >= line_.size() || line_[pos_] != '<') {
        Fail("expected datatype IRI after ^^");
      }
      triple.datatype = ParseIri();
      std::string_view local = IriLocalName(triple.datatype);
      if (IsNumericDatatype(local)) {
        auto number = ParseNumber(lexical);
        if (!number) Fail("invalid numeric literal \"" + lexical + "\"");
        literal.value = *number;
      } else if (local != "string") {
        // Any other datatype is read as a unit when the lexical form is a
        // number, e.g. "4000"^^<unit:m3_per_ton>.
        if (auto number = ParseNumber(lexical)) {
          literal.value = *number;
          literal.unit = std::string(local);
        }
      }
    }
    triple.object = std::move(literal);
  }

  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

std::string EscapeQuoted(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (IsSpace(s.front()) || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (IsSpace(s.back()) || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

NTriplesResult ParseNTriples(std::string_view text, ParseMode mode) {
  NTriplesResult result;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    try {
      result.triples.push_back(LineParser(line, i + 1).Parse());
    } catch (const Error &e) {
      if (mode == ParseMode::kStrict) throw;
      result.errors.push_back({e.line(), e.detail()});
    }
  }
  return result;
}

std::string WriteNTriples(std::span<const RawTriple> triples) {
  std::string out;
  for (const RawTriple &t : triples) {
    out += '<';
    out += t.subject;
    out += "> <";
    out += t.predicate;
    out += "> ";
    if (const auto *iri = std::get_if<std::string>(&t.object)) {
      out += '<';
      out += *iri;
      out += '>';
    } else {
      const Literal &lit = std::get<Literal>(t.object);
      out += '"';
      if (lit.is_number()) {
        out += FormatNumber(lit.number());
      } else {
        out += EscapeQuoted(lit.text());
      }
      out += '"';
      std::string datatype = t.datatype;
      if (datatype.empty() && lit.is_number()) {
        datatype = lit.unit ? "unit:" + *lit.unit : std::string(kXsdDecimal);
      }
      if (!datatype.empty()) {
        out += "^^<";
        out += datatype;
        out += '>';
      }
    }
    out += " .\n";
  }
  return out;
}

std::vector<KgtkEdgeRow> ParseKgtkEdges(std::string_view text) {
  auto lines = SplitLines(text);
  if (lines.empty() || lines.front() != kKgtkHeader) {
    throw Error(ErrorCode::kMalformedHeader,
                "expected header \"id<TAB>node1<TAB>label<TAB>node2\"", 1);
  }
  std::vector<KgtkEdgeRow> rows;
  rows.reserve(lines.size() - 1);
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::size_t number = i + 1;
    std::array<std::string_view, 4> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (count < fields.size()) {
        fields[count] = line.substr(
            start, tab == std::string_view::npos ? line.size() - start
                                                 : tab - start);
      }
      ++count;
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (count != 4) {
      throw Error(ErrorCode::kColumnCount,
                  "expected 4 columns, found " + std::to_string(count), number);
    }
    for (auto f : fields) {
      if (f.empty()) throw Error(ErrorCode::kMalformedLine, "empty field", number);
    }
    if (!seen.insert(fields[0]).second) {
      throw Error(ErrorCode::kDuplicateEdgeId,
                  "duplicate edge id " + std::string(fields[0]), number);
    }
    rows.push_back({std::string(fields[0]), std::string(fields[1]),
                    std::string(fields[2]), std::string(fields[3])});
  }
  return rows;
}

std::string WriteKgtkEdges(std::span<const KgtkEdgeRow> rows) {
  std::string out(kKgtkHeader);
  out += '\n';
  for (const auto &row : rows) {
    out += row.id;
    out += '\t';
    out += row.node1;
    out += '\t';
    out += row.label;
    out += '\t';
    out += row.node2;
    out += '\n';
  }
  return out;
}

TripleObject ParseKgtkValue(std::string_view node2) {
  if (!node2.empty() && node2.front() == '"') {
    if (node2.size() < 2 || node2.back() != '"') {
      throw Error(ErrorCode::kInvalidEdge,
                  "unterminated string literal " + std::string(node2));
    }
    std::string text;
    for (std::size_t i = 1; i + 1 < node2.size(); ++i) {
      char c = node2[i];
      if (c != '\\') {
        text.push_back(c);
        continue;
      }
      if (i + 2 >= node2.size()) {
        throw Error(ErrorCode::kInvalidEdge,
                    "dangling escape in " + std::string(node2));
      }
      char esc = node2[++i];
      switch (esc) {
        case '"': text.push_back('"'); break;
        case '\\': text.push_back('\\'); break;
        case 'n': text.push_back('\n'); break;
        case 't': text.push_back('\t'); break;
        case 'r': text.push_back('\r'); break;
        default:
          throw Error(ErrorCode::kInvalidEdge,
                      std::string("unsupported escape \\") + esc);
      }
    }
    return Literal{std::move(text), std::nullopt};
  }
  std::string_view number_part = node2;
  std::optional<std::string> unit;
  if (!node2.empty() && node2.back() == ']') {
    std::size_t open = node2.find('[');
    if (open != std::string_view::npos && open + 1 < node2.size() - 1) {
      number_part = node2.substr(0, open);
      unit = std::string(node2.substr(open + 1, node2.size() - open - 2));
    }
  }
  if (auto number = ParseNumber(number_part)) {
    return Literal{*number, std::move(unit)};
  }
  return std::string(node2);
}

std::string FormatKgtkValue(const TripleObject &value) {
  if (const auto *node = std::get_if<std::string>(&value)) return *node;
  const Literal &lit = std::get<Literal>(value);
  if (lit.is_number()) {
    std::string out = FormatNumber(lit.number());
    if (lit.unit) out += "[" + *lit.unit + "]";
    return out;
  }
  return "\"" + EscapeQuoted(lit.text()) + "\"";
}

std::vector<WfRecord> ParseWfTable(std::string_view text) {
  auto records = ParseCsv(text);
  if (records.empty() || records.front().fields.size() != 3 ||
      records.front().fields[0] != "name" ||
      records.front().fields[1] != "wf_m3_per_ton" ||
      records.front().fields[2] != "source") {
    throw Error(ErrorCode::kMalformedHeader,
                "expected header \"" + std::string(kWfHeader) + "\"", 1);
  }
  std::vector<WfRecord> out;
  out.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord &rec = records[i];
    if (rec.fields.size() != 3) {
      throw Error(ErrorCode::kColumnCount,
                  "expected 3 columns, found " +
                      std::to_string(rec.fields.size()),
                  rec.line);
    }
    if (rec.fields[0].empty()) {
      throw Error(ErrorCode::kMalformedLine, "empty ingredient name", rec.line);
    }
    auto value = ParseNumber(Trim(rec.fields[1]));
    if (!value) {
      throw Error(ErrorCode::kUnparsableNumber,
                  "cannot parse \"" + rec.fields[1] + "\"", rec.line);
    }
    if (*value < 0) {
      throw Error(ErrorCode::kNegativeValue,
                  "water footprint must be >= 0, got " + rec.fields[1],
                  rec.line);
    }
    out.push_back({rec.fields[0], *value, rec.fields[2], rec.line});
  }
  return out;
}

std::string_view IriLocalName(std::string_view iri) {
  std::size_t cut = iri.find_last_of("/#:");
  if (cut == std::string_view::npos || cut + 1 == iri.size()) return iri;
  return iri.substr(cut + 1);
}

std::string PredicateToLabel(std::string_view predicate_iri) {
  std::string_view local = IriLocalName(predicate_iri);
  if (local == "subClassOf") return "subclass_of";
  if (local == "label") return "has_label";
  if (local == "sameAs") return "same_as";
  std::string out;
  out.reserve(local.size() + 4);
  for (std::size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    if (c >= 'A' && c <= 'Z') {
      if (i > 0 && out.back() != '_') out.push_back('_');
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<KgtkEdgeRow> TriplesToRows(std::span<const RawTriple> triples,
                                       std::string_view id_prefix) {
  std::vector<KgtkEdgeRow> rows;
  rows.reserve(triples.size());
  std::size_t n = 0;
  for (const RawTriple &t : triples) {
    KgtkEdgeRow row;
    row.id = std::string(id_prefix) + std::to_string(++n);
    row.node1 = std::string(IriLocalName(t.subject));
    row.label = PredicateToLabel(t.predicate);
    if (const auto *iri = std::get_if<std::string>(&t.object)) {
      row.node2 = std::string(IriLocalName(*iri));
    } else {
      row.node2 = FormatKgtkValue(t.object);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<KgtkEdgeRow> WfRecordsToRows(std::span<const WfRecord> records,
                                         std::string_view id_prefix) {
  std::vector<KgtkEdgeRow> rows;
  rows.reserve(records.size());
  std::size_t n = 0;
  for (const WfRecord &rec : records) {
    std::string name = rec.name;
    for (char &c : name) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    rows.push_back({std::string(id_prefix) + std::to_string(++n),
                    std::move(name), "has_water_footprint",
                    FormatNumber(rec.wf_value)});
  }
  return rows;
}

}  // namespace aquasub
