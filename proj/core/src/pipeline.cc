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

#include <algorithm>
#include <map>
#include <set>

#include "aquasub/error.h"

namespace aquasub {

namespace {

bool IsNodeRelation(std::string_view label) {
  return label == RelationLabel(Relation::kHasIngredient) ||
         label == RelationLabel(Relation::kSubclassOf) ||
         label == RelationLabel(Relation::kSameAs);
}

std::string_view SourceTag(SourceKind kind) {
  switch (kind) {
    case SourceKind::kNTriples:
      return "nt";
    case SourceKind::kKgtk:
      return "kgtk";
    case SourceKind::kWaterFootprint:
      return "wf";
  }
  return "src";
}

std::vector<KgtkEdgeRow> ParseSource(const SourceText &source,
                                     const std::string &prefix,
                                     ParseMode mode, SourceReport &report) {
  switch (source.kind) {
    case SourceKind::kNTriples: {
      NTriplesResult parsed = ParseNTriples(source.text, mode);
      report.skipped = std::move(parsed.errors);
      return TriplesToRows(parsed.triples, prefix);
    }
    case SourceKind::kKgtk: {
      std::vector<KgtkEdgeRow> rows = ParseKgtkEdges(source.text);
      for (KgtkEdgeRow &row : rows) {
        if (row.id.starts_with(kImputedIdPrefix)) {
          row.id = std::string(kImputedIdPrefix) + prefix +
                   row.id.substr(kImputedIdPrefix.size());
        } else {
          row.id = prefix + row.id;
        }
      }
      return rows;
    }
    case SourceKind::kWaterFootprint:
      return WfRecordsToRows(ParseWfTable(source.text), prefix);
  }
  return {};
}

}  // namespace

IngestResult Ingest(std::span<const SourceText> sources, ParseMode ntriples_mode) {
  IngestResult result;
  std::map<SourceKind, std::size_t> ordinal;
  for (const SourceText &source : sources) {
    SourceReport report;
    report.name = source.name;
    report.id_prefix = std::string(SourceTag(source.kind)) +
                       std::to_string(++ordinal[source.kind]) + "-";
    std::vector<KgtkEdgeRow> rows;
    try {
      rows = ParseSource(source, report.id_prefix, ntriples_mode, report);
    } catch (const Error &e) {
      throw Error(e.code(), source.name + ": " + e.detail(), e.line());
    }
    report.rows = rows.size();
    result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                       std::make_move_iterator(rows.end()));
    result.report.push_back(std::move(report));
  }
  return result;
}

std::string RowSource(std::string_view row_id) {
  if (row_id.starts_with(kImputedIdPrefix)) {
    row_id.remove_prefix(kImputedIdPrefix.size());
  }
  std::size_t dash = row_id.find('-');
  if (dash == std::string_view::npos || dash == 0) return "edges";
  return std::string(row_id.substr(0, dash));
}

LinkTable Align(std::span<const KgtkEdgeRow> rows, const LinkConfig &config) {
  const std::string_view subclass = RelationLabel(Relation::kSubclassOf);
  const std::string_view has_ingredient = RelationLabel(Relation::kHasIngredient);
  const std::string_view has_label = RelationLabel(Relation::kHasLabel);

  std::set<std::string> canonical_ids;
  std::map<std::string, std::string> labels;
  std::map<std::string, std::vector<std::string>> names_by_source;
  for (const KgtkEdgeRow &row : rows) {
    if (row.label == subclass) {
      canonical_ids.insert(row.node1);
      canonical_ids.insert(row.node2);
    } else if (row.label == has_ingredient) {
      canonical_ids.insert(row.node1);
    } else if (row.label == has_label) {
      TripleObject value = ParseKgtkValue(row.node2);
      if (const auto *lit = std::get_if<Literal>(&value);
          lit && !lit->is_number()) {
        labels.emplace(row.node1, lit->text());
      }
    }
    auto &names = names_by_source[RowSource(row.id)];
    names.push_back(row.node1);
    if (IsNodeRelation(row.label)) names.push_back(row.node2);
  }

  std::vector<NameSource> sources;
  for (auto &[source, names] : names_by_source) {
    sources.push_back({source, std::move(names)});
  }
  std::vector<CanonicalEntity> canonical;
  for (const std::string &id : canonical_ids) {
    auto it = labels.find(id);
    canonical.push_back({id, it == labels.end() ? id : it->second});
  }
  return LinkEntities(sources, canonical, config);
}

Graph BuildGraph(std::span<const KgtkEdgeRow> rows, const LinkTable &links) {
  auto map_name = [&](const std::string &name) {
    const LinkEntry *entry = links.Find(name);
    return entry ? entry->canonical_id : name;
  };
  std::vector<Edge> edges;
  edges.reserve(rows.size());
  for (const KgtkEdgeRow &row : rows) {
    KgtkEdgeRow mapped = row;
    mapped.node1 = map_name(row.node1);
    if (IsNodeRelation(row.label)) mapped.node2 = map_name(row.node2);
    try {
      edges.push_back(EdgeFromRow(mapped));
    } catch (const Error &e) {
      throw Error(e.code(), "row " + row.id + ": " + e.detail());
    }
  }
  std::stable_sort(edges.begin(), edges.end(), EdgeLess);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::Build(std::move(edges));
}

}  // namespace aquasub
