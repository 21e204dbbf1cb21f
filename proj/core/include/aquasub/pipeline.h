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

#ifndef AQUASUB_PIPELINE_H_
#define AQUASUB_PIPELINE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aquasub/graph_store.h"
#include "aquasub/schema_align.h"
#include "aquasub/triple_ingest.h"

// Offline stages that turn source files into a graph: ingest merges every
// source into KGTK rows, align links raw names onto canonical ids, and build
// rewrites the rows through the link table into a graph.
namespace aquasub {

enum class SourceKind { kNTriples, kKgtk, kWaterFootprint };

struct SourceText {
  SourceKind kind = SourceKind::kKgtk;
  std::string name;  // usually the file path, used in errors and reports
  std::string text;
};

struct SourceReport {
  std::string name;
  std::string id_prefix;
  std::size_t rows = 0;
  std::vector<ParseIssue> skipped;  // lenient N-Triples only
};

struct IngestResult {
  std::vector<KgtkEdgeRow> rows;
  std::vector<SourceReport> report;
};

// Row ids are rewritten to `<kind><ordinal>-<id>` (nt1-3, kgtk2-n7, wf1-1)
// so merged sources never collide and each row names its source; sources
// without ids number their rows from 1. Imputed KGTK
// rows keep their marker in front. Errors are rethrown with the source name
// in the detail and the original line number.
IngestResult Ingest(std::span<const SourceText> sources,
                    ParseMode ntriples_mode = ParseMode::kStrict);

// Source tag of an ingested row id: the text before the first '-'.
std::string RowSource(std::string_view row_id);

// Links every node name in `rows` onto the ontology. Canonical entities are
// the nodes of subclass_of rows plus recipe subjects, named by their
// has_label rows.
LinkTable Align(std::span<const KgtkEdgeRow> rows, const LinkConfig &config = {});

// Rewrites node names through `links` (unlisted names are kept), drops exact
// duplicate edges and builds the graph.
Graph BuildGraph(std::span<const KgtkEdgeRow> rows, const LinkTable &links);

}  // namespace aquasub

#endif  // AQUASUB_PIPELINE_H_
