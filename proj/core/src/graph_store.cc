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

#include "aquasub/graph_store.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "aquasub/error.h"
#include "aquasub/text.h"

namespace aquasub {

namespace {

constexpr std::array<std::string_view, kRelationCount> kRelationLabels = {
    "has_ingredient", "subclass_of", "has_water_footprint", "has_calories",
    "has_fat",        "has_protein", "has_carbohydrate",    "has_sugar",
    "has_sodium",     "has_fiber",   "has_label",           "same_as",
    "has_unit"};

constexpr std::string_view kSnapshotMagic = "# aquasub-snapshot v1";

// Orders literals: numbers before strings, then by value, then by unit.
int CompareLiteral(const Literal &a, const Literal &b) {
  if (a.value.index() != b.value.index()) {
    return a.value.index() < b.value.index() ? -1 : 1;
  }
  if (a.is_number()) {
    if (a.number() != b.number()) return a.number() < b.number() ? -1 : 1;
  } else if (int c = a.text().compare(b.text()); c != 0) {
    return c;
  }
  if (a.unit != b.unit) return a.unit < b.unit ? -1 : 1;
  return 0;
}

}  // namespace

std::string_view RelationLabel(Relation r) {
  return kRelationLabels[RelationIndex(r)];
}

std::optional<Relation> ParseRelation(std::string_view label) {
  for (std::size_t i = 0; i < kRelationLabels.size(); ++i) {
    if (kRelationLabels[i] == label) return kAllRelations[i];
  }
  return std::nullopt;
}

bool IsNumeric(Relation r) {
  return std::find(kNumericRelations.begin(), kNumericRelations.end(), r) !=
         kNumericRelations.end();
}

bool IsNutrient(Relation r) {
  return IsNumeric(r) && r != Relation::kHasWaterFootprint;
}

std::string_view NutrientName(Relation r) {
  if (!IsNutrient(r)) return {};
  return RelationLabel(r).substr(4);  // strip "has_"
}

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kRecipe: return "recipe";
    case NodeKind::kIngredient: return "ingredient";
    case NodeKind::kOntologyClass: return "ontology_class";
    case NodeKind::kNutrient: return "nutrient";
    case NodeKind::kLiteral: return "literal";
  }
  return "unknown";
}

bool EdgeLess(const Edge &a, const Edge &b) {
  if (int c = a.subject.compare(b.subject); c != 0) return c < 0;
  if (a.relation != b.relation) return a.relation < b.relation;
  if (a.object.index() != b.object.index()) {
    return a.object.index() < b.object.index();
  }
  if (a.has_node_object()) {
    if (int c = a.object_node().compare(b.object_node()); c != 0) return c < 0;
  } else if (int c = CompareLiteral(a.literal(), b.literal()); c != 0) {
    return c < 0;
  }
  return a.provenance < b.provenance;
}

void ValidateEdge(const Edge &edge) {
  auto fail = [&](const std::string &why) {
    throw Error(ErrorCode::kInvalidEdge,
                edge.subject + " " + std::string(RelationLabel(edge.relation)) +
                    ": " + why);
  };
  if (edge.subject.empty()) fail("empty subject");
  if (edge.subject.find_first_of("\t\n\r") != std::string::npos) {
    fail("subject contains a tab or line break");
  }
  switch (edge.relation) {
    case Relation::kHasIngredient:
    case Relation::kSubclassOf:
    case Relation::kSameAs:
      if (!edge.has_node_object() || edge.object_node().empty()) {
        fail("object must be a node");
      }
      if (edge.object_node().find_first_of("\t\n\r") != std::string::npos) {
        fail("object contains a tab or line break");
      }
      return;
    case Relation::kHasLabel:
    case Relation::kHasUnit:
      if (edge.has_node_object() || edge.literal().is_number()) {
        fail("object must be a string literal");
      }
      return;
    default:
      break;
  }
  if (edge.has_node_object() || !edge.literal().is_number()) {
    fail("object must be a numeric literal");
  }
  double v = edge.literal().number();
  if (!std::isfinite(v) || v < 0) fail("value must be finite and >= 0");
}

Edge EdgeFromRow(const KgtkEdgeRow &row) {
  auto relation = ParseRelation(row.label);
  if (!relation) {
    throw Error(ErrorCode::kUnknownRelationLabel,
                "unknown relation \"" + row.label + "\" on edge " + row.id);
  }
  Edge edge;
  edge.subject = row.node1;
  edge.relation = *relation;
  edge.object = ParseKgtkValue(row.node2);
  edge.provenance = row.id.starts_with(kImputedIdPrefix)
                        ? Provenance::kImputed
                        : Provenance::kMeasured;
  ValidateEdge(edge);
  return edge;
}

Graph Graph::Build(std::vector<Edge> edges) {
  for (const Edge &e : edges) ValidateEdge(e);
  std::stable_sort(edges.begin(), edges.end(), EdgeLess);

  Graph g;
  g.edges_ = std::move(edges);

  std::vector<std::string> ids;
  ids.reserve(g.edges_.size() * 2);
  for (const Edge &e : g.edges_) {
    ids.push_back(e.subject);
    if (e.has_node_object()) ids.push_back(e.object_node());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  g.nodes_.resize(ids.size());
  g.index_.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    g.index_.emplace(ids[i], static_cast<NodeIndex>(i));
    g.nodes_[i].id = std::move(ids[i]);
  }

  std::array<bool, kRelationCount> used{};
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge &e = g.edges_[i];
    std::size_t r = RelationIndex(e.relation);
    used[r] = true;
    g.nodes_[g.index_.at(e.subject)].out[r].push_back(
        static_cast<std::uint32_t>(i));
    if (e.has_node_object()) {
      g.nodes_[g.index_.at(e.object_node())].in[r].push_back(
          static_cast<std::uint32_t>(i));
    }
  }
  g.relation_type_count_ =
      static_cast<std::size_t>(std::count(used.begin(), used.end(), true));

  // Kind inference: recipes list ingredients; classes have subclass_of
  // children and carry no measurements; everything else is an ingredient.
  const auto sub = RelationIndex(Relation::kSubclassOf);
  const auto has_ing = RelationIndex(Relation::kHasIngredient);
  for (Node &n : g.nodes_) {
    bool measured = false;
    for (Relation r : kNumericRelations) {
      if (!n.out[RelationIndex(r)].empty()) measured = true;
    }
    if (!n.out[has_ing].empty()) {
      n.kind = NodeKind::kRecipe;
    } else if (!n.in[sub].empty() && !measured && n.in[has_ing].empty()) {
      n.kind = NodeKind::kOntologyClass;
    } else {
      n.kind = NodeKind::kIngredient;
    }
  }

  // subclass_of must be acyclic: iterative three-colour DFS.
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> colour(g.nodes_.size(), kWhite);
  std::vector<std::pair<NodeIndex, std::size_t>> stack;
  for (NodeIndex root = 0; root < g.nodes_.size(); ++root) {
    if (colour[root] != kWhite) continue;
    stack.push_back({root, 0});
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      const auto &parents = g.nodes_[node].out[sub];
      if (next == parents.size()) {
        colour[node] = kBlack;
        stack.pop_back();
        continue;
      }
      NodeIndex target =
          g.index_.at(g.edges_[parents[next++]].object_node());
      if (colour[target] == kGrey) {
        std::string witness;
        auto it = std::find_if(stack.begin(), stack.end(), [&](auto &frame) {
          return frame.first == target;
        });
        for (; it != stack.end(); ++it) {
          witness += g.nodes_[it->first].id + " -> ";
        }
        witness += g.nodes_[target].id;
        throw Error(ErrorCode::kCycleDetected, "subclass_of cycle " + witness);
      }
      if (colour[target] == kWhite) {
        colour[target] = kGrey;
        stack.push_back({target, 0});
      }
    }
  }
  return g;
}

GraphStats Graph::Stats() const {
  return {nodes_.size(), relation_type_count_, edges_.size()};
}

const Graph::Node *Graph::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const Graph::Node &Graph::Lookup(std::string_view id) const {
  const Node *n = Find(id);
  if (n == nullptr) {
    throw Error(ErrorCode::kUnknownNode, "no node " + std::string(id));
  }
  return *n;
}

bool Graph::Contains(std::string_view id) const { return Find(id) != nullptr; }

NodeKind Graph::Kind(std::string_view id) const { return Lookup(id).kind; }

std::vector<std::string> Graph::NodesOfKind(NodeKind kind) const {
  std::vector<std::string> out;
  for (const Node &n : nodes_) {
    if (n.kind == kind) out.push_back(n.id);
  }
  return out;
}

std::optional<std::string> Graph::ParentOf(std::string_view id) const {
  const auto &parents = Lookup(id).out[RelationIndex(Relation::kSubclassOf)];
  if (parents.empty()) return std::nullopt;
  const std::string &first = edges_[parents.front()].object_node();
  for (std::uint32_t e : parents) {
    if (edges_[e].object_node() != first) {
      throw Error(ErrorCode::kMultipleParents,
                  std::string(id) + " has more than one subclass_of parent");
    }
  }
  return first;
}

std::vector<std::string> Graph::Children(std::string_view id) const {
  std::vector<std::string> out;
  for (std::uint32_t e : Lookup(id).in[RelationIndex(Relation::kSubclassOf)]) {
    out.push_back(edges_[e].subject);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Graph::Siblings(std::string_view id) const {
  auto parent = ParentOf(id);
  if (!parent) {
    throw Error(ErrorCode::kNoParent, std::string(id) + " has no parent");
  }
  std::vector<std::string> out;
  for (std::string &child : Children(*parent)) {
    if (child != id && Lookup(child).kind == NodeKind::kIngredient) {
      out.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<std::string> Graph::Descendants(std::string_view id) const {
  std::vector<std::string> out;
  std::vector<std::string> frontier = Children(id);
  std::vector<bool> seen(nodes_.size(), false);
  while (!frontier.empty()) {
    std::string next = std::move(frontier.back());
    frontier.pop_back();
    NodeIndex idx = index_.at(next);
    if (seen[idx]) continue;
    seen[idx] = true;
    for (std::string &c : Children(next)) frontier.push_back(std::move(c));
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Graph::DisplayName(std::string_view id) const {
  const Node *n = Find(id);
  if (n != nullptr) {
    for (std::uint32_t e : n->out[RelationIndex(Relation::kHasLabel)]) {
      return edges_[e].literal().text();
    }
  }
  std::string name(id);
  std::replace(name.begin(), name.end(), '_', ' ');
  return name;
}

std::span<const std::uint32_t> Graph::Outgoing(std::string_view id,
                                               Relation r) const {
  return Lookup(id).out[RelationIndex(r)];
}

std::span<const std::uint32_t> Graph::Incoming(std::string_view id,
                                               Relation r) const {
  return Lookup(id).in[RelationIndex(r)];
}

std::optional<Quantity> Graph::Value(std::string_view id, Relation r) const {
  std::optional<Quantity> best;
  for (std::uint32_t e : Lookup(id).out[RelationIndex(r)]) {
    const Edge &edge = edges_[e];
    if (edge.has_node_object() || !edge.literal().is_number()) continue;
    if (!best || (best->imputed() && edge.provenance == Provenance::kMeasured)) {
      best = Quantity{edge.literal().number(), edge.provenance};
    }
  }
  return best;
}

IngredientProfile Graph::Profile(std::string_view id) const {
  const Node &n = Lookup(id);
  if (n.kind != NodeKind::kIngredient) {
    throw Error(ErrorCode::kNotAnIngredient,
                std::string(id) + " is a " + std::string(NodeKindName(n.kind)));
  }
  IngredientProfile p;
  p.id = n.id;
  p.display_name = DisplayName(id);
  p.wf = Value(id, Relation::kHasWaterFootprint);
  for (Relation r : kNutrientRelations) {
    if (auto q = Value(id, r)) p.nutrients.emplace(r, *q);
  }
  p.parent_class = ParentOf(id);
  return p;
}

namespace {

std::optional<std::size_t> ParseCount(std::string_view text) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::vector<KgtkEdgeRow> GraphToRows(const Graph &graph) {
  std::vector<KgtkEdgeRow> rows;
  rows.reserve(graph.edges().size());
  std::size_t ordinal = 0;
  const Edge *prev = nullptr;
  for (const Edge &e : graph.edges()) {
    if (prev && prev->subject == e.subject && prev->relation == e.relation) {
      ++ordinal;
    } else {
      ordinal = 1;
    }
    prev = &e;
    KgtkEdgeRow row;
    if (e.provenance == Provenance::kImputed) row.id = kImputedIdPrefix;
    row.id += e.subject + "/" + std::string(RelationLabel(e.relation)) + "/" +
              std::to_string(ordinal);
    row.node1 = e.subject;
    row.label = std::string(RelationLabel(e.relation));
    row.node2 = FormatKgtkValue(e.object);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string SaveSnapshot(const Graph &graph) {
  GraphStats s = graph.Stats();
  std::ostringstream out;
  out << kSnapshotMagic << " node_count=" << s.node_count
      << " relation_type_count=" << s.relation_type_count
      << " edge_count=" << s.edge_count << '\n';
  auto rows = GraphToRows(graph);
  out << WriteKgtkEdges(rows);
  return out.str();
}

Graph LoadSnapshot(std::string_view text) {
  std::size_t nl = text.find('\n');
  std::string_view first = text.substr(0, nl);
  if (!first.starts_with(kSnapshotMagic) || nl == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidSnapshot, "missing snapshot header", 1);
  }
  GraphStats declared;
  {
    std::istringstream in(std::string(first.substr(kSnapshotMagic.size())));
    std::string token;
    int fields = 0;
    while (in >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      std::string key = token.substr(0, eq);
      auto value = ParseCount(token.substr(eq + 1));
      if (!value) {
        throw Error(ErrorCode::kInvalidSnapshot, "bad header field " + token, 1);
      }
      if (key == "node_count") {
        declared.node_count = *value;
        ++fields;
      } else if (key == "relation_type_count") {
        declared.relation_type_count = *value;
        ++fields;
      } else if (key == "edge_count") {
        declared.edge_count = *value;
        ++fields;
      }
    }
    if (fields != 3) {
      throw Error(ErrorCode::kInvalidSnapshot, "incomplete stats header", 1);
    }
  }
  Graph graph;
  try {
    auto rows = ParseKgtkEdges(text.substr(nl + 1));
    std::vector<Edge> edges;
    edges.reserve(rows.size());
    for (const auto &row : rows) edges.push_back(EdgeFromRow(row));
    graph = Graph::Build(std::move(edges));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kInvalidSnapshot) throw;
    throw Error(ErrorCode::kInvalidSnapshot, e.what(),
                e.line() > 0 ? e.line() + 1 : 0);
  }
  if (graph.Stats() != declared) {
    throw Error(ErrorCode::kInvalidSnapshot,
                "stats header does not match the edges", 1);
  }
  return graph;
}

}  // namespace aquasub
