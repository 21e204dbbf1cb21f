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

#ifndef AQUASUB_GRAPH_STORE_H_
#define AQUASUB_GRAPH_STORE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "aquasub/triple_ingest.h"

namespace aquasub {

// The closed set of relation types a graph may hold.
enum class Relation : std::uint8_t {
  kHasIngredient,
  kSubclassOf,
  kHasWaterFootprint,
  kHasCalories,
  kHasFat,
  kHasProtein,
  kHasCarbohydrate,
  kHasSugar,
  kHasSodium,
  kHasFiber,
  kHasLabel,
  kSameAs,
  kHasUnit,
};

inline constexpr std::size_t kRelationCount = 13;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::kHasIngredient, Relation::kSubclassOf,
    Relation::kHasWaterFootprint, Relation::kHasCalories,
    Relation::kHasFat, Relation::kHasProtein,
    Relation::kHasCarbohydrate, Relation::kHasSugar,
    Relation::kHasSodium, Relation::kHasFiber,
    Relation::kHasLabel, Relation::kSameAs,
    Relation::kHasUnit};

// Water footprint followed by the seven nutrients.
inline constexpr std::array<Relation, 8> kNumericRelations = {
    Relation::kHasWaterFootprint, Relation::kHasCalories,
    Relation::kHasFat,            Relation::kHasProtein,
    Relation::kHasCarbohydrate,   Relation::kHasSugar,
    Relation::kHasSodium,         Relation::kHasFiber};

inline constexpr std::array<Relation, 7> kNutrientRelations = {
    Relation::kHasCalories,     Relation::kHasFat,   Relation::kHasProtein,
    Relation::kHasCarbohydrate, Relation::kHasSugar, Relation::kHasSodium,
    Relation::kHasFiber};

inline constexpr std::size_t RelationIndex(Relation r) {
  return static_cast<std::size_t>(r);
}

std::string_view RelationLabel(Relation r);
std::optional<Relation> ParseRelation(std::string_view label);
bool IsNumeric(Relation r);
bool IsNutrient(Relation r);

// "fat" for has_fat and so on; empty for non-nutrient relations.
std::string_view NutrientName(Relation r);

enum class Provenance : std::uint8_t { kMeasured, kImputed };

// Literal objects and nutrients are carried on edges rather than materialized
// as nodes, so built graphs only contain the first three kinds.
enum class NodeKind : std::uint8_t {
  kRecipe,
  kIngredient,
  kOntologyClass,
  kNutrient,
  kLiteral,
};

std::string_view NodeKindName(NodeKind kind);

struct Edge {
  std::string subject;
  Relation relation = Relation::kHasLabel;
  TripleObject object;  // node id or literal
  Provenance provenance = Provenance::kMeasured;

  bool has_node_object() const {
    return std::holds_alternative<std::string>(object);
  }
  const std::string &object_node() const {
    return std::get<std::string>(object);
  }
  const Literal &literal() const { return std::get<Literal>(object); }

  friend bool operator==(const Edge &, const Edge &) = default;
};

// Total order used for canonical edge storage and multiset comparisons.
bool EdgeLess(const Edge &a, const Edge &b);

// Throws kInvalidEdge when the object kind or value does not fit the
// relation (numeric relations need finite literals >= 0, structural ones a
// node, labels and units a string).
void ValidateEdge(const Edge &edge);

// KGTK rows whose id starts with this prefix carry imputed values.
inline constexpr std::string_view kImputedIdPrefix = "imputed:";

// Throws kUnknownRelationLabel or kInvalidEdge.
Edge EdgeFromRow(const KgtkEdgeRow &row);

struct Quantity {
  double value = 0;
  Provenance provenance = Provenance::kMeasured;

  bool imputed() const { return provenance == Provenance::kImputed; }
  friend bool operator==(const Quantity &, const Quantity &) = default;
};

struct IngredientProfile {
  std::string id;
  std::string display_name;
  std::optional<Quantity> wf;  // m3 per ton
  std::map<Relation, Quantity> nutrients;  // per 100 g
  std::optional<std::string> parent_class;
};

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t relation_type_count = 0;
  std::size_t edge_count = 0;

  friend bool operator==(const GraphStats &, const GraphStats &) = default;
};

// Immutable typed property graph. Edges are held in canonical order, so two
// graphs built from the same edge multiset are identical.
class Graph {
 public:
  using NodeIndex = std::uint32_t;

  Graph() = default;

  // Validates every edge, infers node kinds and verifies that subclass_of is
  // acyclic. Throws kInvalidEdge or kCycleDetected.
  static Graph Build(std::vector<Edge> edges);

  GraphStats Stats() const;

  bool Contains(std::string_view id) const;
  NodeKind Kind(std::string_view id) const;  // throws kUnknownNode
  std::span<const Edge> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  // All node ids of the given kind, sorted.
  std::vector<std::string> NodesOfKind(NodeKind kind) const;

  // The unique subclass_of target, or nullopt at a root. Throws
  // kMultipleParents when the data gives more than one.
  std::optional<std::string> ParentOf(std::string_view id) const;

  // Ingredient-kind nodes sharing the direct parent, excluding `id`; sorted.
  // Throws kNoParent at a root.
  std::vector<std::string> Siblings(std::string_view id) const;

  // Direct subclass_of children, sorted.
  std::vector<std::string> Children(std::string_view id) const;

  // Every node below `id` in the hierarchy, sorted.
  std::vector<std::string> Descendants(std::string_view id) const;

  // Value of a numeric relation; a measured edge wins over an imputed one.
  std::optional<Quantity> Value(std::string_view id, Relation r) const;

  // Throws kNotAnIngredient for other node kinds.
  IngredientProfile Profile(std::string_view id) const;

  // has_label text when present, otherwise the id with '_' read as space.
  std::string DisplayName(std::string_view id) const;

  // Edge indices into edges() for (node, relation), in canonical order.
  std::span<const std::uint32_t> Outgoing(std::string_view id,
                                          Relation r) const;
  std::span<const std::uint32_t> Incoming(std::string_view id,
                                          Relation r) const;

 private:
  struct Node {
    std::string id;
    NodeKind kind = NodeKind::kIngredient;
    std::array<std::vector<std::uint32_t>, kRelationCount> out;
    std::array<std::vector<std::uint32_t>, kRelationCount> in;
  };

  const Node &Lookup(std::string_view id) const;
  const Node *Find(std::string_view id) const;

  std::vector<Edge> edges_;
  std::vector<Node> nodes_;  // sorted by id
  std::unordered_map<std::string, NodeIndex> index_;
  std::size_t relation_type_count_ = 0;
};

// Snapshot text: a stats line followed by the KGTK edge file.
std::string SaveSnapshot(const Graph &graph);
Graph LoadSnapshot(std::string_view text);  // throws kInvalidSnapshot

// KGTK rows for every edge, ids derived from subject and relation.
std::vector<KgtkEdgeRow> GraphToRows(const Graph &graph);

}  // namespace aquasub

#endif  // AQUASUB_GRAPH_STORE_H_
