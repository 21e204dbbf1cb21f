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

#ifndef AQUASUB_RECOMMENDER_H_
#define AQUASUB_RECOMMENDER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aquasub/graph_store.h"
#include "aquasub/schema_align.h"

namespace aquasub {

// Signed change of one nutrient, grams (kcal for calories) per 100 g.
struct NutrientDelta {
  Relation nutrient = Relation::kHasFat;
  double before = 0;
  double after = 0;
  double delta = 0;
  bool imputed = false;  // either side came from the imputer

  friend bool operator==(const NutrientDelta &, const NutrientDelta &) = default;
};

struct Substitution {
  std::string original;
  std::string candidate;
  double wf_original = 0;
  double wf_candidate = 0;
  double wf_delta = 0;  // wf_candidate - wf_original, always < 0
  std::vector<NutrientDelta> nutrient_deltas;
  std::size_t rank = 0;  // 1-based
  bool wf_original_imputed = false;
  bool wf_candidate_imputed = false;

  friend bool operator==(const Substitution &, const Substitution &) = default;
};

// Same-tier ingredients with a strictly smaller water footprint. The tier is
// the set of siblings under the direct parent; when no sibling passes the
// footprint filter and a grandparent exists, every ingredient below the
// grandparent is considered instead. Candidates without a footprint are
// skipped. Throws kNoFootprint when `id` itself has none. Sorted by id.
std::vector<std::string> CandidateSubstitutes(const Graph &graph,
                                              std::string_view id);

// Sum of absolute differences over nutrients both ingredients carry.
double NutrientDistance(const Graph &graph, std::string_view a,
                        std::string_view b);

// Orders candidates by (footprint, nutrient distance to `id`, id) and
// numbers them from 1.
std::vector<Substitution> RankCandidates(const Graph &graph,
                                         std::string_view id,
                                         std::span<const std::string> candidates);

// CandidateSubstitutes followed by RankCandidates.
std::vector<Substitution> RecommendSubstitutes(const Graph &graph,
                                               std::string_view id);

struct RecipeItem {
  std::string raw_name;
  IngredientProfile profile;
};

struct RecipeAnalysis {
  std::vector<RecipeItem> ingredients;
  double total_wf = 0;  // m3 per ton, summed over resolved ingredients
  std::map<std::string, std::vector<Substitution>> options;
  std::vector<std::string> unresolved;
};

// Link table entry, node id, slug of the normalized name, then normalized
// display name equality; only ingredient nodes qualify.
std::optional<std::string> ResolveIngredient(const Graph &graph,
                                             std::string_view name,
                                             const LinkTable &links);

RecipeAnalysis AnalyzeRecipe(const Graph &graph,
                             std::span<const std::string> names,
                             const LinkTable &links);

struct DeltaReport {
  std::string original;
  std::string candidate;
  double wf_before = 0;
  double wf_after = 0;
  double wf_delta = 0;
  std::vector<NutrientDelta> nutrients;
};

struct SubstitutionOutcome {
  RecipeAnalysis analysis;
  DeltaReport report;
};

// Replaces the first occurrence of `original` by `candidate` and reports the
// recipe-level footprint and nutrient changes. Throws
// kNotARecommendedCandidate unless `candidate` is among the options for
// `original` in `analysis`.
SubstitutionOutcome ApplySubstitution(const Graph &graph,
                                      const RecipeAnalysis &analysis,
                                      std::string_view original,
                                      std::string_view candidate);

}  // namespace aquasub

#endif  // AQUASUB_RECOMMENDER_H_
