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

#include "aquasub/recommender.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "aquasub/error.h"

namespace aquasub {

namespace {

double Footprint(const Graph &graph, std::string_view id) {
  auto wf = graph.Value(id, Relation::kHasWaterFootprint);
  if (!wf) {
    throw Error(ErrorCode::kNoFootprint,
                std::string(id) + " has no water footprint");
  }
  return wf->value;
}

std::vector<NutrientDelta> PairDeltas(const Graph &graph, std::string_view a,
                                      std::string_view b) {
  std::vector<NutrientDelta> out;
  for (Relation r : kNutrientRelations) {
    auto before = graph.Value(a, r);
    auto after = graph.Value(b, r);
    if (!before || !after) continue;
    out.push_back({r, before->value, after->value, after->value - before->value,
                   before->imputed() || after->imputed()});
  }
  return out;
}

double RecipeWf(const std::vector<RecipeItem> &items) {
  double total = 0;
  for (const auto &item : items) {
    if (item.profile.wf) total += item.profile.wf->value;
  }
  return total;
}

std::map<std::string, std::vector<Substitution>> Options(
    const Graph &graph, const std::vector<RecipeItem> &items) {
  std::map<std::string, std::vector<Substitution>> options;
  for (const auto &item : items) {
    const std::string &id = item.profile.id;
    if (options.count(id) != 0) continue;
    if (!item.profile.wf) {
      options[id] = {};
      continue;
    }
    options[id] = RecommendSubstitutes(graph, id);
  }
  return options;
}

}  // namespace

std::vector<std::string> CandidateSubstitutes(const Graph &graph,
                                              std::string_view id) {
  if (graph.Kind(id) != NodeKind::kIngredient) {
    throw Error(ErrorCode::kNotAnIngredient,
                std::string(id) + " is not an ingredient");
  }
  const double wf = Footprint(graph, id);
  auto cheaper = [&](const std::string &c) {
    auto cwf = graph.Value(c, Relation::kHasWaterFootprint);
    return cwf && cwf->value < wf;
  };

  auto parent = graph.ParentOf(id);
  if (!parent) return {};

  std::vector<std::string> out;
  for (std::string &s : graph.Siblings(id)) {
    if (cheaper(s)) out.push_back(std::move(s));
  }
  if (!out.empty()) return out;

  auto grandparent = graph.ParentOf(*parent);
  if (!grandparent) return {};
  for (std::string &d : graph.Descendants(*grandparent)) {
    if (d != id && graph.Kind(d) == NodeKind::kIngredient && cheaper(d)) {
      out.push_back(std::move(d));
    }
  }
  return out;
}

double NutrientDistance(const Graph &graph, std::string_view a,
                        std::string_view b) {
  double sum = 0;
  for (const auto &d : PairDeltas(graph, a, b)) sum += std::abs(d.delta);
  return sum;
}

std::vector<Substitution> RankCandidates(
    const Graph &graph, std::string_view id,
    std::span<const std::string> candidates) {
  if (candidates.empty()) return {};
  auto original_wf = graph.Value(id, Relation::kHasWaterFootprint);
  if (!original_wf) {
    throw Error(ErrorCode::kNoFootprint,
                std::string(id) + " has no water footprint");
  }

  struct Keyed {
    double distance;
    Substitution sub;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(candidates.size());
  for (const std::string &c : candidates) {
    auto cwf = graph.Value(c, Relation::kHasWaterFootprint);
    if (!cwf) {
      throw Error(ErrorCode::kNoFootprint, c + " has no water footprint");
    }
    Substitution s;
    s.original = std::string(id);
    s.candidate = c;
    s.wf_original = original_wf->value;
    s.wf_candidate = cwf->value;
    s.wf_delta = cwf->value - original_wf->value;
    s.nutrient_deltas = PairDeltas(graph, id, c);
    s.wf_original_imputed = original_wf->imputed();
    s.wf_candidate_imputed = cwf->imputed();
    double distance = 0;
    for (const auto &d : s.nutrient_deltas) distance += std::abs(d.delta);
    keyed.push_back({distance, std::move(s)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.sub.wf_candidate != b.sub.wf_candidate) {
      return a.sub.wf_candidate < b.sub.wf_candidate;
    }
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.sub.candidate < b.sub.candidate;
  });
  std::vector<Substitution> out;
  out.reserve(keyed.size());
  for (auto &k : keyed) {
    k.sub.rank = out.size() + 1;
    out.push_back(std::move(k.sub));
  }
  return out;
}

std::vector<Substitution> RecommendSubstitutes(const Graph &graph,
                                               std::string_view id) {
  auto candidates = CandidateSubstitutes(graph, id);
  return RankCandidates(graph, id, candidates);
}

std::optional<std::string> ResolveIngredient(const Graph &graph,
                                             std::string_view name,
                                             const LinkTable &links) {
  auto is_ingredient = [&](std::string_view id) {
    return graph.Contains(id) && graph.Kind(id) == NodeKind::kIngredient;
  };
  if (const LinkEntry *e = links.Find(name); e && is_ingredient(e->canonical_id)) {
    return e->canonical_id;
  }
  if (is_ingredient(name)) return std::string(name);
  std::string slug = SlugId(name);
  if (is_ingredient(slug)) return slug;
  std::string normalized = NormalizeName(name);
  if (normalized.empty()) return std::nullopt;
  for (const std::string &id : graph.NodesOfKind(NodeKind::kIngredient)) {
    if (NormalizeName(graph.DisplayName(id)) == normalized) return id;
  }
  return std::nullopt;
}

RecipeAnalysis AnalyzeRecipe(const Graph &graph,
                             std::span<const std::string> names,
                             const LinkTable &links) {
  RecipeAnalysis a;
  for (const std::string &name : names) {
    auto id = ResolveIngredient(graph, name, links);
    if (!id) {
      a.unresolved.push_back(name);
      continue;
    }
    a.ingredients.push_back({name, graph.Profile(*id)});
  }
  a.total_wf = RecipeWf(a.ingredients);
  a.options = Options(graph, a.ingredients);
  return a;
}

SubstitutionOutcome ApplySubstitution(const Graph &graph,
                                      const RecipeAnalysis &analysis,
                                      std::string_view original,
                                      std::string_view candidate) {
  auto fail = [&] {
    throw Error(ErrorCode::kNotARecommendedCandidate,
                std::string(candidate) + " is not a recommended substitute for " +
                    std::string(original) + " in this recipe");
  };
  auto opt = analysis.options.find(std::string(original));
  if (opt == analysis.options.end()) fail();
  const auto &subs = opt->second;
  if (std::none_of(subs.begin(), subs.end(), [&](const Substitution &s) {
        return s.candidate == candidate;
      })) {
    fail();
  }
  auto item = std::find_if(
      analysis.ingredients.begin(), analysis.ingredients.end(),
      [&](const RecipeItem &i) { return i.profile.id == original; });
  if (item == analysis.ingredients.end()) fail();

  SubstitutionOutcome out;
  out.analysis.unresolved = analysis.unresolved;
  out.analysis.ingredients = analysis.ingredients;
  auto &slot = out.analysis.ingredients[static_cast<std::size_t>(
      item - analysis.ingredients.begin())];
  slot = {std::string(candidate), graph.Profile(candidate)};
  out.analysis.total_wf = RecipeWf(out.analysis.ingredients);
  out.analysis.options = Options(graph, out.analysis.ingredients);

  DeltaReport &r = out.report;
  r.original = std::string(original);
  r.candidate = std::string(candidate);
  r.wf_before = analysis.total_wf;
  r.wf_after = out.analysis.total_wf;
  r.wf_delta = r.wf_after - r.wf_before;
  for (const auto &pair : PairDeltas(graph, original, candidate)) {
    auto sum = [&](const std::vector<RecipeItem> &items) {
      double total = 0;
      for (const auto &i : items) {
        auto it = i.profile.nutrients.find(pair.nutrient);
        if (it != i.profile.nutrients.end()) total += it->second.value;
      }
      return total;
    };
    double before = sum(analysis.ingredients);
    double after = sum(out.analysis.ingredients);
    r.nutrients.push_back(
        {pair.nutrient, before, after, after - before, pair.imputed});
  }
  return out;
}

}  // namespace aquasub
