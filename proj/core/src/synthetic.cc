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

#include "aquasub/synthetic.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "aquasub/error.h"

namespace aquasub {

namespace {

std::string Id(const char *prefix, std::size_t n, int width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, n);
  return buf;
}

Edge NodeEdge(std::string s, Relation r, std::string o) {
  return {std::move(s), r, TripleObject(std::move(o)), Provenance::kMeasured};
}

Edge NumberEdge(std::string s, Relation r, double v) {
  return {std::move(s), r, TripleObject(Literal{v, std::nullopt}),
          Provenance::kMeasured};
}

Edge TextEdge(std::string s, Relation r, std::string v) {
  return {std::move(s), r, TripleObject(Literal{std::move(v), std::nullopt}),
          Provenance::kMeasured};
}

// Values rounded to 0.1 so snapshots stay short and readable.
double Tenth(double x) { return std::round(x * 10.0) / 10.0; }

}  // namespace

std::vector<Edge> GenerateScaleEdges(const ScaleGraphConfig &config) {
  std::size_t classes = config.top_classes * config.classes_per_top;
  std::size_t fixed = 1 + config.top_classes + classes + config.recipes;
  if (config.top_classes == 0 || config.classes_per_top == 0 ||
      config.recipes == 0 || config.node_count < fixed + 2 * classes) {
    throw Error(ErrorCode::kInvalidConfig,
                "node budget too small for the requested class layout");
  }
  std::size_t ingredients = config.node_count - fixed;

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> footprint(7.5, 1.2);
  std::uniform_real_distribution<double> grams(0.0, 100.0);
  std::uniform_real_distribution<double> calories(0.0, 900.0);
  std::uniform_real_distribution<double> sodium(0.0, 2000.0);

  std::vector<Edge> edges;
  edges.reserve(ingredients * 8 + config.recipes * 8);

  const std::string root = "food";
  std::vector<std::string> leaf_classes;
  leaf_classes.reserve(classes);
  for (std::size_t t = 0; t < config.top_classes; ++t) {
    std::string top = Id("class_", t, 3);
    edges.push_back(NodeEdge(top, Relation::kSubclassOf, root));
    for (std::size_t c = 0; c < config.classes_per_top; ++c) {
      std::string leaf = top + Id("_", c, 3);
      edges.push_back(NodeEdge(leaf, Relation::kSubclassOf, top));
      leaf_classes.push_back(std::move(leaf));
    }
  }

  std::vector<std::string> ingredient_ids;
  ingredient_ids.reserve(ingredients);
  for (std::size_t i = 0; i < ingredients; ++i) {
    std::string id = Id("ing_", i, 5);
    // The first pass gives every leaf class at least two members.
    std::size_t cls = i < 2 * classes ? i % classes : rng() % classes;
    edges.push_back(NodeEdge(id, Relation::kSubclassOf, leaf_classes[cls]));
    edges.push_back(
        TextEdge(id, Relation::kHasLabel, "ingredient " + std::to_string(i)));
    if (unit(rng) < 0.9) {
      edges.push_back(
          NumberEdge(id, Relation::kHasWaterFootprint, Tenth(footprint(rng))));
    }
    if (unit(rng) < 0.8) {
      edges.push_back(NumberEdge(id, Relation::kHasCalories, Tenth(calories(rng))));
    }
    for (Relation r : {Relation::kHasFat, Relation::kHasProtein,
                       Relation::kHasCarbohydrate, Relation::kHasSugar,
                       Relation::kHasFiber}) {
      if (unit(rng) < 0.6) edges.push_back(NumberEdge(id, r, Tenth(grams(rng))));
    }
    if (unit(rng) < 0.5) {
      edges.push_back(NumberEdge(id, Relation::kHasSodium, Tenth(sodium(rng))));
    }
    if (unit(rng) < 0.1) edges.push_back(TextEdge(id, Relation::kHasUnit, "g"));
    ingredient_ids.push_back(std::move(id));
  }
  for (std::size_t i = 1; i < ingredients; i += 97) {
    edges.push_back(NodeEdge(ingredient_ids[i], Relation::kSameAs,
                             ingredient_ids[i - 1]));
  }

  for (std::size_t r = 0; r < config.recipes; ++r) {
    std::string id = Id("recipe_", r, 4);
    edges.push_back(TextEdge(id, Relation::kHasLabel, "recipe " + std::to_string(r)));
    std::size_t count = 3 + rng() % 8;
    for (std::size_t k = 0; k < count; ++k) {
      edges.push_back(NodeEdge(id, Relation::kHasIngredient,
                               ingredient_ids[rng() % ingredients]));
    }
  }
  return edges;
}

}  // namespace aquasub
