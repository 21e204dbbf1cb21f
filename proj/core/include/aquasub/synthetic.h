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

#ifndef AQUASUB_SYNTHETIC_H_
#define AQUASUB_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aquasub/graph_store.h"

namespace aquasub {

// Shape of a generated food graph. Ingredients fill whatever node budget is
// left after the root, the two class levels and the recipes.
struct ScaleGraphConfig {
  std::size_t node_count = 20778;
  std::size_t top_classes = 60;
  std::size_t classes_per_top = 10;
  std::size_t recipes = 2000;
  std::uint64_t seed = 42;
};

// Every relation type appears at least once and the built graph has exactly
// config.node_count nodes. Throws kInvalidConfig if the budget is too small.
std::vector<Edge> GenerateScaleEdges(const ScaleGraphConfig &config = {});

}  // namespace aquasub

#endif  // AQUASUB_SYNTHETIC_H_
