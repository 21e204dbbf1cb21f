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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "aquasub/graph_store.h"
#include "aquasub/imputer.h"
#include "aquasub/recommender.h"
#include "aquasub/schema_align.h"
#include "aquasub/service.h"
#include "aquasub/synthetic.h"
#include "aquasub/text.h"
#include "aquasub/triple_ingest.h"

namespace aquasub {
namespace {

std::string NTriplesCorpus(std::size_t lines) {
  std::string text;
  for (std::size_t i = 0; i < lines; ++i) {
    std::string s = "<http://example.org/food/item_" + std::to_string(i) + ">";
    if (i % 3 == 0) {
      text += s + " <http://www.w3.org/2000/01/rdf-schema#subClassOf> "
                  "<http://example.org/food/class_" + std::to_string(i % 97) + "> .\n";
    } else if (i % 3 == 1) {
      text += s + " <http://www.w3.org/2000/01/rdf-schema#label> \"item \\\"" +
              std::to_string(i) + "\\\"\" .\n";
    } else {
      text += s + " <http://example.org/food/has_fat> \"" + std::to_string(i % 50) +
              ".25\"^^<http://www.w3.org/2001/XMLSchema#decimal> .\n";
    }
  }
  return text;
}

std::string KgtkCorpus(std::size_t rows) {
  std::string text = std::string(kKgtkHeader) + "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    text += "e" + std::to_string(i) + "\titem_" + std::to_string(i) +
            (i % 2 == 0 ? "\thas_water_footprint\t" + std::to_string(100 + i % 900) +
                              ".5"
                        : "\tsubclass_of\tclass_" + std::to_string(i % 97)) +
            "\n";
  }
  return text;
}

const Graph &ScaleGraph() {
  static const Graph graph = Graph::Build(GenerateScaleEdges());
  return graph;
}

void BM_ParseNTriples(benchmark::State &state) {
  std::string text = NTriplesCorpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ParseNTriples(text));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseNTriples)->Arg(10000);

void BM_ParseKgtk(benchmark::State &state) {
  std::string text = KgtkCorpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ParseKgtkEdges(text));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseKgtk)->Arg(10000);

void BM_NormalizeName(benchmark::State &state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(NormalizeName("Fresh Chopped (ripe) vanilla-flavored Soy Yogurt"));
  }
}
BENCHMARK(BM_NormalizeName);

void BM_EmbedText(benchmark::State &state) {
  std::string text = "soy cream. soy cream is a kind of plant cream";
  for (auto _ : state) benchmark::DoNotOptimize(EmbedText(text));
}
BENCHMARK(BM_EmbedText);

void BM_Forward(benchmark::State &state) {
  ModelParams model = InitModel(TrainerConfig{});
  std::vector<double> x = ModelInput(EmbedText("oat cream"), Relation::kHasFat);
  for (auto _ : state) benchmark::DoNotOptimize(Forward(model, x));
}
BENCHMARK(BM_Forward);

void BM_LossAndGrad(benchmark::State &state) {
  ModelParams model = InitModel(TrainerConfig{});
  std::vector<TrainSample> batch;
  for (int i = 0; i < 32; ++i) {
    batch.push_back({ModelInput(EmbedText("item " + std::to_string(i)),
                                kNumericRelations[i % kNumericRelations.size()]),
                     1.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(LossAndGrad(model, batch));
}
BENCHMARK(BM_LossAndGrad);

void BM_BuildScaleGraph(benchmark::State &state) {
  auto edges = GenerateScaleEdges();
  for (auto _ : state) benchmark::DoNotOptimize(Graph::Build(edges));
}
BENCHMARK(BM_BuildScaleGraph)->Unit(benchmark::kMillisecond);

void BM_RecommendSubstitutes(benchmark::State &state) {
  const Graph &g = ScaleGraph();
  std::vector<std::string> ids;
  for (const auto &id : g.NodesOfKind(NodeKind::kIngredient)) {
    if (g.Value(id, Relation::kHasWaterFootprint)) ids.push_back(id);
  }
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RecommendSubstitutes(g, ids[rng() % ids.size()]));
  }
}
BENCHMARK(BM_RecommendSubstitutes)->Unit(benchmark::kMicrosecond);

void BM_ServiceSubstitutes(benchmark::State &state) {
  Service service(ScaleGraph(), LinkTable{});
  auto ids = service.graph().NodesOfKind(NodeKind::kIngredient);
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(service.Substitutes(ids[rng() % ids.size()]));
  }
}
BENCHMARK(BM_ServiceSubstitutes)->Unit(benchmark::kMicrosecond);

void BM_AnalyzeFixtureRecipe(benchmark::State &state) {
  Graph g = LoadSnapshot(ReadFile(std::string(AQUASUB_FIXTURE_DIR) + "/fixture.snapshot"));
  LinkTable links =
      LinkTable::FromCsv(ReadFile(std::string(AQUASUB_FIXTURE_DIR) + "/links.csv"));
  std::vector<std::string> names{"heavy dairy cream", "sugar", "honey"};
  for (auto _ : state) benchmark::DoNotOptimize(AnalyzeRecipe(g, names, links));
}
BENCHMARK(BM_AnalyzeFixtureRecipe);

}  // namespace
}  // namespace aquasub

BENCHMARK_MAIN();
