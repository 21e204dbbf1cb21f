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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "aquasub/error.h"
#include "test_support.h"

namespace aquasub {
namespace {

Edge Sub(std::string child, std::string parent) {
  return {std::move(child), Relation::kSubclassOf, TripleObject(std::move(parent)),
          Provenance::kMeasured};
}

Edge Num(std::string s, Relation r, double v,
         Provenance p = Provenance::kMeasured) {
  return {std::move(s), r, TripleObject(Literal{v, std::nullopt}), p};
}

std::vector<std::string> Ids(const std::vector<Substitution> &subs) {
  std::vector<std::string> out;
  for (const auto &s : subs) out.push_back(s.candidate);
  return out;
}

double Relative(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

class FixtureRecommenderTest : public ::testing::Test {
 protected:
  Graph graph_ = testsupport::LoadFixtureGraph();
  LinkTable links_ = testsupport::LoadFixtureLinks();
};

TEST_F(FixtureRecommenderTest, FallbackReachesCousins) {
  // whipping_cream (4300) is the only sibling and is filtered out, so the
  // grandparent fat_product supplies soy_cream and oat_cream; butter (5550)
  // fails the filter.
  EXPECT_EQ(CandidateSubstitutes(graph_, "dairy_cream"),
            (std::vector<std::string>{"oat_cream", "soy_cream"}));
  EXPECT_EQ(CandidateSubstitutes(graph_, "whipping_cream"),
            (std::vector<std::string>{"dairy_cream"}));
  EXPECT_EQ(CandidateSubstitutes(graph_, "oat_cream"), std::vector<std::string>{});
  EXPECT_EQ(CandidateSubstitutes(graph_, "soy_cream"),
            (std::vector<std::string>{"oat_cream"}));
}

TEST_F(FixtureRecommenderTest, RankingByFootprint) {
  auto subs = RecommendSubstitutes(graph_, "dairy_cream");
  ASSERT_EQ(Ids(subs), (std::vector<std::string>{"oat_cream", "soy_cream"}));
  EXPECT_EQ(subs[0].rank, 1u);
  EXPECT_EQ(subs[1].rank, 2u);
  EXPECT_EQ(subs[0].wf_original, 4000);
  EXPECT_EQ(subs[0].wf_candidate, 900);
  EXPECT_EQ(subs[0].wf_delta, -3100);
  EXPECT_EQ(subs[1].wf_delta, -2800);
  ASSERT_EQ(subs[0].nutrient_deltas.size(), 1u);
  EXPECT_EQ(subs[0].nutrient_deltas[0].nutrient, Relation::kHasFat);
  EXPECT_NEAR(subs[0].nutrient_deltas[0].delta, 12.9 - 36.1, 1e-12);
  ASSERT_EQ(subs[1].nutrient_deltas.size(), 2u);
  EXPECT_FALSE(subs[0].wf_original_imputed);
  EXPECT_FALSE(subs[0].wf_candidate_imputed);
  EXPECT_TRUE(RankCandidates(graph_, "dairy_cream", {}).empty());
}

TEST_F(FixtureRecommenderTest, NutrientDistanceOverSharedNutrients) {
  EXPECT_NEAR(NutrientDistance(graph_, "dairy_cream", "soy_cream"),
              (36.1 - 3.0) + (2.9 - 2.1), 1e-12);
  EXPECT_NEAR(NutrientDistance(graph_, "dairy_cream", "oat_cream"), 36.1 - 12.9,
              1e-12);
  EXPECT_EQ(NutrientDistance(graph_, "honey", "sugar"), 0.0);
}

TEST_F(FixtureRecommenderTest, AnalyzeRecipe) {
  std::vector<std::string> names{"dairy_cream", "sugar"};
  RecipeAnalysis a = AnalyzeRecipe(graph_, names, links_);
  EXPECT_EQ(a.total_wf, 4180);
  ASSERT_EQ(a.ingredients.size(), 2u);
  EXPECT_EQ(Ids(a.options.at("dairy_cream")),
            (std::vector<std::string>{"oat_cream", "soy_cream"}));
  EXPECT_TRUE(a.options.at("sugar").empty());
  EXPECT_TRUE(a.unresolved.empty());

  std::vector<std::string> none;
  RecipeAnalysis empty = AnalyzeRecipe(graph_, none, links_);
  EXPECT_EQ(empty.total_wf, 0);
  EXPECT_TRUE(empty.options.empty());

  std::vector<std::string> odd{"qqqq-unknown", "honey"};
  RecipeAnalysis u = AnalyzeRecipe(graph_, odd, links_);
  EXPECT_EQ(u.unresolved, std::vector<std::string>{"qqqq-unknown"});
  EXPECT_EQ(u.total_wf, 220);
}

TEST_F(FixtureRecommenderTest, ResolveIngredient) {
  LinkTable none;
  EXPECT_EQ(ResolveIngredient(graph_, "Butter, unsalted", links_), "butter");
  EXPECT_EQ(ResolveIngredient(graph_, "soy_cream", none), "soy_cream");
  EXPECT_EQ(ResolveIngredient(graph_, "Soy Cream", none), "soy_cream");
  EXPECT_EQ(ResolveIngredient(graph_, "heavy dairy cream", none), "dairy_cream");
  EXPECT_EQ(ResolveIngredient(graph_, "cream_product", none), std::nullopt);
  EXPECT_EQ(ResolveIngredient(graph_, "", none), std::nullopt);
}

TEST_F(FixtureRecommenderTest, ApplySubstitution) {
  std::vector<std::string> names{"dairy_cream", "sugar"};
  RecipeAnalysis a = AnalyzeRecipe(graph_, names, links_);
  SubstitutionOutcome o = ApplySubstitution(graph_, a, "dairy_cream", "oat_cream");
  EXPECT_EQ(o.report.wf_before, 4180);
  EXPECT_EQ(o.report.wf_after, 1080);
  EXPECT_EQ(o.report.wf_delta, -3100);
  EXPECT_EQ(o.analysis.total_wf, 1080);
  ASSERT_EQ(o.report.nutrients.size(), 1u);
  EXPECT_EQ(o.report.nutrients[0].nutrient, Relation::kHasFat);
  EXPECT_NEAR(o.report.nutrients[0].before, 36.1, 1e-12);
  EXPECT_NEAR(o.report.nutrients[0].after, 12.9, 1e-12);
  EXPECT_LT(o.report.nutrients[0].delta, 0);
  EXPECT_EQ(o.analysis.ingredients[0].profile.id, "oat_cream");

  // The reverse swap raises the footprint, so it is never offered.
  try {
    ApplySubstitution(graph_, o.analysis, "oat_cream", "dairy_cream");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotARecommendedCandidate);
  }
  EXPECT_THROW(ApplySubstitution(graph_, a, "dairy_cream", "butter"), Error);
  EXPECT_THROW(ApplySubstitution(graph_, a, "honey", "sugar"), Error);
}

TEST_F(FixtureRecommenderTest, NonIngredientsAreRejected) {
  try {
    CandidateSubstitutes(graph_, "cream_product");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAnIngredient);
  }
}

TEST(RecommenderTest, UniqueChildWithoutGrandparentHasNoCandidates) {
  Graph g = Graph::Build({Sub("a", "root"),
                          Num("a", Relation::kHasWaterFootprint, 10)});
  EXPECT_TRUE(CandidateSubstitutes(g, "a").empty());
}

TEST(RecommenderTest, EqualFootprintIsExcluded) {
  Graph g = Graph::Build({Sub("a", "root"), Sub("b", "root"), Sub("c", "root"),
                          Num("a", Relation::kHasWaterFootprint, 10),
                          Num("b", Relation::kHasWaterFootprint, 10),
                          Num("c", Relation::kHasWaterFootprint, 9)});
  EXPECT_EQ(CandidateSubstitutes(g, "a"), std::vector<std::string>{"c"});
}

TEST(RecommenderTest, TiesBreakByDistanceThenId) {
  Graph g = Graph::Build({Sub("x", "root"), Sub("b", "root"), Sub("a", "root"),
                          Sub("c", "root"),
                          Num("x", Relation::kHasWaterFootprint, 10),
                          Num("a", Relation::kHasWaterFootprint, 5),
                          Num("b", Relation::kHasWaterFootprint, 5),
                          Num("c", Relation::kHasWaterFootprint, 5),
                          Num("x", Relation::kHasFat, 10),
                          Num("c", Relation::kHasFat, 9),
                          Num("a", Relation::kHasFat, 5),
                          Num("b", Relation::kHasFat, 15)});
  EXPECT_EQ(Ids(RecommendSubstitutes(g, "x")),
            (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RecommenderTest, MissingFootprint) {
  Graph g = Graph::Build({Sub("a", "root"), Sub("b", "root"),
                          Num("b", Relation::kHasWaterFootprint, 1)});
  try {
    RecommendSubstitutes(g, "a");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFootprint);
  }
  std::vector<std::string> names{"a", "b"};
  RecipeAnalysis r = AnalyzeRecipe(g, names, LinkTable{});
  EXPECT_EQ(r.total_wf, 1);
  EXPECT_TRUE(r.options.at("a").empty());
}

TEST(RecommenderTest, ImputedValuesAreFlagged) {
  Graph g = Graph::Build({Sub("a", "root"), Sub("b", "root"),
                          Num("a", Relation::kHasWaterFootprint, 10),
                          Num("b", Relation::kHasWaterFootprint, 4,
                              Provenance::kImputed),
                          Num("a", Relation::kHasFat, 1),
                          Num("b", Relation::kHasFat, 2, Provenance::kImputed)});
  auto subs = RecommendSubstitutes(g, "a");
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_FALSE(subs[0].wf_original_imputed);
  EXPECT_TRUE(subs[0].wf_candidate_imputed);
  EXPECT_TRUE(subs[0].nutrient_deltas.at(0).imputed);
}

// Brute-force oracle over random ontology forests.
TEST(RecommenderPropertyTest, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    testsupport::RandomCase c = testsupport::GenerateRandomCase(seed);
    Graph g = Graph::Build(c.edges);
    for (const std::string &id : c.ingredients) {
      if (!c.wf.count(id)) {
        EXPECT_THROW(RecommendSubstitutes(g, id), Error);
        continue;
      }
      auto got = RecommendSubstitutes(g, id);
      auto want = testsupport::OracleRanking(c, id);
      ASSERT_EQ(got.size(), want.size()) << "seed " << seed << " " << id;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].candidate, want[i].id) << "seed " << seed << " " << id;
        EXPECT_EQ(got[i].wf_candidate, want[i].wf);
        EXPECT_EQ(got[i].rank, i + 1);
        EXPECT_LT(got[i].wf_delta, 0);
      }
      EXPECT_EQ(RecommendSubstitutes(g, id), got);
    }
  }
}

TEST(RecommenderPropertyTest, SubstitutionChainsKeepAccounts) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    testsupport::RandomCase c = testsupport::GenerateRandomCase(seed);
    Graph g = Graph::Build(c.edges);
    RecipeAnalysis a = AnalyzeRecipe(g, c.recipe, LinkTable{});
    double expected = 0;
    for (const auto &id : c.recipe) expected += c.wf.at(id);
    EXPECT_LE(Relative(a.total_wf, expected), 1e-9);
    for (int step = 0; step < 20; ++step) {
      auto next = std::find_if(a.options.begin(), a.options.end(),
                               [](const auto &kv) { return !kv.second.empty(); });
      if (next == a.options.end()) break;
      const Substitution &s = next->second.front();
      SubstitutionOutcome o = ApplySubstitution(g, a, s.original, s.candidate);
      EXPECT_LT(o.analysis.total_wf, a.total_wf);
      EXPECT_LE(Relative(o.analysis.total_wf,
                         a.total_wf - s.wf_original + s.wf_candidate),
                1e-9);
      EXPECT_LE(Relative(o.report.wf_delta, s.wf_delta), 1e-9);
      double members = 0;
      for (const auto &item : o.analysis.ingredients) members += item.profile.wf->value;
      EXPECT_LE(Relative(o.analysis.total_wf, members), 1e-9);

      std::set<Relation> keys;
      for (const auto &[r, q] : g.Profile(s.original).nutrients) keys.insert(r);
      for (const auto &[r, q] : g.Profile(s.candidate).nutrients) keys.insert(r);
      for (const auto &d : o.report.nutrients) EXPECT_TRUE(keys.count(d.nutrient));
      a = std::move(o.analysis);
    }
  }
}

}  // namespace
}  // namespace aquasub
