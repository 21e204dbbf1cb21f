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

#ifndef AQUASUB_IMPUTER_H_
#define AQUASUB_IMPUTER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aquasub/graph_store.h"
#include "aquasub/schema_align.h"

namespace aquasub {

// Input is an ingredient embedding followed by a relation one-hot.
inline constexpr std::size_t kModelInputDim = kEmbeddingDim + kRelationCount;
inline constexpr std::size_t kHiddenWidth = 64;
inline constexpr std::size_t kHiddenLayers = 4;

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> biases;   // outputs

  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out)
      : inputs(in), outputs(out), weights(in * out, 0.0), biases(out, 0.0) {}

  double &weight(std::size_t o, std::size_t i) { return weights[o * inputs + i]; }
  double weight(std::size_t o, std::size_t i) const {
    return weights[o * inputs + i];
  }

  friend bool operator==(const DenseLayer &, const DenseLayer &) = default;
};

// A chain of dense layers, each followed by ReLU (the output layer too, so
// predictions are never negative).
struct ModelParams {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const {
    return layers.empty() ? 0 : layers.front().inputs;
  }
  std::size_t parameter_count() const;
  bool AllFinite() const;

  friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

struct TrainSample {
  std::vector<double> x;
  double y = 0;
};

struct TrainerConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 500;
  std::uint64_t seed = 7;

  // Throws kInvalidConfig unless every hyperparameter is positive and the
  // betas lie in (0, 1).
  void Validate() const;

  friend bool operator==(const TrainerConfig &, const TrainerConfig &) = default;
};

// Standard architecture: kModelInputDim -> 4 x kHiddenWidth -> 1 with
// He-uniform weights (limit sqrt(6 / fan_in)) and zero biases.
ModelParams InitModel(const TrainerConfig &config);

// Throws kDimensionMismatch when x does not fit the first layer.
double Forward(const ModelParams &model, std::span<const double> x);

struct LossAndGradient {
  double mse = 0;
  ModelParams gradient;  // same shapes as the model
};

// Mean squared error over the batch and its gradient by backpropagation.
// The ReLU derivative at exactly zero is taken as zero.
LossAndGradient LossAndGrad(const ModelParams &model,
                            std::span<const TrainSample> batch);

double MeanSquaredError(const ModelParams &model,
                        std::span<const TrainSample> data);

struct TrainResult {
  ModelParams model;
  // Entry 0 is the MSE over all data before training, entry e the MSE after
  // epoch e.
  std::vector<double> loss_curve;
};

// Minibatch Adam with bias-corrected moments. Shuffles every epoch with a
// generator seeded from config.seed. Throws kNonFiniteLoss.
TrainResult Train(std::span<const TrainSample> data,
                  const TrainerConfig &config);

// `epoch,mse` CSV of a loss curve.
std::string LossCurveCsv(std::span<const double> curve);

// Per-relation z-scoring of log1p targets, shifted by kShift standard
// deviations so typical targets are non-negative for the output ReLU.
class TargetNormalizer {
 public:
  static constexpr double kShift = 3.0;

  struct Moments {
    double mean = 0;
    double stddev = 1;
    friend bool operator==(const Moments &, const Moments &) = default;
  };

  // Relations without training values use moments pooled over all values.
  // A zero standard deviation is replaced by 1.
  static TargetNormalizer Fit(
      std::span<const std::pair<Relation, double>> values);

  double Normalize(Relation r, double y) const;
  // Clamped at zero.
  double Denormalize(Relation r, double z) const;

  const Moments &For(Relation r) const;
  bool HasRelation(Relation r) const {
    return per_relation_[RelationIndex(r)].has_value();
  }
  const Moments &pooled() const { return pooled_; }

  void Set(Relation r, Moments m) { per_relation_[RelationIndex(r)] = m; }
  void SetPooled(Moments m) { pooled_ = m; }

  friend bool operator==(const TargetNormalizer &,
                         const TargetNormalizer &) = default;

 private:
  std::array<std::optional<Moments>, kRelationCount> per_relation_;
  Moments pooled_;
};

// "soy cream. soy cream is a kind of plant cream": the display name plus
// its verbalized subclass_of edges. Numeric edges are left out so the input
// never contains the value being predicted.
std::string IngredientSentence(const Graph &graph, std::string_view id);

std::vector<double> ModelInput(const EmbeddingVector &embedding, Relation r);

struct TrainingData {
  std::vector<TrainSample> samples;
  TargetNormalizer normalizer;
};

// One sample per measured numeric edge of every ingredient.
TrainingData BuildTrainingData(const Graph &graph);

struct ImputerModel {
  TrainerConfig config;
  TargetNormalizer normalizer;
  ModelParams params;

  friend bool operator==(const ImputerModel &, const ImputerModel &) = default;
};

// Versioned text container; doubles are written as hex floats so a load
// reproduces the parameters bit for bit.
std::string SaveModel(const ImputerModel &model);
ImputerModel LoadModel(std::string_view text);  // throws kInvalidModel

double PredictValue(const Graph &graph, std::string_view id, Relation r,
                    const ModelParams &params,
                    const TargetNormalizer &normalizer);

// New graph version in which every ingredient lacking a numeric relation
// gains an imputed edge for it. Existing edges are kept unchanged.
Graph ImputeMissing(const Graph &graph, const ModelParams &params,
                    const TargetNormalizer &normalizer);

}  // namespace aquasub

#endif  // AQUASUB_IMPUTER_H_
