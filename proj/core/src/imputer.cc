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

#include "aquasub/imputer.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "aquasub/error.h"
#include "aquasub/text.h"

namespace aquasub {

namespace {

constexpr std::string_view kModelMagic = "aquasub-model v1";

double Relu(double z) { return z > 0 ? z : 0; }

double UniformUnit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ModelParams ZerosLike(const ModelParams &model) {
  ModelParams out;
  out.layers.reserve(model.layers.size());
  for (const auto &l : model.layers) out.layers.emplace_back(l.inputs, l.outputs);
  return out;
}

void CheckShape(const ModelParams &model, std::size_t input_size) {
  if (model.layers.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "model has no layers");
  }
  if (input_size != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input has " + std::to_string(input_size) +
                    " values, model expects " +
                    std::to_string(model.input_dim()));
  }
  for (std::size_t i = 1; i < model.layers.size(); ++i) {
    if (model.layers[i].inputs != model.layers[i - 1].outputs) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "layer " + std::to_string(i) + " does not chain");
    }
  }
  if (model.layers.back().outputs != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "output layer must have width 1");
  }
}

// Per-layer pre-activations and activations of one forward pass.
struct Workspace {
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> act;
  std::vector<double> delta;
  std::vector<double> prev_delta;

  explicit Workspace(const ModelParams &model) {
    for (const auto &l : model.layers) {
      pre.emplace_back(l.outputs, 0.0);
      act.emplace_back(l.outputs, 0.0);
    }
  }
};

double ForwardInto(const ModelParams &model, std::span<const double> x,
                   Workspace &ws) {
  std::span<const double> input = x;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer &layer = model.layers[l];
    auto &pre = ws.pre[l];
    auto &act = ws.act[l];
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      const double *w = &layer.weights[o * layer.inputs];
      double sum = layer.biases[o];
      for (std::size_t i = 0; i < layer.inputs; ++i) sum += w[i] * input[i];
      pre[o] = sum;
      act[o] = Relu(sum);
    }
    input = act;
  }
  return ws.act.back()[0];
}

// Adds d(loss)/d(params) for one sample to `grad`, given d(loss)/d(output).
void BackwardInto(const ModelParams &model, std::span<const double> x,
                  Workspace &ws, double d_output, ModelParams &grad) {
  const std::size_t last = model.layers.size() - 1;
  ws.delta.assign(1, ws.pre[last][0] > 0 ? d_output : 0.0);
  for (std::size_t l = last + 1; l-- > 0;) {
    const DenseLayer &layer = model.layers[l];
    DenseLayer &g = grad.layers[l];
    std::span<const double> input =
        l == 0 ? x : std::span<const double>(ws.act[l - 1]);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double d = ws.delta[o];
      if (d == 0) continue;
      g.biases[o] += d;
      double *gw = &g.weights[o * layer.inputs];
      for (std::size_t i = 0; i < layer.inputs; ++i) gw[i] += d * input[i];
    }
    if (l == 0) break;
    ws.prev_delta.assign(layer.inputs, 0.0);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double d = ws.delta[o];
      if (d == 0) continue;
      const double *w = &layer.weights[o * layer.inputs];
      for (std::size_t i = 0; i < layer.inputs; ++i) ws.prev_delta[i] += w[i] * d;
    }
    const auto &pre = ws.pre[l - 1];
    for (std::size_t i = 0; i < layer.inputs; ++i) {
      if (pre[i] <= 0) ws.prev_delta[i] = 0;
    }
    std::swap(ws.delta, ws.prev_delta);
  }
}

template <typename Fn>
void ForEachArray(ModelParams &a, ModelParams &b, ModelParams &c,
                  ModelParams &d, Fn fn) {
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    fn(a.layers[l].weights, b.layers[l].weights, c.layers[l].weights,
       d.layers[l].weights);
    fn(a.layers[l].biases, b.layers[l].biases, c.layers[l].biases,
       d.layers[l].biases);
  }
}

}  // namespace

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto &l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

bool ModelParams::AllFinite() const {
  for (const auto &l : layers) {
    for (double w : l.weights) {
      if (!std::isfinite(w)) return false;
    }
    for (double b : l.biases) {
      if (!std::isfinite(b)) return false;
    }
  }
  return true;
}

void TrainerConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (!(learning_rate > 0)) fail("learning_rate must be positive");
  if (!(beta1 > 0 && beta1 < 1)) fail("beta1 must lie in (0, 1)");
  if (!(beta2 > 0 && beta2 < 1)) fail("beta2 must lie in (0, 1)");
  if (!(epsilon > 0)) fail("epsilon must be positive");
  if (batch_size == 0) fail("batch_size must be positive");
  if (max_epochs == 0) fail("max_epochs must be positive");
}

ModelParams InitModel(const TrainerConfig &config) {
  std::mt19937_64 rng(config.seed);
  ModelParams model;
  std::size_t in = kModelInputDim;
  for (std::size_t l = 0; l <= kHiddenLayers; ++l) {
    std::size_t out = l == kHiddenLayers ? 1 : kHiddenWidth;
    DenseLayer layer(in, out);
    double limit = std::sqrt(6.0 / static_cast<double>(in));
    for (double &w : layer.weights) w = (2.0 * UniformUnit(rng) - 1.0) * limit;
    model.layers.push_back(std::move(layer));
    in = out;
  }
  return model;
}

double Forward(const ModelParams &model, std::span<const double> x) {
  CheckShape(model, x.size());
  Workspace ws(model);
  return ForwardInto(model, x, ws);
}

LossAndGradient LossAndGrad(const ModelParams &model,
                            std::span<const TrainSample> batch) {
  LossAndGradient result;
  result.gradient = ZerosLike(model);
  if (batch.empty()) return result;
  Workspace ws(model);
  const double n = static_cast<double>(batch.size());
  double sum = 0;
  for (const TrainSample &s : batch) {
    CheckShape(model, s.x.size());
    double residual = ForwardInto(model, s.x, ws) - s.y;
    sum += residual * residual;
    BackwardInto(model, s.x, ws, 2.0 * residual / n, result.gradient);
  }
  result.mse = sum / n;
  return result;
}

double MeanSquaredError(const ModelParams &model,
                        std::span<const TrainSample> data) {
  if (data.empty()) return 0;
  Workspace ws(model);
  double sum = 0;
  for (const TrainSample &s : data) {
    CheckShape(model, s.x.size());
    double r = ForwardInto(model, s.x, ws) - s.y;
    sum += r * r;
  }
  return sum / static_cast<double>(data.size());
}

TrainResult Train(std::span<const TrainSample> data,
                  const TrainerConfig &config) {
  config.Validate();
  if (data.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "training needs at least one sample");
  }
  TrainResult result;
  result.model = InitModel(config);
  for (const auto &s : data) CheckShape(result.model, s.x.size());

  ModelParams first = ZerosLike(result.model);
  ModelParams second = ZerosLike(result.model);
  ModelParams grad = ZerosLike(result.model);
  Workspace ws(result.model);

  std::mt19937_64 shuffle_rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  result.loss_curve.push_back(MeanSquaredError(result.model, data));
  std::uint64_t step = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng() % i]);
    }
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      std::size_t end = std::min(order.size(), start + config.batch_size);
      const double n = static_cast<double>(end - start);
      for (auto &l : grad.layers) {
        std::fill(l.weights.begin(), l.weights.end(), 0.0);
        std::fill(l.biases.begin(), l.biases.end(), 0.0);
      }
      for (std::size_t k = start; k < end; ++k) {
        const TrainSample &s = data[order[k]];
        double residual = ForwardInto(result.model, s.x, ws) - s.y;
        BackwardInto(result.model, s.x, ws, 2.0 * residual / n, grad);
      }
      ++step;
      const double correct1 =
          1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double correct2 =
          1.0 - std::pow(config.beta2, static_cast<double>(step));
      ForEachArray(result.model, grad, first, second,
                   [&](std::vector<double> &p, std::vector<double> &g,
                       std::vector<double> &m, std::vector<double> &v) {
                     for (std::size_t i = 0; i < p.size(); ++i) {
                       m[i] = config.beta1 * m[i] + (1 - config.beta1) * g[i];
                       v[i] = config.beta2 * v[i] +
                              (1 - config.beta2) * g[i] * g[i];
                       double m_hat = m[i] / correct1;
                       double v_hat = v[i] / correct2;
                       p[i] -= config.learning_rate * m_hat /
                               (std::sqrt(v_hat) + config.epsilon);
                     }
                   });
    }
    double mse = MeanSquaredError(result.model, data);
    if (!std::isfinite(mse) || !result.model.AllFinite()) {
      throw Error(ErrorCode::kNonFiniteLoss,
                  "epoch " + std::to_string(epoch) + " after " +
                      std::to_string(step) + " steps, last finite mse " +
                      FormatNumber(result.loss_curve.back()));
    }
    result.loss_curve.push_back(mse);
  }
  return result;
}

std::string LossCurveCsv(std::span<const double> curve) {
  std::string out = "epoch,mse\n";
  for (std::size_t e = 0; e < curve.size(); ++e) {
    out += std::to_string(e) + "," + FormatNumber(curve[e]) + "\n";
  }
  return out;
}

TargetNormalizer TargetNormalizer::Fit(
    std::span<const std::pair<Relation, double>> values) {
  auto moments = [](const std::vector<double> &xs) {
    Moments m;
    if (xs.empty()) return m;
    double sum = 0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    double sq = 0;
    for (double x : xs) sq += (x - m.mean) * (x - m.mean);
    double sd = std::sqrt(sq / static_cast<double>(xs.size()));
    m.stddev = sd > 0 ? sd : 1.0;
    return m;
  };
  std::array<std::vector<double>, kRelationCount> grouped;
  std::vector<double> all;
  for (const auto &[r, y] : values) {
    double t = std::log1p(y);
    grouped[RelationIndex(r)].push_back(t);
    all.push_back(t);
  }
  TargetNormalizer norm;
  norm.pooled_ = moments(all);
  for (Relation r : kAllRelations) {
    const auto &xs = grouped[RelationIndex(r)];
    if (!xs.empty()) norm.per_relation_[RelationIndex(r)] = moments(xs);
  }
  return norm;
}

const TargetNormalizer::Moments &TargetNormalizer::For(Relation r) const {
  const auto &m = per_relation_[RelationIndex(r)];
  return m ? *m : pooled_;
}

double TargetNormalizer::Normalize(Relation r, double y) const {
  const Moments &m = For(r);
  return (std::log1p(y) - m.mean) / m.stddev + kShift;
}

double TargetNormalizer::Denormalize(Relation r, double z) const {
  const Moments &m = For(r);
  return std::max(0.0, std::expm1((z - kShift) * m.stddev + m.mean));
}

std::string IngredientSentence(const Graph &graph, std::string_view id) {
  NameResolver names = [&graph](std::string_view node) {
    return std::optional<std::string>(graph.DisplayName(node));
  };
  std::string sentence = graph.DisplayName(id);
  for (std::uint32_t e : graph.Outgoing(id, Relation::kSubclassOf)) {
    sentence += ". ";
    sentence += VerbalizeEdge(graph.edges()[e], names);
  }
  return sentence;
}

std::vector<double> ModelInput(const EmbeddingVector &embedding, Relation r) {
  std::vector<double> x(kModelInputDim, 0.0);
  std::copy(embedding.values.begin(), embedding.values.end(), x.begin());
  x[kEmbeddingDim + RelationIndex(r)] = 1.0;
  return x;
}

TrainingData BuildTrainingData(const Graph &graph) {
  struct Pending {
    std::size_t embedding;
    Relation relation;
    double value;
  };
  std::vector<EmbeddingVector> embeddings;
  std::vector<Pending> pending;
  std::vector<std::pair<Relation, double>> values;
  for (const std::string &id : graph.NodesOfKind(NodeKind::kIngredient)) {
    bool embedded = false;
    for (Relation r : kNumericRelations) {
      for (std::uint32_t e : graph.Outgoing(id, r)) {
        const Edge &edge = graph.edges()[e];
        if (edge.provenance != Provenance::kMeasured) continue;
        if (!embedded) {
          embeddings.push_back(EmbedText(IngredientSentence(graph, id)));
          embedded = true;
        }
        pending.push_back({embeddings.size() - 1, r, edge.literal().number()});
        values.emplace_back(r, edge.literal().number());
      }
    }
  }
  TrainingData data;
  data.normalizer = TargetNormalizer::Fit(values);
  data.samples.reserve(pending.size());
  for (const auto &p : pending) {
    data.samples.push_back({ModelInput(embeddings[p.embedding], p.relation),
                            data.normalizer.Normalize(p.relation, p.value)});
  }
  return data;
}

std::string SaveModel(const ImputerModel &model) {
  const TrainerConfig &c = model.config;
  std::ostringstream out;
  out << kModelMagic << '\n';
  out << "config " << FormatHexDouble(c.learning_rate) << ' '
      << FormatHexDouble(c.beta1) << ' ' << FormatHexDouble(c.beta2) << ' '
      << FormatHexDouble(c.epsilon) << ' ' << c.batch_size << ' '
      << c.max_epochs << ' ' << c.seed << '\n';
  const auto &pooled = model.normalizer.pooled();
  out << "pooled " << FormatHexDouble(pooled.mean) << ' '
      << FormatHexDouble(pooled.stddev) << '\n';
  for (Relation r : kAllRelations) {
    if (!model.normalizer.HasRelation(r)) continue;
    const auto &m = model.normalizer.For(r);
    out << "moments " << RelationLabel(r) << ' ' << FormatHexDouble(m.mean)
        << ' ' << FormatHexDouble(m.stddev) << '\n';
  }
  out << "layers " << model.params.layers.size() << '\n';
  for (const auto &layer : model.params.layers) {
    out << "layer " << layer.inputs << ' ' << layer.outputs << '\n';
    out << "weights";
    for (double w : layer.weights) out << ' ' << FormatHexDouble(w);
    out << "\nbiases";
    for (double b : layer.biases) out << ' ' << FormatHexDouble(b);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

ImputerModel LoadModel(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string &why) -> void {
    throw Error(ErrorCode::kInvalidModel, why);
  };
  auto hex = [&](const std::string &token) {
    auto v = ParseHexDouble(token);
    if (!v) fail("bad number " + token);
    return *v;
  };
  std::string line;
  std::getline(in, line);
  if (line != kModelMagic) fail("missing model header");

  ImputerModel model;
  std::string tag;
  if (!(in >> tag) || tag != "config") fail("missing config");
  {
    std::string lr, b1, b2, eps;
    in >> lr >> b1 >> b2 >> eps >> model.config.batch_size >>
        model.config.max_epochs >> model.config.seed;
    if (!in) fail("truncated config");
    model.config.learning_rate = hex(lr);
    model.config.beta1 = hex(b1);
    model.config.beta2 = hex(b2);
    model.config.epsilon = hex(eps);
  }
  std::size_t layer_count = 0;
  while (in >> tag) {
    if (tag == "pooled") {
      std::string mean, sd;
      in >> mean >> sd;
      model.normalizer.SetPooled({hex(mean), hex(sd)});
    } else if (tag == "moments") {
      std::string label, mean, sd;
      in >> label >> mean >> sd;
      auto r = ParseRelation(label);
      if (!r) fail("unknown relation " + label);
      model.normalizer.Set(*r, {hex(mean), hex(sd)});
    } else if (tag == "layers") {
      in >> layer_count;
      break;
    } else {
      fail("unexpected token " + tag);
    }
  }
  if (!in || layer_count == 0 || layer_count > 64) fail("bad layer count");
  for (std::size_t l = 0; l < layer_count; ++l) {
    std::size_t inputs = 0, outputs = 0;
    if (!(in >> tag) || tag != "layer" || !(in >> inputs >> outputs) ||
        inputs == 0 || outputs == 0 || inputs * outputs > (1u << 24)) {
      fail("bad layer header");
    }
    DenseLayer layer(inputs, outputs);
    std::string token;
    if (!(in >> tag) || tag != "weights") fail("missing weights");
    for (double &w : layer.weights) {
      if (!(in >> token)) fail("truncated weights");
      w = hex(token);
    }
    if (!(in >> tag) || tag != "biases") fail("missing biases");
    for (double &b : layer.biases) {
      if (!(in >> token)) fail("truncated biases");
      b = hex(token);
    }
    model.params.layers.push_back(std::move(layer));
  }
  if (!(in >> tag) || tag != "end") fail("missing end marker");
  try {
    CheckShape(model.params, model.params.input_dim());
  } catch (const Error &e) {
    fail(e.what());
  }
  return model;
}

double PredictValue(const Graph &graph, std::string_view id, Relation r,
                    const ModelParams &params,
                    const TargetNormalizer &normalizer) {
  auto x = ModelInput(EmbedText(IngredientSentence(graph, id)), r);
  return normalizer.Denormalize(r, Forward(params, x));
}

Graph ImputeMissing(const Graph &graph, const ModelParams &params,
                    const TargetNormalizer &normalizer) {
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  std::size_t original = edges.size();
  for (const std::string &id : graph.NodesOfKind(NodeKind::kIngredient)) {
    std::optional<EmbeddingVector> embedding;
    for (Relation r : kNumericRelations) {
      if (!graph.Outgoing(id, r).empty()) continue;
      if (!embedding) embedding = EmbedText(IngredientSentence(graph, id));
      double z = Forward(params, ModelInput(*embedding, r));
      edges.push_back({id, r, Literal{normalizer.Denormalize(r, z), std::nullopt},
                       Provenance::kImputed});
    }
  }
  if (edges.size() == original) return graph;
  return Graph::Build(std::move(edges));
}

}  // namespace aquasub
