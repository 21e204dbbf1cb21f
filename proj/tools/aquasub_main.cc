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

// aquasub: offline pipeline stages, batch queries and the HTTP service.

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "aquasub/error.h"
#include "aquasub/graph_store.h"
#include "aquasub/imputer.h"
#include "aquasub/pipeline.h"
#include "aquasub/recommender.h"
#include "aquasub/service.h"
#include "aquasub/text.h"
#include "json.hpp"

namespace aquasub {
namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Rounds to the 3 decimals the service emits and prints the shortest form.
std::string Num(double x) {
  double r = std::round(x * 1000.0) / 1000.0;
  return FormatNumber(r == 0 ? 0.0 : r);
}

std::string Marked(const Quantity &q) {
  return Num(q.value) + (q.imputed() ? "*" : "");
}

std::vector<std::string> SplitList(const std::string &list) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    std::string item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(std::move(item));
    pos = comma + 1;
  }
  return out;
}

// Paths and endpoints shared by stats, recommend and serve. Flags win over
// environment variables, which win over the config file.
struct ServiceFlags {
  std::string config;
  std::string snapshot;
  std::string model;
  std::string links;
  std::string host;
  int port = -1;

  void Register(CLI::App *cmd, bool with_endpoint) {
    cmd->add_option("--config", config, "key=value service config file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--snapshot", snapshot, "graph snapshot")
        ->check(CLI::ExistingFile);
    cmd->add_option("--links", links, "link table CSV")->check(CLI::ExistingFile);
    if (with_endpoint) {
      cmd->add_option("--model", model, "imputer model file")
          ->check(CLI::ExistingFile);
      cmd->add_option("--host", host, "listen address");
      cmd->add_option("--port", port, "listen port, 0 picks a free one")
          ->check(CLI::Range(0, 65535));
    }
  }

  ServiceConfig Resolve() const {
    ServiceConfig c;
    if (!config.empty()) {
      c = ParseConfig(ReadFile(config));
      // Relative paths in a config file are relative to the file itself.
      auto dir = std::filesystem::path(config).parent_path();
      for (std::string *p : {&c.snapshot_path, &c.model_path,
                             &c.link_table_path}) {
        if (!p->empty() && std::filesystem::path(*p).is_relative()) {
          *p = (dir / *p).lexically_normal().string();
        }
      }
    }
    ApplyEnvOverrides(c);
    if (!snapshot.empty()) c.snapshot_path = snapshot;
    if (!model.empty()) c.model_path = model;
    if (!links.empty()) c.link_table_path = links;
    if (!host.empty()) c.host = host;
    if (port >= 0) c.port = port;
    if (c.snapshot_path.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "a snapshot is required (--snapshot or snapshot_path)");
    }
    c.Validate(/*check_paths=*/true);
    return c;
  }
};

// ---------------------------------------------------------------- ingest

struct IngestFlags {
  std::vector<std::string> ntriples, kgtk, wf;
  std::string out;
  bool lenient = false;
};

int RunIngest(const IngestFlags &f) {
  std::vector<SourceText> sources;
  auto add = [&](SourceKind kind, const std::vector<std::string> &paths) {
    for (const auto &p : paths) sources.push_back({kind, p, ReadFile(p)});
  };
  add(SourceKind::kNTriples, f.ntriples);
  add(SourceKind::kKgtk, f.kgtk);
  add(SourceKind::kWaterFootprint, f.wf);

  IngestResult result = Ingest(
      sources, f.lenient ? ParseMode::kLenient : ParseMode::kStrict);
  WriteFileAtomic(f.out, WriteKgtkEdges(result.rows));

  std::cout << "source\tprefix\trows\tskipped\n";
  for (const SourceReport &r : result.report) {
    std::cout << r.name << '\t' << r.id_prefix << '\t' << r.rows << '\t'
              << r.skipped.size() << '\n';
    for (const ParseIssue &issue : r.skipped) {
      std::cerr << r.name << ':' << issue.line << ": skipped: " << issue.reason
                << '\n';
    }
  }
  std::cout << "edges\t" << result.rows.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------- align

int RunAlign(const std::string &edges_path, const std::string &out,
             const LinkConfig &config) {
  std::vector<KgtkEdgeRow> rows = ParseKgtkEdges(ReadFile(edges_path));
  LinkTable table = Align(rows, config);
  WriteFileAtomic(out, table.ToCsv());
  std::map<LinkMethod, std::size_t> by_method;
  for (const LinkEntry &e : table.Entries()) ++by_method[e.method];
  std::cout << "names\t" << table.size() << '\n';
  for (auto [method, count] : by_method) {
    std::cout << LinkMethodName(method) << '\t' << count << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- build

void PrintStats(const GraphStats &s) {
  std::cout << "nodes\t" << s.node_count << "\nrelation_types\t"
            << s.relation_type_count << "\nedges\t" << s.edge_count << '\n';
}

int RunBuild(const std::string &edges_path, const std::string &links_path,
             const std::string &out) {
  std::vector<KgtkEdgeRow> rows = ParseKgtkEdges(ReadFile(edges_path));
  LinkTable links;
  if (!links_path.empty()) links = LinkTable::FromCsv(ReadFile(links_path));
  Graph graph = BuildGraph(rows, links);
  WriteFileAtomic(out, SaveSnapshot(graph));
  PrintStats(graph.Stats());
  return 0;
}

// ---------------------------------------------------------------- train

struct TrainFlags {
  std::string snapshot, out, loss_curve;
  TrainerConfig config;
};

int RunTrain(const TrainFlags &f) {
  f.config.Validate();
  Graph graph = LoadSnapshot(ReadFile(f.snapshot));
  TrainingData data = BuildTrainingData(graph);
  if (data.samples.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "snapshot has no measured numeric values to train on");
  }
  TrainResult result = Train(data.samples, f.config);
  ImputerModel model{f.config, data.normalizer, std::move(result.model)};
  WriteFileAtomic(f.out, SaveModel(model));
  if (!f.loss_curve.empty()) {
    WriteFileAtomic(f.loss_curve, LossCurveCsv(result.loss_curve));
  }
  std::cout << "samples\t" << data.samples.size() << "\nepochs\t"
            << f.config.max_epochs << "\nmse_initial\t"
            << FormatNumber(result.loss_curve.front()) << "\nmse_final\t"
            << FormatNumber(result.loss_curve.back()) << '\n';
  return 0;
}

// ---------------------------------------------------------------- impute

int RunImpute(const std::string &snapshot, const std::string &model_path,
              const std::string &out) {
  Graph graph = LoadSnapshot(ReadFile(snapshot));
  ImputerModel model = LoadModel(ReadFile(model_path));
  Graph imputed = ImputeMissing(graph, model.params, model.normalizer);
  WriteFileAtomic(out, SaveSnapshot(imputed));
  std::cout << "imputed_edges\t"
            << imputed.Stats().edge_count - graph.Stats().edge_count << '\n';
  PrintStats(imputed.Stats());
  return 0;
}

// ---------------------------------------------------------------- stats

int RunStats(const ServiceFlags &flags, bool json) {
  ServiceConfig c = flags.Resolve();
  Graph graph = LoadSnapshot(ReadFile(c.snapshot_path));
  if (json) {
    std::cout << StatsJson(graph.Stats()) << '\n';
    return 0;
  }
  PrintStats(graph.Stats());
  for (NodeKind kind : {NodeKind::kRecipe, NodeKind::kIngredient,
                        NodeKind::kOntologyClass}) {
    std::cout << NodeKindName(kind) << '\t' << graph.NodesOfKind(kind).size()
              << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- recommend

struct RecommendFlags {
  ServiceFlags service;
  std::string recipe;
  std::string apply;
  bool json = false;
};

void PrintAnalysis(const RecipeAnalysis &a) {
  std::printf("%-28s %-28s %12s\n", "ingredient", "id", "wf_m3_per_ton");
  for (const RecipeItem &item : a.ingredients) {
    std::printf("%-28s %-28s %12s\n", item.raw_name.c_str(),
                item.profile.id.c_str(),
                item.profile.wf ? Marked(*item.profile.wf).c_str() : "-");
  }
  for (const std::string &name : a.unresolved) {
    std::printf("%-28s %-28s %12s\n", name.c_str(), "(unresolved)", "-");
  }
  std::printf("total_wf %s\n", Num(a.total_wf).c_str());
  for (const RecipeItem &item : a.ingredients) {
    auto it = a.options.find(item.profile.id);
    if (it == a.options.end() || it->second.empty()) {
      std::printf("\nsubstitutes for %s: none\n", item.profile.id.c_str());
      continue;
    }
    std::printf("\nsubstitutes for %s\n%4s  %-28s %12s %12s\n",
                item.profile.id.c_str(), "rank", "candidate", "wf", "wf_delta");
    for (const Substitution &s : it->second) {
      std::printf("%4zu  %-28s %12s %12s\n", s.rank, s.candidate.c_str(),
                  (Num(s.wf_candidate) + (s.wf_candidate_imputed ? "*" : ""))
                      .c_str(),
                  Num(s.wf_delta).c_str());
    }
  }
}

void PrintReport(const DeltaReport &r) {
  std::printf("\nswap %s -> %s\n", r.original.c_str(), r.candidate.c_str());
  std::printf("total_wf %s -> %s (delta %s)\n", Num(r.wf_before).c_str(),
              Num(r.wf_after).c_str(), Num(r.wf_delta).c_str());
  for (const NutrientDelta &d : r.nutrients) {
    std::printf("%s %s -> %s (delta %s)%s\n",
                std::string(NutrientName(d.nutrient)).c_str(),
                Num(d.before).c_str(), Num(d.after).c_str(),
                Num(d.delta).c_str(), d.imputed ? " *" : "");
  }
}

int RunRecommend(const RecommendFlags &f) {
  ServiceConfig c = f.service.Resolve();
  Graph graph = LoadSnapshot(ReadFile(c.snapshot_path));
  LinkTable links;
  if (!c.link_table_path.empty()) {
    links = LinkTable::FromCsv(ReadFile(c.link_table_path));
  }
  std::vector<std::string> names = SplitList(f.recipe);
  RecipeAnalysis analysis = AnalyzeRecipe(graph, names, links);

  // Either the requested swap or the top-ranked option per ingredient.
  std::vector<DeltaReport> reports;
  if (!f.apply.empty()) {
    std::size_t eq = f.apply.find('=');
    std::string original = f.apply.substr(0, eq);
    std::string candidate = f.apply.substr(eq + 1);
    auto resolve = [&](const std::string &n) {
      return ResolveIngredient(graph, n, links).value_or(n);
    };
    reports.push_back(ApplySubstitution(graph, analysis, resolve(original),
                                        resolve(candidate))
                          .report);
  } else {
    for (const RecipeItem &item : analysis.ingredients) {
      auto it = analysis.options.find(item.profile.id);
      if (it == analysis.options.end() || it->second.empty()) continue;
      reports.push_back(ApplySubstitution(graph, analysis, item.profile.id,
                                          it->second.front().candidate)
                            .report);
    }
  }

  if (f.json) {
    nlohmann::ordered_json out;
    out["analysis"] = nlohmann::ordered_json::parse(RecipeAnalysisJson(analysis));
    out["swaps"] = nlohmann::ordered_json::array();
    for (const DeltaReport &r : reports) {
      out["swaps"].push_back(nlohmann::ordered_json::parse(DeltaReportJson(r)));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  PrintAnalysis(analysis);
  for (const DeltaReport &r : reports) PrintReport(r);
  std::fflush(stdout);
  return 0;
}

// ---------------------------------------------------------------- serve

int RunServe(const ServiceFlags &flags) {
  ServiceConfig c = flags.Resolve();

  // Block termination signals before the server spawns its workers so only
  // the watcher thread receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service = Service::FromConfig(c);
  HttpServer server(service, c);
  int port = server.Bind();
  std::cout << "listening on http://" << c.host << ':' << port << std::endl;

  std::atomic<bool> done{false};
  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    if (!done.load()) server.Stop();
  });
  server.Run();
  done.store(true);
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  std::cerr << "stopped\n";
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Water-footprint aware ingredient substitution over a food graph",
               "aquasub"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aquasub 0.1.0");

  IngestFlags ingest;
  auto *ingest_cmd =
      app.add_subcommand("ingest", "merge N-Triples, KGTK and WF tables");
  ingest_cmd->add_option("--ntriples", ingest.ntriples, "N-Triples file")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--kgtk", ingest.kgtk, "KGTK edge file")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--wf", ingest.wf, "water-footprint CSV")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "merged KGTK edge file")
      ->required();
  ingest_cmd->add_flag("--lenient", ingest.lenient,
                       "skip malformed N-Triples lines instead of failing");
  ingest_cmd->callback([&] {
    if (ingest.ntriples.empty() && ingest.kgtk.empty() && ingest.wf.empty()) {
      throw CLI::ValidationError("ingest", "at least one input is required");
    }
  });

  std::string align_edges, align_out;
  LinkConfig link_config;
  auto *align_cmd = app.add_subcommand("align", "link raw names onto ids");
  align_cmd->add_option("--edges", align_edges, "ingested edge file")
      ->required()
      ->check(CLI::ExistingFile);
  align_cmd->add_option("--out-links", align_out, "link table CSV")->required();
  align_cmd->add_option("--threshold", link_config.threshold,
                        "minimum cosine for an embedding link")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));

  std::string build_edges, build_links, build_out;
  auto *build_cmd = app.add_subcommand("build", "build a graph snapshot");
  build_cmd->add_option("--edges", build_edges, "ingested edge file")
      ->required()
      ->check(CLI::ExistingFile);
  build_cmd->add_option("--links", build_links, "link table CSV")
      ->check(CLI::ExistingFile);
  build_cmd->add_option("--out", build_out, "snapshot path")->required();

  TrainFlags train;
  auto *train_cmd = app.add_subcommand("train", "train the value imputer");
  train_cmd->add_option("--snapshot", train.snapshot, "graph snapshot")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "model path")->required();
  train_cmd->add_option("--loss-curve", train.loss_curve, "epoch,mse CSV");
  train_cmd->add_option("--seed", train.config.seed)->capture_default_str();
  train_cmd->add_option("--epochs", train.config.max_epochs)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--learning-rate", train.config.learning_rate)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch-size", train.config.batch_size)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string impute_snapshot, impute_model, impute_out;
  auto *impute_cmd =
      app.add_subcommand("impute", "fill missing numeric values");
  impute_cmd->add_option("--snapshot", impute_snapshot, "graph snapshot")
      ->required()
      ->check(CLI::ExistingFile);
  impute_cmd->add_option("--model", impute_model, "trained model")
      ->required()
      ->check(CLI::ExistingFile);
  impute_cmd->add_option("--out", impute_out, "imputed snapshot path")
      ->required();

  ServiceFlags stats_flags;
  bool stats_json = false;
  auto *stats_cmd = app.add_subcommand("stats", "print graph statistics");
  stats_flags.Register(stats_cmd, false);
  stats_cmd->add_flag("--json", stats_json, "print the /v1/stats body");

  RecommendFlags recommend;
  auto *recommend_cmd =
      app.add_subcommand("recommend", "rank substitutes for a recipe");
  recommend.service.Register(recommend_cmd, false);
  recommend_cmd
      ->add_option("--recipe", recommend.recipe,
                   "comma separated ingredient names or ids")
      ->required();
  recommend_cmd
      ->add_option("--apply", recommend.apply,
                   "ORIGINAL=CANDIDATE swap to report instead of the top ones")
      ->check([](const std::string &v) {
        std::size_t eq = v.find('=');
        return eq == std::string::npos || eq == 0 || eq + 1 == v.size()
                   ? std::string("expected ORIGINAL=CANDIDATE")
                   : std::string();
      });
  recommend_cmd->add_flag("--json", recommend.json, "print JSON");

  ServiceFlags serve_flags;
  auto *serve_cmd = app.add_subcommand("serve", "run the HTTP API");
  serve_flags.Register(serve_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return RunIngest(ingest);
    if (*align_cmd) return RunAlign(align_edges, align_out, link_config);
    if (*build_cmd) return RunBuild(build_edges, build_links, build_out);
    if (*train_cmd) return RunTrain(train);
    if (*impute_cmd) return RunImpute(impute_snapshot, impute_model, impute_out);
    if (*stats_cmd) return RunStats(stats_flags, stats_json);
    if (*recommend_cmd) return RunRecommend(recommend);
    if (*serve_cmd) return RunServe(serve_flags);
  } catch (const Error &e) {
    std::cerr << "aquasub: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidConfig ? kExitUsage : kExitRuntime;
  } catch (const std::exception &e) {
    std::cerr << "aquasub: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace aquasub

int main(int argc, char **argv) { return aquasub::Main(argc, argv); }
