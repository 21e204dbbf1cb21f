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

#ifndef AQUASUB_SERVICE_H_
#define AQUASUB_SERVICE_H_

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aquasub/error.h"
#include "aquasub/graph_store.h"
#include "aquasub/recommender.h"
#include "aquasub/schema_align.h"

namespace aquasub {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
  std::string snapshot_path;
  std::string model_path;       // optional
  std::string link_table_path;  // optional
  int latency_budget_ms = 1000;
  std::string log_level = "info";  // debug, info, warn, error, off

  // Throws kInvalidConfig. With `check_paths`, the snapshot must exist, and
  // so must the model and link table when they are set.
  void Validate(bool check_paths) const;
};

// `key=value` lines with '#' comments. Keys are the ServiceConfig field
// names. Throws kInvalidConfig on unknown keys or bad values.
ServiceConfig ParseConfig(std::string_view text,
                          ServiceConfig base = ServiceConfig{});

using EnvLookup = std::function<const char *(const char *)>;

// AQUASUB_<FIELD> environment variables override file values, e.g.
// AQUASUB_PORT or AQUASUB_SNAPSHOT_PATH.
void ApplyEnvOverrides(ServiceConfig &config,
                       const EnvLookup &lookup = [](const char *name) {
                         return std::getenv(name);
                       });

struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
};

// Exactly one (status, code) per library error code.
ApiError ToApiError(const Error &error);

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON

  friend bool operator==(const HttpResponse &, const HttpResponse &) = default;
};

// JSON encodings shared by the service and the command line tool. Numbers
// are rounded to 3 decimal places and keys keep a fixed order, so equal
// inputs give byte-identical text.
std::string SubstitutionsJson(const std::vector<Substitution> &subs);
std::string DeltaReportJson(const DeltaReport &report);
std::string RecipeAnalysisJson(const RecipeAnalysis &analysis);
std::string StatsJson(const GraphStats &stats);

// Request handling over one immutable graph snapshot. Every method is const
// and thread-safe; the HTTP layer is a thin adapter over Handle().
class Service {
 public:
  static constexpr std::size_t kMaxSearchResults = 25;

  Service(Graph graph, LinkTable links, ServiceConfig config = {});

  // Loads the snapshot, link table and model named by `config`.
  static Service FromConfig(const ServiceConfig &config);

  HttpResponse SearchIngredients(std::string_view query) const;
  HttpResponse Substitutes(std::string_view id) const;
  HttpResponse AnalyzeRecipe(std::string_view body) const;
  HttpResponse SubstituteInRecipe(std::string_view body) const;
  HttpResponse Stats() const;

  // Routes (method, decoded path, query parameters, body).
  HttpResponse Handle(std::string_view method, std::string_view path,
                      const std::multimap<std::string, std::string> &params,
                      std::string_view body) const;

  const Graph &graph() const { return graph_; }
  const ServiceConfig &config() const { return config_; }

 private:
  struct SearchEntry {
    std::string id;
    std::string lower_name;
    std::string normalized;
    std::vector<std::string> words;
  };

  Graph graph_;
  LinkTable links_;
  ServiceConfig config_;
  std::vector<SearchEntry> search_index_;
};

// HTTP/1.1 front end. Logs one `ts method path status ms` line per request.
class HttpServer {
 public:
  HttpServer(const Service &service, ServiceConfig config);
  ~HttpServer();

  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Binds config.host:config.port and returns the bound port; throws kIo.
  int Bind();

  // Serves until Stop(); in-flight requests finish before it returns.
  void Run();
  void Stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aquasub

#endif  // AQUASUB_SERVICE_H_
