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

#include "aquasub/service.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <mutex>

#include "aquasub/imputer.h"
#include "aquasub/text.h"
#include "httplib.h"
#include "json.hpp"

namespace aquasub {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kIngredientsPath = "/v1/ingredients";
constexpr std::string_view kSubstitutesSuffix = "/substitutes";

double Round3(double x) {
  double r = std::round(x * 1000.0) / 1000.0;
  return r == 0 ? 0.0 : r;
}

std::string_view TrimSpace(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

Json NutrientJson(const NutrientDelta &d) {
  Json j;
  j["name"] = std::string(NutrientName(d.nutrient));
  j["before"] = Round3(d.before);
  j["after"] = Round3(d.after);
  j["delta"] = Round3(d.delta);
  j["imputed"] = d.imputed;
  return j;
}

Json SubstitutionToJson(const Substitution &s) {
  Json j;
  j["original"] = s.original;
  j["candidate"] = s.candidate;
  j["wf_before"] = Round3(s.wf_original);
  j["wf_after"] = Round3(s.wf_candidate);
  j["wf_delta"] = Round3(s.wf_delta);
  Json nutrients = Json::array();
  for (const auto &d : s.nutrient_deltas) nutrients.push_back(NutrientJson(d));
  j["nutrients"] = std::move(nutrients);
  j["rank"] = s.rank;
  j["wf_before_imputed"] = s.wf_original_imputed;
  j["wf_after_imputed"] = s.wf_candidate_imputed;
  return j;
}

Json SubstitutionListJson(const std::vector<Substitution> &subs) {
  Json arr = Json::array();
  for (const auto &s : subs) arr.push_back(SubstitutionToJson(s));
  return arr;
}

Json WfJson(const std::optional<Quantity> &wf) {
  return wf ? Json(Round3(wf->value)) : Json(nullptr);
}

HttpResponse Ok(const Json &body) { return {200, body.dump()}; }

HttpResponse ErrorResponse(int status, std::string_view code,
                           std::string_view message) {
  Json j;
  j["error"]["code"] = std::string(code);
  j["error"]["message"] = std::string(message);
  return {status, j.dump()};
}

HttpResponse ErrorResponse(const Error &e) {
  ApiError api = ToApiError(e);
  return ErrorResponse(api.status, api.code, api.message);
}

// Parses {"ingredients": [string...]} plus optional string fields.
std::optional<std::vector<std::string>> IngredientList(const Json &body) {
  if (!body.is_object() || !body.contains("ingredients") ||
      !body["ingredients"].is_array()) {
    return std::nullopt;
  }
  std::vector<std::string> names;
  for (const auto &v : body["ingredients"]) {
    if (!v.is_string()) return std::nullopt;
    names.push_back(v.get<std::string>());
  }
  return names;
}

int ParseInt(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::kInvalidConfig, key + " must be an integer");
}

void SetField(ServiceConfig &c, const std::string &key,
              const std::string &value) {
  if (key == "host") {
    c.host = value;
  } else if (key == "port") {
    c.port = ParseInt(key, value);
  } else if (key == "snapshot_path") {
    c.snapshot_path = value;
  } else if (key == "model_path") {
    c.model_path = value;
  } else if (key == "link_table_path") {
    c.link_table_path = value;
  } else if (key == "latency_budget_ms") {
    c.latency_budget_ms = ParseInt(key, value);
  } else if (key == "log_level") {
    c.log_level = value;
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown config key " + key);
  }
}

int LogRank(std::string_view level) {
  if (level == "debug") return 0;
  if (level == "info") return 1;
  if (level == "warn") return 2;
  if (level == "error") return 3;
  if (level == "off") return 4;
  return -1;
}

std::string UtcTimestamp() {
  auto now = std::chrono::system_clock::now();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                now.time_since_epoch()) %
            1000;
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::size_t n = std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof(buf) - n, ".%03dZ", static_cast<int>(ms.count()));
  return buf;
}

}  // namespace

void ServiceConfig::Validate(bool check_paths) const {
  auto fail = [](const std::string &why) {
    throw Error(ErrorCode::kInvalidConfig, why);
  };
  if (latency_budget_ms <= 0) fail("latency_budget_ms must be positive");
  if (port < 0 || port > 65535) fail("port must lie in 0..65535");
  if (host.empty()) fail("host must not be empty");
  if (LogRank(log_level) < 0) fail("unknown log_level " + log_level);
  if (!check_paths) return;
  namespace fs = std::filesystem;
  if (snapshot_path.empty()) fail("snapshot_path is required");
  if (!fs::exists(snapshot_path)) fail("snapshot_path does not exist: " + snapshot_path);
  if (!model_path.empty() && !fs::exists(model_path)) {
    fail("model_path does not exist: " + model_path);
  }
  if (!link_table_path.empty() && !fs::exists(link_table_path)) {
    fail("link_table_path does not exist: " + link_table_path);
  }
}

ServiceConfig ParseConfig(std::string_view text, ServiceConfig base) {
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = TrimSpace(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig, "expected key=value", i + 1);
    }
    try {
      SetField(base, std::string(TrimSpace(line.substr(0, eq))),
               std::string(TrimSpace(line.substr(eq + 1))));
    } catch (const Error &e) {
      throw Error(e.code(), e.detail(), i + 1);
    }
  }
  return base;
}

void ApplyEnvOverrides(ServiceConfig &config, const EnvLookup &lookup) {
  static constexpr const char *kKeys[] = {
      "host",          "port",           "snapshot_path",
      "model_path",    "link_table_path", "latency_budget_ms",
      "log_level"};
  for (const char *key : kKeys) {
    std::string var = "AQUASUB_" + AsciiLower(key);
    for (char &c : var) c = static_cast<char>(std::toupper(c));
    if (const char *value = lookup(var.c_str())) SetField(config, key, value);
  }
}

ApiError ToApiError(const Error &error) {
  int status = 500;
  switch (error.code()) {
    case ErrorCode::kMalformedLine:
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kDuplicateEdgeId:
    case ErrorCode::kColumnCount:
    case ErrorCode::kNegativeValue:
    case ErrorCode::kUnparsableNumber:
    case ErrorCode::kUnknownRelationLabel:
    case ErrorCode::kInvalidEdge:
    case ErrorCode::kDimensionMismatch:
      status = 400;
      break;
    case ErrorCode::kUnknownNode:
    case ErrorCode::kNotAnIngredient:
      status = 404;
      break;
    case ErrorCode::kNotARecommendedCandidate:
    case ErrorCode::kAmbiguousLink:
      status = 409;
      break;
    case ErrorCode::kNoFootprint:
    case ErrorCode::kMultipleParents:
    case ErrorCode::kNoParent:
    case ErrorCode::kCycleDetected:
      status = 422;
      break;
    case ErrorCode::kNonFiniteLoss:
    case ErrorCode::kInvalidSnapshot:
    case ErrorCode::kInvalidModel:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kIo:
      status = 500;
      break;
  }
  return {status, std::string(ErrorCodeName(error.code())), error.what()};
}

std::string SubstitutionsJson(const std::vector<Substitution> &subs) {
  return SubstitutionListJson(subs).dump();
}

std::string DeltaReportJson(const DeltaReport &report) {
  Json j;
  j["original"] = report.original;
  j["candidate"] = report.candidate;
  j["wf_before"] = Round3(report.wf_before);
  j["wf_after"] = Round3(report.wf_after);
  j["wf_delta"] = Round3(report.wf_delta);
  Json nutrients = Json::array();
  for (const auto &d : report.nutrients) nutrients.push_back(NutrientJson(d));
  j["nutrients"] = std::move(nutrients);
  return j.dump();
}

std::string RecipeAnalysisJson(const RecipeAnalysis &analysis) {
  Json j;
  Json items = Json::array();
  for (const auto &item : analysis.ingredients) {
    Json i;
    i["raw_name"] = item.raw_name;
    i["id"] = item.profile.id;
    i["display_name"] = item.profile.display_name;
    i["wf"] = WfJson(item.profile.wf);
    i["wf_imputed"] = item.profile.wf && item.profile.wf->imputed();
    Json nutrients = Json::object();
    for (const auto &[r, q] : item.profile.nutrients) {
      nutrients[std::string(NutrientName(r))] = {{"value", Round3(q.value)},
                                                 {"imputed", q.imputed()}};
    }
    i["nutrients"] = std::move(nutrients);
    items.push_back(std::move(i));
  }
  j["ingredients"] = std::move(items);
  j["total_wf"] = Round3(analysis.total_wf);
  Json options = Json::object();
  for (const auto &[id, subs] : analysis.options) {
    options[id] = SubstitutionListJson(subs);
  }
  j["options"] = std::move(options);
  j["unresolved"] = analysis.unresolved;
  return j.dump();
}

std::string StatsJson(const GraphStats &stats) {
  Json j;
  j["node_count"] = stats.node_count;
  j["relation_type_count"] = stats.relation_type_count;
  j["edge_count"] = stats.edge_count;
  return j.dump();
}

Service::Service(Graph graph, LinkTable links, ServiceConfig config)
    : graph_(std::move(graph)),
      links_(std::move(links)),
      config_(std::move(config)) {
  for (const std::string &id : graph_.NodesOfKind(NodeKind::kIngredient)) {
    SearchEntry e;
    e.id = id;
    e.lower_name = AsciiLower(graph_.DisplayName(id));
    e.normalized = NormalizeName(e.lower_name);
    std::size_t pos = 0;
    while (pos < e.normalized.size()) {
      std::size_t space = e.normalized.find(' ', pos);
      if (space == std::string::npos) space = e.normalized.size();
      e.words.push_back(e.normalized.substr(pos, space - pos));
      pos = space + 1;
    }
    search_index_.push_back(std::move(e));
  }
}

Service Service::FromConfig(const ServiceConfig &config) {
  config.Validate(/*check_paths=*/true);
  Graph graph = LoadSnapshot(ReadFile(config.snapshot_path));
  LinkTable links;
  if (!config.link_table_path.empty()) {
    links = LinkTable::FromCsv(ReadFile(config.link_table_path));
  }
  if (!config.model_path.empty()) {
    ImputerModel model = LoadModel(ReadFile(config.model_path));
    if (model.params.input_dim() != kModelInputDim) {
      throw Error(ErrorCode::kInvalidModel,
                  "model input width does not match this build");
    }
  }
  return Service(std::move(graph), std::move(links), config);
}

HttpResponse Service::SearchIngredients(std::string_view query) const {
  std::string q = AsciiLower(TrimSpace(query));
  if (q.empty()) return ErrorResponse(400, "empty_query", "q must not be empty");
  std::string nq = NormalizeName(q);

  std::vector<std::pair<int, const SearchEntry *>> hits;
  for (const SearchEntry &e : search_index_) {
    int quality = -1;
    if (e.lower_name == q || e.id == q) {
      quality = 0;
    } else if (e.lower_name.starts_with(q) || e.id.starts_with(q)) {
      quality = 1;
    } else if (!nq.empty() && e.normalized == nq) {
      quality = 2;
    } else if (!nq.empty() &&
               std::any_of(e.words.begin(), e.words.end(),
                           [&](const std::string &w) { return w.starts_with(nq); })) {
      quality = 3;
    }
    if (quality >= 0) hits.emplace_back(quality, &e);
  }
  std::sort(hits.begin(), hits.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->id < b.second->id;
  });
  if (hits.size() > kMaxSearchResults) hits.resize(kMaxSearchResults);

  Json arr = Json::array();
  for (const auto &[quality, e] : hits) {
    auto wf = graph_.Value(e->id, Relation::kHasWaterFootprint);
    Json j;
    j["id"] = e->id;
    j["display_name"] = graph_.DisplayName(e->id);
    j["wf"] = WfJson(wf);
    j["imputed"] = wf && wf->imputed();
    arr.push_back(std::move(j));
  }
  return Ok(arr);
}

HttpResponse Service::Substitutes(std::string_view id) const {
  if (!graph_.Contains(id)) {
    return ErrorResponse(404, ErrorCodeName(ErrorCode::kUnknownNode),
                         "no ingredient " + std::string(id));
  }
  try {
    return {200, SubstitutionsJson(RecommendSubstitutes(graph_, id))};
  } catch (const Error &e) {
    return ErrorResponse(e);
  }
}

HttpResponse Service::AnalyzeRecipe(std::string_view body) const {
  Json parsed = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  auto names = IngredientList(parsed);
  if (parsed.is_discarded() || !names) {
    return ErrorResponse(400, "malformed_body",
                         "expected {\"ingredients\": [string, ...]}");
  }
  try {
    return {200, RecipeAnalysisJson(aquasub::AnalyzeRecipe(graph_, *names, links_))};
  } catch (const Error &e) {
    return ErrorResponse(e);
  }
}

HttpResponse Service::SubstituteInRecipe(std::string_view body) const {
  Json parsed = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  auto names = IngredientList(parsed);
  if (parsed.is_discarded() || !names || !parsed.contains("original") ||
      !parsed["original"].is_string() || !parsed.contains("candidate") ||
      !parsed["candidate"].is_string()) {
    return ErrorResponse(400, "malformed_body",
                         "expected {\"ingredients\": [...], \"original\": "
                         "string, \"candidate\": string}");
  }
  try {
    auto analysis = aquasub::AnalyzeRecipe(graph_, *names, links_);
    auto resolve = [&](const std::string &name) {
      return ResolveIngredient(graph_, name, links_).value_or(name);
    };
    auto outcome =
        ApplySubstitution(graph_, analysis, resolve(parsed["original"]),
                          resolve(parsed["candidate"]));
    return {200, DeltaReportJson(outcome.report)};
  } catch (const Error &e) {
    return ErrorResponse(e);
  }
}

HttpResponse Service::Stats() const { return {200, StatsJson(graph_.Stats())}; }

HttpResponse Service::Handle(
    std::string_view method, std::string_view path,
    const std::multimap<std::string, std::string> &params,
    std::string_view body) const {
  auto wrong_method = [&] {
    return ErrorResponse(405, "method_not_allowed",
                         std::string(method) + " not allowed on " +
                             std::string(path));
  };
  if (path == kIngredientsPath) {
    if (method != "GET") return wrong_method();
    auto it = params.find("q");
    return SearchIngredients(it == params.end() ? "" : it->second);
  }
  if (path.starts_with(kIngredientsPath) && path.ends_with(kSubstitutesSuffix) &&
      path.size() > kIngredientsPath.size() + 1 + kSubstitutesSuffix.size() &&
      path[kIngredientsPath.size()] == '/') {
    if (method != "GET") return wrong_method();
    std::string_view id = path.substr(
        kIngredientsPath.size() + 1,
        path.size() - kIngredientsPath.size() - 1 - kSubstitutesSuffix.size());
    return Substitutes(id);
  }
  if (path == "/v1/recipes/analyze") {
    if (method != "POST") return wrong_method();
    return AnalyzeRecipe(body);
  }
  if (path == "/v1/recipes/substitute") {
    if (method != "POST") return wrong_method();
    return SubstituteInRecipe(body);
  }
  if (path == "/v1/stats") {
    if (method != "GET") return wrong_method();
    return Stats();
  }
  return ErrorResponse(404, "route_not_found", "no route " + std::string(path));
}

struct HttpServer::Impl {
  const Service &service;
  ServiceConfig config;
  httplib::Server server;
  std::mutex log_mutex;

  Impl(const Service &s, ServiceConfig c) : service(s), config(std::move(c)) {}

  void Log(const httplib::Request &req, int status, double ms) {
    int level = LogRank(config.log_level);
    bool over_budget = ms > config.latency_budget_ms;
    if (level > 1 && !(over_budget && level <= 2)) return;
    std::lock_guard<std::mutex> lock(log_mutex);
    std::fprintf(stderr, "%s %s %s %d %.3f%s\n", UtcTimestamp().c_str(),
                 req.method.c_str(), req.path.c_str(), status, ms,
                 over_budget ? " over_budget" : "");
  }

  void Dispatch(const httplib::Request &req, httplib::Response &res) {
    auto start = std::chrono::steady_clock::now();
    HttpResponse r = service.Handle(req.method, req.path, req.params, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
    res.set_header("Access-Control-Allow-Origin", "*");
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    Log(req, r.status, ms);
  }
};

HttpServer::HttpServer(const Service &service, ServiceConfig config)
    : impl_(std::make_unique<Impl>(service, std::move(config))) {
  auto handler = [this](const httplib::Request &req, httplib::Response &res) {
    impl_->Dispatch(req, res);
  };
  impl_->server.set_tcp_nodelay(true);
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Options(".*", [](const httplib::Request &,
                                 httplib::Response &res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

HttpServer::~HttpServer() {
  if (impl_->server.is_running()) impl_->server.stop();
}

int HttpServer::Bind() {
  const auto &c = impl_->config;
  int port = 0;
  if (c.port == 0) {
    port = impl_->server.bind_to_any_port(c.host);
  } else if (impl_->server.bind_to_port(c.host, c.port)) {
    port = c.port;
  } else {
    port = -1;
  }
  if (port <= 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + c.host + ":" +
                                    std::to_string(c.port));
  }
  return port;
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace aquasub
