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

#include "aquasub/schema_align.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "aquasub/error.h"
#include "aquasub/text.h"
#include "embedded_data.h"

namespace aquasub {

namespace {

bool IsWordByte(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || u >= 0x80;
}

// Splits already-lowercased text into runs of word bytes.
std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (IsWordByte(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string Join(const std::vector<std::string> &words, char sep) {
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out.push_back(sep);
    out += w;
  }
  return out;
}

// Removes stoplist phrases until a full pass removes nothing.
std::vector<std::string> StripPhrases(std::vector<std::string> words,
                                      const Stoplist &stoplist) {
  bool changed = true;
  while (changed && !words.empty()) {
    changed = false;
    for (std::size_t i = 0; i < words.size() && !changed; ++i) {
      for (const auto &phrase : stoplist.phrases()) {
        if (i + phrase.size() > words.size()) continue;
        if (std::equal(phrase.begin(), phrase.end(), words.begin() + i)) {
          words.erase(words.begin() + i, words.begin() + i + phrase.size());
          changed = true;
          break;
        }
      }
    }
  }
  return words;
}

bool HasDescriptorSuffix(std::string_view token) {
  while (!token.empty() && !IsWordByte(token.back())) token.remove_suffix(1);
  for (std::string_view suffix : {"-flavored", "-style", "-based"}) {
    if (token.size() > suffix.size() && token.ends_with(suffix)) return true;
  }
  return false;
}

std::uint64_t Fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

}  // namespace

const Stoplist &Stoplist::Default() {
  static const Stoplist kDefault = Parse(internal::kDefaultStoplistText);
  return kDefault;
}

Stoplist Stoplist::Parse(std::string_view text) {
  Stoplist list;
  for (std::string_view line : SplitLines(text)) {
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = Words(AsciiLower(line));
    if (!words.empty()) list.phrases_.push_back(std::move(words));
  }
  std::stable_sort(list.phrases_.begin(), list.phrases_.end(),
                   [](const auto &a, const auto &b) {
                     return a.size() > b.size();
                   });
  return list;
}

std::string NormalizeName(std::string_view raw, const Stoplist &stoplist) {
  std::string lower = AsciiLower(raw);

  std::string outside;
  outside.reserve(lower.size());
  int depth = 0;
  for (char c : lower) {
    if (c == '(') {
      ++depth;
      outside.push_back(' ');
    } else if (c == ')') {
      if (depth > 0) --depth;
      outside.push_back(' ');
    } else {
      outside.push_back(depth > 0 ? ' ' : c);
    }
  }

  std::vector<std::string> structural;
  std::size_t pos = 0;
  while (pos < outside.size()) {
    std::size_t start = outside.find_first_not_of(" \t\r\n", pos);
    if (start == std::string::npos) break;
    std::size_t end = outside.find_first_of(" \t\r\n", start);
    if (end == std::string::npos) end = outside.size();
    std::string_view token(outside.data() + start, end - start);
    if (!HasDescriptorSuffix(token)) {
      for (auto &w : Words(token)) structural.push_back(std::move(w));
    }
    pos = end;
  }

  auto kept = StripPhrases(std::move(structural), stoplist);
  if (!kept.empty()) return Join(kept, ' ');

  auto all = Words(lower);
  auto all_kept = StripPhrases(all, stoplist);
  if (!all_kept.empty()) return Join(all_kept, ' ');
  return Join(all, ' ');
}

const TemplateTable &TemplateTable::Default() {
  static const TemplateTable kDefault = Parse(internal::kDefaultTemplatesText);
  return kDefault;
}

TemplateTable TemplateTable::Parse(std::string_view text) {
  TemplateTable table;
  std::array<bool, kRelationCount> seen{};
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedLine, "expected relation<TAB>template",
                  i + 1);
    }
    auto relation = ParseRelation(line.substr(0, tab));
    if (!relation) {
      throw Error(ErrorCode::kUnknownRelationLabel,
                  std::string(line.substr(0, tab)), i + 1);
    }
    table.templates_[RelationIndex(*relation)] = line.substr(tab + 1);
    seen[RelationIndex(*relation)] = true;
  }
  for (Relation r : kAllRelations) {
    if (!seen[RelationIndex(r)]) {
      throw Error(ErrorCode::kMalformedLine,
                  "no template for " + std::string(RelationLabel(r)));
    }
  }
  return table;
}

std::string VerbalizeEdge(const Edge &edge, const NameResolver &names,
                          const TemplateTable &templates) {
  auto name_of = [&](std::string_view id) {
    if (names) {
      if (auto n = names(id)) return *n;
    }
    return std::string(id);
  };
  std::string subject = name_of(edge.subject);
  std::string object;
  if (edge.has_node_object()) {
    object = name_of(edge.object_node());
  } else if (edge.literal().is_number()) {
    object = FormatNumber(edge.literal().number());
  } else {
    object = edge.literal().text();
  }

  const std::string &tpl = templates.For(edge.relation);
  std::string out;
  out.reserve(tpl.size() + subject.size() + object.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      std::size_t close = tpl.find('}', i);
      if (close != std::string::npos) {
        std::string_view key(tpl.data() + i + 1, close - i - 1);
        if (key == "subject") {
          out += subject;
          i = close + 1;
          continue;
        }
        if (key == "object" || key == "value") {
          out += object;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tpl[i++]);
  }
  return out;
}

std::uint64_t HashBytes(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ Fmix64(seed);
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return Fmix64(h);
}

EmbeddingVector EmbedText(std::string_view text) {
  EmbeddingVector v;
  if (text.empty()) return v;
  std::string padded = " " + AsciiLower(text) + " ";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    std::uint64_t h =
        HashBytes(std::string_view(padded).substr(i, 3), kEmbeddingSeed);
    double sign = (h >> 63) != 0 ? -1.0 : 1.0;
    v.values[h % kEmbeddingDim] += sign;
  }
  double norm = 0;
  for (double x : v.values) norm += x * x;
  if (norm == 0) return v;
  norm = std::sqrt(norm);
  for (double &x : v.values) x /= norm;
  return v;
}

double Cosine(const EmbeddingVector &a, const EmbeddingVector &b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

std::string_view LinkMethodName(LinkMethod method) {
  switch (method) {
    case LinkMethod::kExact: return "exact";
    case LinkMethod::kNormalized: return "normalized";
    case LinkMethod::kEmbedding: return "embedding";
    case LinkMethod::kCreated: return "created";
  }
  return "unknown";
}

std::optional<LinkMethod> ParseLinkMethod(std::string_view name) {
  for (LinkMethod m : {LinkMethod::kExact, LinkMethod::kNormalized,
                       LinkMethod::kEmbedding, LinkMethod::kCreated}) {
    if (LinkMethodName(m) == name) return m;
  }
  return std::nullopt;
}

void LinkTable::Add(LinkEntry entry) {
  std::string key = entry.raw_name;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

const LinkEntry *LinkTable::Find(std::string_view raw_name) const {
  auto it = entries_.find(raw_name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<LinkEntry> LinkTable::Entries() const {
  std::vector<LinkEntry> out;
  out.reserve(entries_.size());
  for (const auto &[key, entry] : entries_) out.push_back(entry);
  return out;
}

std::string LinkTable::ToCsv() const {
  std::string out = "raw_name,canonical_id,method,score\n";
  for (const auto &[key, e] : entries_) {
    out += CsvField(e.raw_name);
    out += ',';
    out += CsvField(e.canonical_id);
    out += ',';
    out += LinkMethodName(e.method);
    out += ',';
    out += FormatNumber(e.score);
    out += '\n';
  }
  return out;
}

LinkTable LinkTable::FromCsv(std::string_view text) {
  auto records = ParseCsv(text);
  if (records.empty() ||
      records.front().fields !=
          std::vector<std::string>{"raw_name", "canonical_id", "method",
                                   "score"}) {
    throw Error(ErrorCode::kMalformedHeader,
                "expected header raw_name,canonical_id,method,score", 1);
  }
  LinkTable table;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto &rec = records[i];
    if (rec.fields.size() != 4) {
      throw Error(ErrorCode::kColumnCount, "expected 4 columns", rec.line);
    }
    auto method = ParseLinkMethod(rec.fields[2]);
    auto score = ParseNumber(rec.fields[3]);
    if (!method || !score || rec.fields[1].empty()) {
      throw Error(ErrorCode::kMalformedLine, "bad link row", rec.line);
    }
    table.Add({rec.fields[0], rec.fields[1], *method, *score});
  }
  return table;
}

std::string SlugId(std::string_view raw, const Stoplist &stoplist) {
  std::string slug = NormalizeName(raw, stoplist);
  std::replace(slug.begin(), slug.end(), ' ', '_');
  if (slug.empty()) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(
                      HashBytes(raw, kEmbeddingSeed)));
    slug = std::string("unnamed_") + buf;
  }
  return slug;
}

LinkTable LinkEntities(std::span<const NameSource> sources,
                       std::span<const CanonicalEntity> canonical,
                       const LinkConfig &config, const Stoplist &stoplist) {
  std::set<std::string, std::less<>> raw_names;
  for (const auto &src : sources) {
    raw_names.insert(src.names.begin(), src.names.end());
  }

  std::set<std::string, std::less<>> ids;
  std::map<std::string, std::set<std::string>, std::less<>> by_label;
  std::map<std::string, std::set<std::string>, std::less<>> by_normalized;
  std::vector<std::pair<std::string, EmbeddingVector>> embedded;
  for (const auto &c : canonical) {
    ids.insert(c.id);
    by_label[c.display_name].insert(c.id);
    std::string id_words = c.id;
    std::replace(id_words.begin(), id_words.end(), '_', ' ');
    by_normalized[NormalizeName(c.display_name, stoplist)].insert(c.id);
    by_normalized[NormalizeName(id_words, stoplist)].insert(c.id);
    embedded.emplace_back(c.id,
                          EmbedText(NormalizeName(c.display_name, stoplist)));
  }

  LinkTable table;
  std::vector<std::string> ambiguous;
  auto report = [&](const std::string &raw, const std::set<std::string> &tied) {
    std::string msg = "\"" + raw + "\" ties between";
    for (const auto &t : tied) msg += " " + t;
    ambiguous.push_back(std::move(msg));
  };

  for (const std::string &raw : raw_names) {
    if (ids.count(raw) != 0) {
      table.Add({raw, raw, LinkMethod::kExact, 1.0});
      continue;
    }
    if (auto it = by_label.find(raw); it != by_label.end()) {
      if (it->second.size() > 1) {
        report(raw, it->second);
        continue;
      }
      table.Add({raw, *it->second.begin(), LinkMethod::kExact, 1.0});
      continue;
    }
    std::string normalized = NormalizeName(raw, stoplist);
    if (auto it = by_normalized.find(normalized); it != by_normalized.end()) {
      if (it->second.size() > 1) {
        report(raw, it->second);
        continue;
      }
      table.Add({raw, *it->second.begin(), LinkMethod::kNormalized, 1.0});
      continue;
    }
    if (!embedded.empty()) {
      EmbeddingVector query = EmbedText(normalized);
      double best = -2;
      for (const auto &[id, vec] : embedded) best = std::max(best, Cosine(query, vec));
      if (best >= config.threshold) {
        std::set<std::string> tied;
        for (const auto &[id, vec] : embedded) {
          if (best - Cosine(query, vec) <= config.tie_tolerance) tied.insert(id);
        }
        if (tied.size() > 1) {
          report(raw, tied);
          continue;
        }
        table.Add({raw, *tied.begin(), LinkMethod::kEmbedding,
                   std::min(1.0, best)});
        continue;
      }
    }
    table.Add({raw, SlugId(raw, stoplist), LinkMethod::kCreated, 0.0});
  }

  if (!ambiguous.empty()) {
    std::string msg;
    for (const auto &a : ambiguous) {
      if (!msg.empty()) msg += "; ";
      msg += a;
    }
    throw Error(ErrorCode::kAmbiguousLink, msg);
  }
  return table;
}

}  // namespace aquasub
