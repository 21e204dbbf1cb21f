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

#ifndef AQUASUB_SCHEMA_ALIGN_H_
#define AQUASUB_SCHEMA_ALIGN_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aquasub/graph_store.h"

namespace aquasub {

// Modifier words and phrases removed during normalization. Loaded from the
// committed stoplist file; Default() is that file compiled in.
class Stoplist {
 public:
  static const Stoplist &Default();

  // One entry per line, '#' comments. Hyphenated entries are phrases.
  static Stoplist Parse(std::string_view text);

  std::span<const std::vector<std::string>> phrases() const {
    return phrases_;
  }

 private:
  std::vector<std::vector<std::string>> phrases_;  // longest first
};

// Lowercases, drops parenthesized segments and tokens ending in -flavored,
// -style or -based, splits the rest into alphanumeric words and removes
// stoplist phrases until none remain. When nothing survives the result falls
// back to the cleaned words of the whole input. Idempotent.
std::string NormalizeName(std::string_view raw,
                          const Stoplist &stoplist = Stoplist::Default());

// Relation -> sentence template with {subject}, {object} and {value}.
class TemplateTable {
 public:
  static const TemplateTable &Default();

  // Lines of `relation<TAB>template`; every relation must be covered.
  static TemplateTable Parse(std::string_view text);

  const std::string &For(Relation r) const {
    return templates_[RelationIndex(r)];
  }

 private:
  std::array<std::string, kRelationCount> templates_;
};

// Maps a node id to a display name; nullopt falls back to the id.
using NameResolver =
    std::function<std::optional<std::string>(std::string_view id)>;

std::string VerbalizeEdge(const Edge &edge, const NameResolver &names,
                          const TemplateTable &templates =
                              TemplateTable::Default());

inline constexpr std::size_t kEmbeddingDim = 128;
inline constexpr std::uint64_t kEmbeddingSeed = 0x5EEDF00DULL;

struct EmbeddingVector {
  std::array<double, kEmbeddingDim> values{};

  friend bool operator==(const EmbeddingVector &,
                         const EmbeddingVector &) = default;
};

// Signed feature hashing of the character trigrams of " text " (lowercased)
// into kEmbeddingDim buckets, L2-normalized. Empty text embeds to zero.
EmbeddingVector EmbedText(std::string_view text);

// Cosine of two embeddings; 0 when either is the zero vector.
double Cosine(const EmbeddingVector &a, const EmbeddingVector &b);

// Seeded 64-bit hash used by the embedder (FNV-1a with a murmur finalizer).
std::uint64_t HashBytes(std::string_view bytes, std::uint64_t seed);

enum class LinkMethod { kExact, kNormalized, kEmbedding, kCreated };

std::string_view LinkMethodName(LinkMethod method);
std::optional<LinkMethod> ParseLinkMethod(std::string_view name);

struct LinkEntry {
  std::string raw_name;
  std::string canonical_id;
  LinkMethod method = LinkMethod::kExact;
  double score = 1.0;  // cosine for embedding links, 1 or 0 otherwise

  friend bool operator==(const LinkEntry &, const LinkEntry &) = default;
};

class LinkTable {
 public:
  LinkTable() = default;

  void Add(LinkEntry entry);
  const LinkEntry *Find(std::string_view raw_name) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries ordered by raw name.
  std::vector<LinkEntry> Entries() const;

  // CSV with header `raw_name,canonical_id,method,score`.
  std::string ToCsv() const;
  static LinkTable FromCsv(std::string_view text);

 private:
  std::map<std::string, LinkEntry, std::less<>> entries_;
};

struct NameSource {
  std::string source;
  std::vector<std::string> names;
};

struct CanonicalEntity {
  std::string id;
  std::string display_name;
};

struct LinkConfig {
  double threshold = 0.55;
  double tie_tolerance = 1e-9;
};

// Resolves every distinct raw name through the cascade exact -> normalized ->
// embedding (cosine >= threshold). Names that fail all three become new
// canonical ids derived from their normalized form. Throws kAmbiguousLink,
// listing every ambiguous name, when candidates tie.
LinkTable LinkEntities(std::span<const NameSource> sources,
                       std::span<const CanonicalEntity> canonical,
                       const LinkConfig &config = {},
                       const Stoplist &stoplist = Stoplist::Default());

// New canonical id for a raw name: normalized words joined by '_'.
std::string SlugId(std::string_view raw,
                   const Stoplist &stoplist = Stoplist::Default());

}  // namespace aquasub

#endif  // AQUASUB_SCHEMA_ALIGN_H_
