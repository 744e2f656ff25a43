// Copyright 2026 The kgloop Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgloop/dictionary.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

// Reserved schema relation names, matched case-sensitively. They live in the
// same dictionary space as ordinary relations.
namespace vocab {
inline constexpr std::string_view kType = "type";
inline constexpr std::string_view kDomain = "domain";
inline constexpr std::string_view kRange = "range";
inline constexpr std::string_view kSubProperty = "subProperty";
inline constexpr std::string_view kSubClass = "subClass";
}  // namespace vocab

/// Dictionary-encoded triple store with subject/object/relation indexes.
///
/// Construction (add_*) is single-threaded; once built, the graph is meant to
/// be read-only and is safe to share across worker threads.
class KnowledgeGraph {
 public:
  EntityId add_entity(std::string_view name);
  RelationId add_relation(std::string_view name);

  /// Adds an encoded triple. Returns false on duplicates. Throws if an id is
  /// not backed by the dictionaries.
  bool add_triple(Triple t);
  /// Convenience: encodes the three tokens (inserting as needed) and adds.
  bool add_triple(std::string_view s, std::string_view r, std::string_view o);

  bool contains(const Triple& t) const { return triple_set_.contains(t); }
  std::optional<Triple> encode(std::string_view s, std::string_view r,
                               std::string_view o) const;
  std::array<std::string_view, 3> decode(const Triple& t) const;

  const std::vector<Triple>& triples() const { return triples_; }
  const TripleSet& triple_set() const { return triple_set_; }

  std::span<const std::uint32_t> by_subject(EntityId e) const;
  std::span<const std::uint32_t> by_object(EntityId e) const;
  std::span<const std::uint32_t> by_relation(RelationId r) const;

  const Dictionary& entities() const { return entities_; }
  const Dictionary& relations() const { return relations_; }

  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  std::size_t num_triples() const { return triples_.size(); }

  /// Local clustering coefficient of `e` on the undirected, unlabeled, simple
  /// projection of the graph (parallel edges and relation labels collapsed,
  /// self-loops dropped). 0 when the projected degree is <= 1.
  double clustering_coefficient(EntityId e) const;

  /// N^2 * R minus the number of stored triples: how many candidate triples a
  /// full-complement scan would have to score. Reporting/sanity only.
  std::uint64_t complement_excluded_size() const;

  /// Distinct undirected neighbors of `e` (self excluded).
  std::vector<EntityId> neighbors(EntityId e) const;

 private:
  void check_entity(EntityId e) const;
  void check_relation(RelationId r) const;

  Dictionary entities_;
  Dictionary relations_;
  std::vector<Triple> triples_;
  TripleSet triple_set_;
  std::vector<std::vector<std::uint32_t>> by_subject_;
  std::vector<std::vector<std::uint32_t>> by_object_;
  std::vector<std::vector<std::uint32_t>> by_relation_;
};

/// Clustering coefficients for every entity at once. Shares one adjacency
/// build, so prefer this over per-entity calls when sweeping the graph.
std::vector<double> clustering_coefficients(const KnowledgeGraph& g);

/// New graph with the same dictionaries but only the selected triples.
KnowledgeGraph subgraph(const KnowledgeGraph& g, std::span<const Triple> keep);

/// Schema triples over the reserved vocabulary (type/domain/range/
/// subProperty/subClass), kept separate from the data graph. The wrapper is
/// just a distinguished triple set plus convenience lookups.
class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(KnowledgeGraph schema);

  const KnowledgeGraph& schema() const { return schema_; }
  bool empty() const { return schema_.num_triples() == 0; }

  /// Classes c with (relation, domain, c) in the schema, by name.
  std::vector<std::string_view> domain_of(std::string_view relation) const;
  /// Classes c with (relation, range, c) in the schema, by name.
  std::vector<std::string_view> range_of(std::string_view relation) const;

 private:
  std::vector<std::string_view> objects_of(std::string_view subject,
                                           std::string_view relation) const;
  KnowledgeGraph schema_;
};

}  // namespace kgloop
