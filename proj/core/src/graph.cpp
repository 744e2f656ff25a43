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

#include "kgloop/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "kgloop/error.hpp"

namespace kgloop {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kInput: return "input";
    case Provenance::kKge: return "kge";
    case Provenance::kReasoner: return "reasoner";
  }
  return "unknown";
}

EntityId KnowledgeGraph::add_entity(std::string_view name) {
  EntityId id = entities_.insert(name);
  if (id >= by_subject_.size()) {
    by_subject_.emplace_back();
    by_object_.emplace_back();
  }
  return id;
}

RelationId KnowledgeGraph::add_relation(std::string_view name) {
  RelationId id = relations_.insert(name);
  if (id >= by_relation_.size()) by_relation_.emplace_back();
  return id;
}

void KnowledgeGraph::check_entity(EntityId e) const {
  if (e >= entities_.size())
    throw Error("entity id " + std::to_string(e) + " out of range (|E| = " +
                std::to_string(entities_.size()) + ")");
}

void KnowledgeGraph::check_relation(RelationId r) const {
  if (r >= relations_.size())
    throw Error("relation id " + std::to_string(r) + " out of range (|R| = " +
                std::to_string(relations_.size()) + ")");
}

bool KnowledgeGraph::add_triple(Triple t) {
  check_entity(t.subject);
  check_entity(t.object);
  check_relation(t.relation);
  if (!triple_set_.insert(t).second) return false;
  auto idx = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(t);
  by_subject_[t.subject].push_back(idx);
  by_object_[t.object].push_back(idx);
  by_relation_[t.relation].push_back(idx);
  return true;
}

bool KnowledgeGraph::add_triple(std::string_view s, std::string_view r,
                                std::string_view o) {
  EntityId si = add_entity(s);
  RelationId ri = add_relation(r);
  EntityId oi = add_entity(o);
  return add_triple(Triple{si, ri, oi});
}

std::optional<Triple> KnowledgeGraph::encode(std::string_view s, std::string_view r,
                                             std::string_view o) const {
  auto si = entities_.find(s);
  auto ri = relations_.find(r);
  auto oi = entities_.find(o);
  if (!si || !ri || !oi) return std::nullopt;
  return Triple{*si, *ri, *oi};
}

std::array<std::string_view, 3> KnowledgeGraph::decode(const Triple& t) const {
  return {entities_.token(t.subject), relations_.token(t.relation),
          entities_.token(t.object)};
}

std::span<const std::uint32_t> KnowledgeGraph::by_subject(EntityId e) const {
  check_entity(e);
  return by_subject_[e];
}

std::span<const std::uint32_t> KnowledgeGraph::by_object(EntityId e) const {
  check_entity(e);
  return by_object_[e];
}

std::span<const std::uint32_t> KnowledgeGraph::by_relation(RelationId r) const {
  check_relation(r);
  return by_relation_[r];
}

std::vector<EntityId> KnowledgeGraph::neighbors(EntityId e) const {
  check_entity(e);
  std::unordered_set<EntityId> seen;
  for (auto idx : by_subject_[e]) {
    EntityId o = triples_[idx].object;
    if (o != e) seen.insert(o);
  }
  for (auto idx : by_object_[e]) {
    EntityId s = triples_[idx].subject;
    if (s != e) seen.insert(s);
  }
  std::vector<EntityId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

double KnowledgeGraph::clustering_coefficient(EntityId e) const {
  std::vector<EntityId> nbrs = neighbors(e);
  std::size_t deg = nbrs.size();
  if (deg <= 1) return 0.0;

  std::unordered_set<EntityId> nbr_set(nbrs.begin(), nbrs.end());
  // Count edges among neighbors: each such edge closes one triangle through e.
  std::size_t triangles = 0;
  for (EntityId a : nbrs) {
    for (EntityId b : neighbors(a)) {
      if (b > a && nbr_set.contains(b)) ++triangles;
    }
  }
  return 2.0 * static_cast<double>(triangles) /
         (static_cast<double>(deg) * static_cast<double>(deg - 1));
}

std::uint64_t KnowledgeGraph::complement_excluded_size() const {
  std::uint64_t n = entities_.size();
  std::uint64_t r = relations_.size();
  return n * n * r - static_cast<std::uint64_t>(triples_.size());
}

std::vector<double> clustering_coefficients(const KnowledgeGraph& g) {
  std::size_t n = g.num_entities();
  // One shared adjacency build (sorted neighbor lists), then triangle counts
  // by sorted intersection.
  std::vector<std::vector<EntityId>> adj(n);
  for (EntityId e = 0; e < n; ++e) adj[e] = g.neighbors(e);

  std::vector<double> cc(n, 0.0);
  std::vector<EntityId> common;
  for (EntityId e = 0; e < n; ++e) {
    std::size_t deg = adj[e].size();
    if (deg <= 1) continue;
    std::size_t wedges_closed = 0;  // counts (neighbor pair, shared edge) twice
    for (EntityId a : adj[e]) {
      common.clear();
      std::set_intersection(adj[e].begin(), adj[e].end(), adj[a].begin(),
                            adj[a].end(), std::back_inserter(common));
      wedges_closed += common.size();
    }
    // Each neighbor-neighbor edge was seen from both endpoints.
    double triangles = static_cast<double>(wedges_closed) / 2.0;
    cc[e] = 2.0 * triangles / (static_cast<double>(deg) * static_cast<double>(deg - 1));
  }
  return cc;
}

KnowledgeGraph subgraph(const KnowledgeGraph& g, std::span<const Triple> keep) {
  KnowledgeGraph out;
  for (const auto& tok : g.entities().tokens()) out.add_entity(tok);
  for (const auto& tok : g.relations().tokens()) out.add_relation(tok);
  for (const Triple& t : keep) out.add_triple(t);
  return out;
}

Ontology::Ontology(KnowledgeGraph schema) : schema_(std::move(schema)) {}

std::vector<std::string_view> Ontology::objects_of(std::string_view subject,
                                                   std::string_view relation) const {
  std::vector<std::string_view> out;
  auto s = schema_.entities().find(subject);
  auto r = schema_.relations().find(relation);
  if (!s || !r) return out;
  for (auto idx : schema_.by_subject(*s)) {
    const Triple& t = schema_.triples()[idx];
    if (t.relation == *r) out.push_back(schema_.entities().token(t.object));
  }
  return out;
}

std::vector<std::string_view> Ontology::domain_of(std::string_view relation) const {
  return objects_of(relation, vocab::kDomain);
}

std::vector<std::string_view> Ontology::range_of(std::string_view relation) const {
  return objects_of(relation, vocab::kRange);
}

}  // namespace kgloop
