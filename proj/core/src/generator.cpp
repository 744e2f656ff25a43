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

#include "kgloop/generator.hpp"

#include <algorithm>
#include <unordered_set>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

constexpr std::size_t kRetryFactor = 50;

bool excluded(const Triple& t, const KnowledgeGraph& g, const TripleSet* exclude) {
  if (g.contains(t)) return true;
  return exclude != nullptr && exclude->contains(t);
}

// Entities with a (e, type, c) triple for any class c in `classes` (names
// resolved against the data graph's vocabulary).
std::vector<EntityId> typed_entities(const KnowledgeGraph& g,
                                     const std::vector<std::string_view>& classes) {
  std::vector<EntityId> out;
  auto type_rel = g.relations().find(vocab::kType);
  if (!type_rel || classes.empty()) return out;
  std::unordered_set<EntityId> class_ids;
  for (std::string_view c : classes)
    if (auto id = g.entities().find(c)) class_ids.insert(*id);
  if (class_ids.empty()) return out;
  std::unordered_set<EntityId> seen;
  for (auto idx : g.by_relation(*type_rel)) {
    const Triple& t = g.triples()[idx];
    if (class_ids.contains(t.object)) seen.insert(t.subject);
  }
  out.assign(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EntityId> observed_position(const KnowledgeGraph& g, RelationId r,
                                        bool subject_side) {
  std::unordered_set<EntityId> seen;
  for (auto idx : g.by_relation(r)) {
    const Triple& t = g.triples()[idx];
    seen.insert(subject_side ? t.subject : t.object);
  }
  std::vector<EntityId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Pool for one side of a relation: observed entities, optionally narrowed by
// typing; typing alone seeds the pool when nothing was observed.
std::vector<EntityId> side_pool(const KnowledgeGraph& g, RelationId r,
                                bool subject_side, const Ontology* ontology,
                                const GeneratorConfig& cfg) {
  std::vector<EntityId> base = observed_position(g, r, subject_side);
  if (!cfg.type_filter || ontology == nullptr) return base;

  const std::string& rel_name = g.relations().token(r);
  auto classes = subject_side ? ontology->domain_of(rel_name)
                              : ontology->range_of(rel_name);
  if (classes.empty()) return base;

  std::vector<EntityId> typed = typed_entities(g, classes);
  if (base.empty()) return typed;
  std::vector<EntityId> narrowed;
  std::set_intersection(base.begin(), base.end(), typed.begin(), typed.end(),
                        std::back_inserter(narrowed));
  return narrowed;
}

std::vector<double> pool_weights(const std::vector<EntityId>& pool,
                                 const std::vector<double>& cc,
                                 const GeneratorConfig& cfg) {
  std::vector<double> w(pool.size());
  double total = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double c = cc[pool[i]];
    w[i] = (cfg.weight == WeightDirection::kInverse ? 1.0 - c : c) + cfg.smoothing;
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (smoothing <= 0) throw Error("generator smoothing must be positive");
}

std::vector<RelationPool> build_relation_pools(const KnowledgeGraph& g,
                                               const Ontology* ontology,
                                               const GeneratorConfig& cfg,
                                               std::vector<std::string>* skipped) {
  cfg.validate();
  std::vector<double> cc = clustering_coefficients(g);
  std::vector<RelationPool> pools;
  for (RelationId r = 0; r < g.num_relations(); ++r) {
    RelationPool pool;
    pool.relation = r;
    pool.triple_count = g.by_relation(r).size();
    pool.subjects = side_pool(g, r, /*subject_side=*/true, ontology, cfg);
    pool.objects = side_pool(g, r, /*subject_side=*/false, ontology, cfg);
    if (pool.subjects.empty() || pool.objects.empty()) {
      if (skipped) skipped->push_back(g.relations().token(r));
      continue;
    }
    pool.subject_weights = pool_weights(pool.subjects, cc, cfg);
    pool.object_weights = pool_weights(pool.objects, cc, cfg);
    pools.push_back(std::move(pool));
  }
  return pools;
}

std::vector<Triple> generate_uniform(const KnowledgeGraph& g, std::size_t n,
                                     Rng& rng, const TripleSet* exclude) {
  std::vector<Triple> out;
  if (n == 0 || g.num_entities() == 0 || g.num_relations() == 0) return out;

  std::uniform_int_distribution<std::uint32_t> pick_entity(
      0, static_cast<std::uint32_t>(g.num_entities() - 1));
  std::uniform_int_distribution<std::uint32_t> pick_relation(
      0, static_cast<std::uint32_t>(g.num_relations() - 1));

  TripleSet emitted;
  std::size_t attempts = kRetryFactor * n;
  while (out.size() < n && attempts-- > 0) {
    Triple t{pick_entity(rng), pick_relation(rng), pick_entity(rng)};
    if (excluded(t, g, exclude) || emitted.contains(t)) continue;
    emitted.insert(t);
    out.push_back(t);
  }
  return out;
}

std::vector<Triple> generate_cluster_weighted(const KnowledgeGraph& g,
                                              const Ontology* ontology,
                                              const GeneratorConfig& cfg, Rng& rng,
                                              const TripleSet* exclude) {
  cfg.validate();
  std::vector<Triple> out;
  if (cfg.budget == 0) return out;

  std::vector<RelationPool> pools = build_relation_pools(g, ontology, cfg);
  if (pools.empty()) return out;

  std::vector<double> relation_mass;
  relation_mass.reserve(pools.size());
  for (const RelationPool& p : pools)
    relation_mass.push_back(static_cast<double>(p.triple_count));
  std::discrete_distribution<std::size_t> pick_pool(relation_mass.begin(),
                                                    relation_mass.end());

  std::vector<std::discrete_distribution<std::size_t>> pick_subject, pick_object;
  for (const RelationPool& p : pools) {
    pick_subject.emplace_back(p.subject_weights.begin(), p.subject_weights.end());
    pick_object.emplace_back(p.object_weights.begin(), p.object_weights.end());
  }

  TripleSet emitted;
  std::size_t attempts = kRetryFactor * cfg.budget;
  while (out.size() < cfg.budget && attempts-- > 0) {
    std::size_t i = pick_pool(rng);
    const RelationPool& pool = pools[i];
    Triple t{pool.subjects[pick_subject[i](rng)], pool.relation,
             pool.objects[pick_object[i](rng)]};
    if (excluded(t, g, exclude) || emitted.contains(t)) continue;
    emitted.insert(t);
    out.push_back(t);
  }
  return out;
}

std::vector<Triple> generate(const KnowledgeGraph& g, const Ontology* ontology,
                             const GeneratorConfig& cfg, const TripleSet* exclude) {
  Rng rng(cfg.seed);
  if (cfg.strategy == GenerateStrategy::kUniform)
    return generate_uniform(g, cfg.budget, rng, exclude);
  return generate_cluster_weighted(g, ontology, cfg, rng, exclude);
}

}  // namespace kgloop
