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

#include <cstdint>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/train.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

enum class GenerateStrategy : std::uint8_t { kUniform, kClusterWeighted };

// Literal weighting uses the clustering coefficient itself; inverse targets
// sparse neighborhoods with w(e) = (1 - cc(e)) + smoothing.
enum class WeightDirection : std::uint8_t { kInverse, kDirect };

struct GeneratorConfig {
  GenerateStrategy strategy = GenerateStrategy::kClusterWeighted;
  std::size_t budget = 0;
  double smoothing = 0.01;
  bool type_filter = false;
  WeightDirection weight = WeightDirection::kInverse;
  std::uint64_t seed = 0;

  void validate() const;  // budget >= 0 by type; smoothing must be > 0
};

/// Per-relation candidate pools with normalized sampling weights. Subjects
/// and objects come from the positions observed for that relation; with
/// type_filter set and schema typing available, pools are narrowed (or, for
/// unobserved positions, seeded) by domain/range-compatible `type` triples.
struct RelationPool {
  RelationId relation{};
  std::size_t triple_count = 0;
  std::vector<EntityId> subjects;
  std::vector<double> subject_weights;  // normalized, aligned with subjects
  std::vector<EntityId> objects;
  std::vector<double> object_weights;
};

/// Pools for every relation that is usable under `cfg`, ascending relation
/// id. Relations with no eligible subjects or objects are skipped; their
/// names are appended to `skipped` when provided.
std::vector<RelationPool> build_relation_pools(const KnowledgeGraph& g,
                                               const Ontology* ontology,
                                               const GeneratorConfig& cfg,
                                               std::vector<std::string>* skipped = nullptr);

/// Up to n distinct triples uniform over E x R x E, none present in g or
/// `exclude`. Returns fewer than n only when the retry budget (50 n) runs out.
std::vector<Triple> generate_uniform(const KnowledgeGraph& g, std::size_t n,
                                     Rng& rng, const TripleSet* exclude = nullptr);

/// Cluster-coefficient-weighted sampling: relations proportional to their
/// triple counts, subject/object entities by pool weight. Same exclusion and
/// retry-budget contract as generate_uniform.
std::vector<Triple> generate_cluster_weighted(const KnowledgeGraph& g,
                                              const Ontology* ontology,
                                              const GeneratorConfig& cfg, Rng& rng,
                                              const TripleSet* exclude = nullptr);

/// Dispatch on cfg.strategy; seeds a fresh Rng from cfg.seed.
std::vector<Triple> generate(const KnowledgeGraph& g, const Ontology* ontology,
                             const GeneratorConfig& cfg,
                             const TripleSet* exclude = nullptr);

}  // namespace kgloop
