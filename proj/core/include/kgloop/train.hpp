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
#include <random>
#include <span>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/model.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

using Rng = std::mt19937_64;

enum class OptimizerKind : std::uint8_t { kSgd, kAdagrad };
enum class LossKind : std::uint8_t { kPairwise, kLogistic };

struct TrainConfig {
  std::uint32_t epochs = 100;
  // Parameters update per sample; the batch is the renormalization and
  // parallel-dispatch granularity.
  std::uint32_t batch_size = 64;
  double learning_rate = 0.1;
  OptimizerKind optimizer = OptimizerKind::kAdagrad;
  double margin = 1.0;  // pairwise ranking loss only
  LossKind loss = LossKind::kPairwise;
  std::uint32_t negatives_per_positive = 2;
  // Project entity rows onto the unit sphere after each batch (the usual
  // TransE regime).
  bool normalize_entities = false;
  // Fraction of positives held out to fit the probability calibration. 0
  // skips Platt scaling and leaves the calibration at (a, b) = (1, 0).
  double calibration_split = 0.1;
  std::uint64_t seed = 0;
  // 1 = deterministic sequential mode. >1 = lossy data-parallel mode: workers
  // apply updates to the shared tables without locks, so runs are not
  // reproducible and some updates may be lost.
  std::uint32_t threads = 1;

  void validate() const;  // throws Error on out-of-range values
};

/// Trains a fresh model on `positives`. Vocabulary sizes come from `vocab`
/// (the owning graph); negatives are corruptions not present in `positives`.
EmbeddingModel fit(std::span<const Triple> positives, const KnowledgeGraph& vocab,
                   ModelKind kind, std::uint32_t dim, const TrainConfig& cfg);

/// Continues training an existing model (warm start). The model must already
/// cover the vocabulary of `vocab`; call grow() first after the graph grew.
void fit_more(EmbeddingModel& model, std::span<const Triple> positives,
              const KnowledgeGraph& vocab, const TrainConfig& cfg);

/// k corruptions of t, each replacing exactly the subject or the object
/// (fair coin) with a uniform entity; none present in g. Throws when the
/// retry budget runs out (graph too dense around t) or k == 0.
std::vector<Triple> corrupt(const Triple& t, const KnowledgeGraph& g,
                            std::uint32_t k, Rng& rng);

/// Scores candidates in input order; probability from the model calibration,
/// provenance kKge.
std::vector<ScoredTriple> predict(std::span<const Triple> candidates,
                                  const EmbeddingModel& model);

/// Keeps exactly the candidates with probability strictly above `threshold`,
/// preserving order.
std::vector<ScoredTriple> accept(std::span<const ScoredTriple> scored,
                                 double threshold);

}  // namespace kgloop
