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
#include <filesystem>
#include <string>
#include <vector>

#include "kgloop/generator.hpp"
#include "kgloop/graph.hpp"
#include "kgloop/model.hpp"
#include "kgloop/reasoner.hpp"
#include "kgloop/rules.hpp"
#include "kgloop/train.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

enum class RetrainPolicy : std::uint8_t { kFullRetrain, kWarmStart };
enum class LoopOrder : std::uint8_t { kKgeFirst, kReasonerFirst };

struct LoopConfig {
  double threshold = 0.9;  // acceptance probability cutoff (strict >)
  std::uint32_t max_iterations = 10;
  std::size_t candidate_budget = 1000;
  RetrainPolicy retrain = RetrainPolicy::kWarmStart;
  LoopOrder order = LoopOrder::kKgeFirst;
  ModelKind model_kind = ModelKind::kDistMult;
  std::uint32_t dim = 32;
  TrainConfig train;
  // Epochs for warm-start refits on iterations after the first; 0 picks
  // max(1, train.epochs / 4).
  std::uint32_t warm_start_epochs = 0;
  GeneratorConfig generator;
  // Feed the schema triples to the embedding trainer as ordinary triples.
  bool schema_in_training = true;
  std::uint32_t reasoner_threads = 1;
  // When set, every iteration writes model.ckpt + delta.tsv under
  // <checkpoint_dir>/iter_<k>/ for resumability and inspection.
  std::filesystem::path checkpoint_dir;

  void validate() const;
};

struct IterationStats {
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t inferred = 0;
  std::size_t kg_size = 0;  // cumulative, after the iteration committed
  double fit_seconds = 0;
  double generate_seconds = 0;
  double predict_seconds = 0;
  double infer_seconds = 0;
};

struct LoopReport {
  enum class Termination : std::uint8_t { kFixpoint, kMaxIterations };

  std::vector<IterationStats> iterations;
  Termination termination = Termination::kFixpoint;
  std::size_t initial_size = 0;
  std::size_t final_size = 0;

  std::string to_json() const;
  std::string table() const;
};

struct LoopResult {
  KnowledgeGraph graph;  // input plus everything accepted or derived
  EmbeddingModel model;  // model state after the last iteration
  LoopReport report;
  // Every added triple (ids valid in `graph`), kge rows carry probabilities.
  std::vector<ScoredTriple> additions;
};

/// Alternates embedding-based prediction and rule inference, feeding each
/// phase's new triples to the other, until an iteration adds nothing or
/// max_iterations is hit. Iterations commit all-or-nothing: an error leaves
/// the last consistent state.
LoopResult run_loop(const KnowledgeGraph& g, const Ontology& ontology,
                    const RuleSet& rules, const LoopConfig& cfg,
                    const TripleSet* exclude = nullptr);

}  // namespace kgloop
