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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/model.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

struct Split {
  std::vector<Triple> train, valid, test;
  std::uint64_t seed = 0;
};

/// Random train/valid/test split. Ratios must sum to 1. Triples whose removal
/// would leave an entity or relation unseen in train are forced into train,
/// so valid/test may come out smaller than their ratios ask for.
Split make_split(const KnowledgeGraph& g, std::array<double, 3> ratios,
                 std::uint64_t seed);

enum class CorruptionSide : std::uint8_t { kSubject, kObject };

/// Filtered rank of t against corruptions of one side over entity ids
/// [0, num_candidates). Corruptions in `known` (other than t itself) are
/// removed before ranking; ties count against t.
std::uint32_t filtered_rank(const EmbeddingModel& model, const Triple& t,
                            const TripleSet& known, CorruptionSide side,
                            std::size_t num_candidates);

struct EvalResult {
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  std::size_t evaluated = 0;  // test triples (two ranks each)

  struct PerRelation {
    std::string relation;
    double mrr = 0.0;
    double hits10 = 0.0;
    std::size_t count = 0;
  };
  std::vector<PerRelation> per_relation;

  // Rank convention recorded in exports: both corruption sides, filtered,
  // pessimistic ties.
  std::string to_json(std::string_view method_name) const;
};

struct EvalOptions {
  /// Extra known-true triples joining the filter set (for instance the loop's
  /// accepted/derived triples); never part of the test set.
  const TripleSet* extra_filter = nullptr;
  /// Candidate entities are [0, num_candidates); 0 means every entity of the
  /// vocabulary graph, which keeps rankings comparable across models whose
  /// tables grew past it.
  std::size_t num_candidates = 0;
  std::uint32_t threads = 1;
};

/// Filtered MRR / Hits@{1,3,10} over both corruption sides of every test
/// triple. The filter set is train + valid + test (+ extra_filter).
EvalResult evaluate(const EmbeddingModel& model, const Split& split,
                    const KnowledgeGraph& vocab, const EvalOptions& options = {});

struct MetricComparison {
  std::string metric;
  double baseline = 0.0;
  double improved = 0.0;
  double delta = 0.0;
  double ratio = 0.0;  // improved / baseline; inf when baseline is 0
};

struct ComparisonReport {
  std::vector<MetricComparison> metrics;  // MRR, Hits@1, Hits@3, Hits@10
  std::string table(std::string_view baseline_name,
                    std::string_view improved_name) const;
  std::string to_json(std::string_view baseline_name,
                      std::string_view improved_name) const;
};

ComparisonReport compare(const EvalResult& baseline, const EvalResult& improved);

/// Aligned text table (Method / MRR / Hits@1 / Hits@3 / Hits@10).
std::string metrics_table(std::span<const std::pair<std::string, EvalResult>> rows);

}  // namespace kgloop
