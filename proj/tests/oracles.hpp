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
//
// Deliberately dumb reference implementations used to cross-check the
// library. They share no evaluation machinery with the production paths:
// string triples, nested scans, no indexes, no plans.

#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/model.hpp"
#include "kgloop/rules.hpp"
#include "kgloop/types.hpp"

namespace kgloop::oracles {

using StrTriple = std::array<std::string, 3>;
using StrTripleSet = std::set<StrTriple>;

StrTripleSet to_string_triples(const KnowledgeGraph& g);

/// Repeat-until-no-change closure by brute force: every rule matched against
/// every fact combination, original atom order, no delta tracking.
StrTripleSet naive_closure(StrTripleSet facts, const std::vector<HornRule>& rules);

/// Clustering coefficient by definition: enumerate all unordered neighbor
/// pairs of e and count the connected ones.
double clustering_coefficient(const KnowledgeGraph& g, EntityId e);

/// Filtered rank by the definition: score every corruption, drop the known
/// ones, sort descending, count how many beat-or-tie the target.
std::uint32_t filtered_rank(const EmbeddingModel& model, const Triple& t,
                            const TripleSet& known, bool subject_side,
                            std::size_t num_candidates);

/// Central finite differences of model.score(t) w.r.t. every coordinate of
/// the subject/relation/object rows. The model is restored afterwards.
struct NumericGradient {
  std::vector<double> subject, relation, object;
};
NumericGradient numeric_gradient(EmbeddingModel& model, const Triple& t, double h);

/// P(score(pos) > score(neg)) + 0.5 P(=) by all-pairs comparison.
double auc(const std::vector<double>& positives, const std::vector<double>& negatives);

/// Circular correlation score by the textbook formula, term by term.
double hole_score_by_definition(const EmbeddingModel& model, const Triple& t);

}  // namespace kgloop::oracles
