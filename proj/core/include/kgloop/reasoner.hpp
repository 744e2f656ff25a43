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
#include <string>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/rules.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

/// Execution plan produced by simplify_rules(): rules whose body is the
/// transitive pattern (?a, p, ?b), (?b, p, ?c) -> (?a, p, ?c) over a constant
/// relation p run on a dedicated reachability executor; everything else goes
/// through the generic delta-join path unchanged.
struct ExecutionPlan {
  struct TransitiveRule {
    std::string name;
    std::string relation;
  };
  std::vector<HornRule> general;
  std::vector<TransitiveRule> transitive;
};

ExecutionPlan simplify_rules(const RuleSet& rules);

struct InferenceOptions {
  bool simplify = true;   // route transitive rules to the closure executor
  std::uint32_t threads = 1;  // >1 evaluates rules of a round in parallel
};

struct InferenceResult {
  /// Input graph plus ontology plus everything derived; dictionaries may have
  /// grown (derived triples can mint relations unseen in the input).
  KnowledgeGraph graph;
  /// The new (intensional) triples only: closure(X + ontology) minus
  /// (X + ontology). Ids are valid in `graph`.
  std::vector<Triple> fresh;
  std::size_t rounds = 0;
};

/// Forward-chains `rules` over g's triples plus the ontology until fixpoint.
/// Evaluation is semi-naive: every derivation of a round joins at least one
/// tuple discovered in the previous round. Throws on unsafe rules.
InferenceResult infer(const KnowledgeGraph& g, const Ontology& ontology,
                      const RuleSet& rules, const InferenceOptions& options = {});

}  // namespace kgloop
