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
#include <filesystem>
#include <string>
#include <vector>

#include "kgloop/graph.hpp"
#include "kgloop/rules.hpp"

namespace kgloop {

/// University-domain synthetic KG: a class/property hierarchy expressible in
/// the reserved schema vocabulary plus ground facts, sized by the configured
/// products. Same seed, same bytes.
struct SynthConfig {
  std::uint32_t universities = 1;
  std::uint32_t departments_per_university = 3;
  std::uint32_t professors_per_department = 5;
  std::uint32_t students_per_professor = 4;
  /// Fraction of the rule-derivable instance triples withheld from the data
  /// graph (exported separately as ground truth for completion experiments).
  double sparsity = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthOutput {
  KnowledgeGraph graph;  // extensional facts + the kept derivable triples
  Ontology ontology;
  RuleSet rules;  // the schema entailment preset the closure was built with
  /// Derivable triples absent from graph + ontology: the withheld instance
  /// triples plus the schema-transitivity consequences (never emitted).
  std::vector<std::array<std::string, 3>> withheld;

  struct Stats {
    std::size_t universities = 0, departments = 0, professors = 0, students = 0,
                courses = 0;
    std::size_t extensional = 0;         // ground facts emitted directly
    std::size_t derivable_instance = 0;  // closure minus schema-level derivations
    std::size_t derivable_schema = 0;    // derived subClass/subProperty edges
  } stats;
};

SynthOutput synth_generate(const SynthConfig& cfg);

/// Writes triples.tsv, ontology.tsv, withheld.tsv, and rules.txt into `dir`.
void write_synth_files(const SynthOutput& output, const std::filesystem::path& dir);

}  // namespace kgloop
