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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "kgloop/graph.hpp"
#include "kgloop/types.hpp"

namespace kgloop {

enum class TripleFormat {
  kTsv,       // three whitespace- or tab-separated tokens, '#' comments
  kNTriples,  // minimal subset: `<s> <p> <o> .` with IRIs or bare tokens
};

struct LoadOptions {
  TripleFormat format = TripleFormat::kTsv;
  // Map rdf:type / rdfs:subClassOf style tokens (prefixed or full IRI) onto
  // the reserved short names used by the rule presets.
  bool map_rdf_vocabulary = false;
};

KnowledgeGraph load_graph(const std::filesystem::path& path,
                          const LoadOptions& options = {});
KnowledgeGraph load_graph(std::istream& in, std::string source_name,
                          const LoadOptions& options = {});

void save_graph(const KnowledgeGraph& g, const std::filesystem::path& path,
                TripleFormat format = TripleFormat::kTsv);
void save_graph(const KnowledgeGraph& g, std::ostream& out,
                TripleFormat format = TripleFormat::kTsv);

/// TSV rows `subject relation object provenance probability`; probability
/// column is omitted for reasoner/input rows, which carry none.
void save_scored(const KnowledgeGraph& vocab, std::span<const ScoredTriple> rows,
                 const std::filesystem::path& path);

/// FNV-1a 64-bit content hash, hex-encoded; used by run manifests.
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace kgloop
