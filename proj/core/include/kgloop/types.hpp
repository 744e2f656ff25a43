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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <unordered_set>

namespace kgloop {

/// Dense, contiguous identifiers assigned by a Dictionary in insertion order.
using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

struct Triple {
  EntityId subject{};
  RelationId relation{};
  EntityId object{};

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    // splitmix64 over the packed 96-bit key, folded in two steps.
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    std::uint64_t lo = (std::uint64_t(t.subject) << 32) | t.object;
    return static_cast<std::size_t>(mix(mix(lo) ^ t.relation));
  }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

/// Where a triple came from: present in the input KG, accepted from the
/// embedding model's predictions, or derived by the rule engine.
enum class Provenance : std::uint8_t { kInput, kKge, kReasoner };

std::string_view to_string(Provenance p);

struct ScoredTriple {
  Triple triple;
  double score = 0.0;
  double probability = 0.0;
  Provenance provenance = Provenance::kInput;
};

}  // namespace kgloop
