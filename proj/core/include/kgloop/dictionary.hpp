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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgloop/error.hpp"

namespace kgloop {

/// Bijective string <-> dense id map. Ids are contiguous from 0 in
/// first-insertion order, which makes loads reproducible byte-for-byte.
class Dictionary {
 public:
  std::uint32_t insert(std::string_view token) {
    if (auto it = index_.find(token); it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(tokens_.size());
    tokens_.emplace_back(token);
    index_.emplace(tokens_.back(), id);
    return id;
  }

  std::optional<std::uint32_t> find(std::string_view token) const {
    if (auto it = index_.find(token); it != index_.end()) return it->second;
    return std::nullopt;
  }

  bool contains(std::string_view token) const { return index_.contains(token); }

  const std::string& token(std::uint32_t id) const {
    if (id >= tokens_.size())
      throw Error("dictionary id " + std::to_string(id) + " out of range (size " +
                  std::to_string(tokens_.size()) + ")");
    return tokens_[id];
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(tokens_.size()); }
  bool empty() const { return tokens_.empty(); }

  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  struct Eq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
  };

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t, Hash, Eq> index_;
};

}  // namespace kgloop
