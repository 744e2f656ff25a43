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
#include <vector>

namespace kgloop {

/// Variable (`?x`) or constant term of a rule atom. Variables may appear in
/// any of the three positions, including the relation slot.
struct Term {
  enum class Kind : std::uint8_t { kVariable, kConstant };

  static Term variable(std::string name) {
    return {Kind::kVariable, std::move(name)};
  }
  static Term constant(std::string text) {
    return {Kind::kConstant, std::move(text)};
  }

  bool is_variable() const { return kind == Kind::kVariable; }

  Kind kind = Kind::kConstant;
  std::string text;  // variable name without the '?', or the constant token

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  Term subject, relation, object;

  const Term& operator[](int pos) const {
    return pos == 0 ? subject : (pos == 1 ? relation : object);
  }
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Positive conjunctive Horn rule: body atoms imply a single head atom.
/// Monotonic by construction (no negation, nothing is ever retracted).
struct HornRule {
  std::string name;
  std::vector<Atom> body;  // nonempty
  Atom head;

  /// First head variable not bound anywhere in the body, if any (the rule is
  /// safe iff this is empty).
  std::optional<std::string> unsafe_head_variable() const;

  friend bool operator==(const HornRule&, const HornRule&) = default;
};

enum class RulePreset : std::uint8_t { kRdfsSubset, kCustom, kMixed };

struct RuleSet {
  std::vector<HornRule> rules;
  RulePreset preset = RulePreset::kCustom;
};

/// Parses the rule DSL: one rule per line, blank lines and `#` comments
/// ignored. Example:
///
///   (?x, bornIn, ?y), (?y, locatedIn, ?z) -> (?x, bornIn, ?z)
///
/// Rules are auto-named rule1, rule2, ... in file order. Throws ParseError on
/// syntax errors and Error (naming the variable) on unsafe rules.
RuleSet parse_rules(std::string_view text, std::string_view source_name = "<rules>");

/// The six schema entailment rules over type/domain/range/subProperty/subClass.
RuleSet rdfs_preset();

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const HornRule& rule);  // DSL line, re-parseable

}  // namespace kgloop
