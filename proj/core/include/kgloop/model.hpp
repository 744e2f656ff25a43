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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgloop/types.hpp"

namespace kgloop {

enum class ModelKind : std::uint32_t {
  kTransEL1 = 0,
  kTransEL2 = 1,
  kDistMult = 2,
  kComplEx = 3,
  kHolE = 4,
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);  // throws on unknown names

/// Affine score -> probability map: p = logistic(a * score + b).
struct Calibration {
  double a = 1.0;
  double b = 0.0;
  double probability(double score) const;
};

double logistic(double x);

/// Entity/relation parameter tables for one scoring function.
///
/// Rows are row-major doubles of width row_width(): d for the real-valued
/// models, 2d for ComplEx (real parts first, then imaginary parts).
class EmbeddingModel {
 public:
  EmbeddingModel(ModelKind kind, std::uint32_t dim, std::size_t num_entities,
                 std::size_t num_relations);

  /// Uniform init in [-6/sqrt(d), +6/sqrt(d)], reproducible from the seed.
  static EmbeddingModel random_init(ModelKind kind, std::uint32_t dim,
                                    std::size_t num_entities,
                                    std::size_t num_relations, std::uint64_t seed);

  ModelKind kind() const { return kind_; }
  std::uint32_t dim() const { return dim_; }
  std::uint32_t row_width() const { return row_width_; }
  std::size_t num_entities() const { return num_entities_; }
  std::size_t num_relations() const { return num_relations_; }

  std::span<double> entity(EntityId e);
  std::span<const double> entity(EntityId e) const;
  std::span<double> relation(RelationId r);
  std::span<const double> relation(RelationId r) const;

  double score(const Triple& t) const;

  /// Analytic gradient of score() w.r.t. the three parameter rows. Output
  /// spans must have row_width() elements; they are overwritten.
  void score_gradient(const Triple& t, std::span<double> grad_subject,
                      std::span<double> grad_relation,
                      std::span<double> grad_object) const;

  Calibration& calibration() { return calibration_; }
  const Calibration& calibration() const { return calibration_; }

  /// Score the literal ComplEx table form (no conjugation of the object
  /// embedding) instead of the canonical conjugated form.
  bool complex_no_conjugate() const { return complex_no_conjugate_; }
  void set_complex_no_conjugate(bool v) { complex_no_conjugate_ = v; }

  /// Extends the tables for a grown vocabulary; new rows are random-
  /// initialized from `seed`, existing rows are untouched. Used by warm starts.
  void grow(std::size_t num_entities, std::size_t num_relations, std::uint64_t seed);

  bool all_finite() const;
  void renormalize_entity(EntityId e);  // project onto the unit L2 sphere

  /// Binary checkpoint; layout documented in the README. Round-trips
  /// bit-exactly.
  void save(const std::filesystem::path& path) const;
  static EmbeddingModel load(const std::filesystem::path& path);

  bool operator==(const EmbeddingModel& other) const;

 private:
  void check_ids(const Triple& t) const;

  ModelKind kind_;
  std::uint32_t dim_;
  std::uint32_t row_width_;
  std::size_t num_entities_;
  std::size_t num_relations_;
  bool complex_no_conjugate_ = false;
  Calibration calibration_;
  std::vector<double> entity_table_;
  std::vector<double> relation_table_;
};

}  // namespace kgloop
