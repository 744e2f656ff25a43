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

#include "kgloop/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "kgloop/error.hpp"

namespace kgloop {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTransEL1: return "transe-l1";
    case ModelKind::kTransEL2: return "transe-l2";
    case ModelKind::kDistMult: return "distmult";
    case ModelKind::kComplEx: return "complex";
    case ModelKind::kHolE: return "hole";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "transe-l1" || name == "transe") return ModelKind::kTransEL1;
  if (name == "transe-l2") return ModelKind::kTransEL2;
  if (name == "distmult") return ModelKind::kDistMult;
  if (name == "complex") return ModelKind::kComplEx;
  if (name == "hole") return ModelKind::kHolE;
  throw Error("unknown model kind '" + std::string(name) +
              "' (expected transe-l1, transe-l2, distmult, complex, or hole)");
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double Calibration::probability(double score) const {
  return logistic(a * score + b);
}

EmbeddingModel::EmbeddingModel(ModelKind kind, std::uint32_t dim,
                               std::size_t num_entities, std::size_t num_relations)
    : kind_(kind),
      dim_(dim),
      row_width_(kind == ModelKind::kComplEx ? 2 * dim : dim),
      num_entities_(num_entities),
      num_relations_(num_relations),
      entity_table_(num_entities * row_width_, 0.0),
      relation_table_(num_relations * row_width_, 0.0) {
  if (dim == 0) throw Error("embedding dimension must be positive");
}

namespace {
void fill_uniform(std::span<double> out, std::uint32_t dim, std::mt19937_64& rng) {
  const double bound = 6.0 / std::sqrt(static_cast<double>(dim));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : out) v = dist(rng);
}
}  // namespace

EmbeddingModel EmbeddingModel::random_init(ModelKind kind, std::uint32_t dim,
                                           std::size_t num_entities,
                                           std::size_t num_relations,
                                           std::uint64_t seed) {
  EmbeddingModel m(kind, dim, num_entities, num_relations);
  std::mt19937_64 rng(seed);
  fill_uniform(m.entity_table_, dim, rng);
  fill_uniform(m.relation_table_, dim, rng);
  return m;
}

void EmbeddingModel::grow(std::size_t num_entities, std::size_t num_relations,
                          std::uint64_t seed) {
  if (num_entities < num_entities_ || num_relations < num_relations_)
    throw Error("grow() cannot shrink the parameter tables");
  std::mt19937_64 rng(seed);
  std::size_t old_e = entity_table_.size();
  std::size_t old_r = relation_table_.size();
  entity_table_.resize(num_entities * row_width_);
  relation_table_.resize(num_relations * row_width_);
  fill_uniform(std::span(entity_table_).subspan(old_e), dim_, rng);
  fill_uniform(std::span(relation_table_).subspan(old_r), dim_, rng);
  num_entities_ = num_entities;
  num_relations_ = num_relations;
}

std::span<double> EmbeddingModel::entity(EntityId e) {
  return std::span(entity_table_).subspan(std::size_t(e) * row_width_, row_width_);
}
std::span<const double> EmbeddingModel::entity(EntityId e) const {
  return std::span(entity_table_).subspan(std::size_t(e) * row_width_, row_width_);
}
std::span<double> EmbeddingModel::relation(RelationId r) {
  return std::span(relation_table_).subspan(std::size_t(r) * row_width_, row_width_);
}
std::span<const double> EmbeddingModel::relation(RelationId r) const {
  return std::span(relation_table_).subspan(std::size_t(r) * row_width_, row_width_);
}

void EmbeddingModel::check_ids(const Triple& t) const {
  if (t.subject >= num_entities_ || t.object >= num_entities_)
    throw Error("entity id out of range for model (|E| = " +
                std::to_string(num_entities_) + ")");
  if (t.relation >= num_relations_)
    throw Error("relation id out of range for model (|R| = " +
                std::to_string(num_relations_) + ")");
}

double EmbeddingModel::score(const Triple& t) const {
  check_ids(t);
  auto s = entity(t.subject);
  auto r = relation(t.relation);
  auto o = entity(t.object);
  const std::uint32_t d = dim_;

  switch (kind_) {
    case ModelKind::kTransEL1: {
      double acc = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) acc += std::abs(s[k] + r[k] - o[k]);
      return -acc;
    }
    case ModelKind::kTransEL2: {
      double acc = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) {
        double diff = s[k] + r[k] - o[k];
        acc += diff * diff;
      }
      return -std::sqrt(acc);
    }
    case ModelKind::kDistMult: {
      double acc = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) acc += s[k] * r[k] * o[k];
      return acc;
    }
    case ModelKind::kComplEx: {
      // Layout: [re(0..d-1), im(0..d-1)].
      double acc = 0.0;
      if (!complex_no_conjugate_) {
        for (std::uint32_t k = 0; k < d; ++k) {
          double sr = s[k], si = s[d + k];
          double rr = r[k], ri = r[d + k];
          double orr = o[k], oi = o[d + k];
          acc += sr * rr * orr + si * rr * oi + sr * ri * oi - si * ri * orr;
        }
      } else {
        for (std::uint32_t k = 0; k < d; ++k) {
          double sr = s[k], si = s[d + k];
          double rr = r[k], ri = r[d + k];
          double orr = o[k], oi = o[d + k];
          double re = sr * rr - si * ri;
          double im = sr * ri + si * rr;
          acc += re * orr - im * oi;
        }
      }
      return acc;
    }
    case ModelKind::kHolE: {
      // r . (s * o) with circular correlation [s * o]_k = sum_m s_m o_{(m+k) % d}.
      double acc = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) {
        double corr = 0.0;
        for (std::uint32_t m = 0; m < d; ++m) {
          std::uint32_t j = m + k;
          if (j >= d) j -= d;
          corr += s[m] * o[j];
        }
        acc += r[k] * corr;
      }
      return acc;
    }
  }
  throw Error("unreachable model kind");
}

void EmbeddingModel::score_gradient(const Triple& t, std::span<double> gs,
                                    std::span<double> gr,
                                    std::span<double> go) const {
  check_ids(t);
  if (gs.size() != row_width_ || gr.size() != row_width_ || go.size() != row_width_)
    throw Error("gradient span size mismatch");
  auto s = entity(t.subject);
  auto r = relation(t.relation);
  auto o = entity(t.object);
  const std::uint32_t d = dim_;

  switch (kind_) {
    case ModelKind::kTransEL1: {
      for (std::uint32_t k = 0; k < d; ++k) {
        double diff = s[k] + r[k] - o[k];
        double sign = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
        gs[k] = -sign;
        gr[k] = -sign;
        go[k] = sign;
      }
      return;
    }
    case ModelKind::kTransEL2: {
      double norm = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) {
        double diff = s[k] + r[k] - o[k];
        norm += diff * diff;
      }
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        std::fill(gs.begin(), gs.end(), 0.0);
        std::fill(gr.begin(), gr.end(), 0.0);
        std::fill(go.begin(), go.end(), 0.0);
        return;
      }
      for (std::uint32_t k = 0; k < d; ++k) {
        double diff = s[k] + r[k] - o[k];
        double g = -diff / norm;
        gs[k] = g;
        gr[k] = g;
        go[k] = -g;
      }
      return;
    }
    case ModelKind::kDistMult: {
      for (std::uint32_t k = 0; k < d; ++k) {
        gs[k] = r[k] * o[k];
        gr[k] = s[k] * o[k];
        go[k] = s[k] * r[k];
      }
      return;
    }
    case ModelKind::kComplEx: {
      if (!complex_no_conjugate_) {
        for (std::uint32_t k = 0; k < d; ++k) {
          double sr = s[k], si = s[d + k];
          double rr = r[k], ri = r[d + k];
          double orr = o[k], oi = o[d + k];
          gs[k] = rr * orr + ri * oi;
          gs[d + k] = rr * oi - ri * orr;
          gr[k] = sr * orr + si * oi;
          gr[d + k] = sr * oi - si * orr;
          go[k] = sr * rr - si * ri;
          go[d + k] = sr * ri + si * rr;
        }
      } else {
        for (std::uint32_t k = 0; k < d; ++k) {
          double sr = s[k], si = s[d + k];
          double rr = r[k], ri = r[d + k];
          double orr = o[k], oi = o[d + k];
          gs[k] = rr * orr - ri * oi;
          gs[d + k] = -ri * orr - rr * oi;
          gr[k] = sr * orr - si * oi;
          gr[d + k] = -si * orr - sr * oi;
          go[k] = sr * rr - si * ri;
          go[d + k] = -(sr * ri + si * rr);
        }
      }
      return;
    }
    case ModelKind::kHolE: {
      for (std::uint32_t k = 0; k < d; ++k) {
        double corr = 0.0;   // [s * o]_k, reused as the relation gradient
        double gsm = 0.0;    // d score / d s_k
        double gop = 0.0;    // d score / d o_k
        for (std::uint32_t m = 0; m < d; ++m) {
          std::uint32_t fwd = m + k >= d ? m + k - d : m + k;   // (m+k) mod d
          std::uint32_t bwd = k >= m ? k - m : k + d - m;       // (k-m) mod d
          corr += s[m] * o[fwd];
          gsm += r[m] * o[fwd];
          gop += r[m] * s[bwd];
        }
        gr[k] = corr;
        gs[k] = gsm;
        go[k] = gop;
      }
      return;
    }
  }
  throw Error("unreachable model kind");
}

bool EmbeddingModel::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(entity_table_) && finite(relation_table_);
}

void EmbeddingModel::renormalize_entity(EntityId e) {
  auto row = entity(e);
  double norm = 0.0;
  for (double v : row) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (double& v : row) v /= norm;
}

namespace {

constexpr char kMagic[4] = {'K', 'G', 'E', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
void read_pod(std::istream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof value);
}

}  // namespace

void EmbeddingModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kMagic, sizeof kMagic);
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(kind_));
  write_pod(out, dim_);
  write_pod(out, static_cast<std::uint32_t>(complex_no_conjugate_ ? 1 : 0));
  write_pod(out, static_cast<std::uint64_t>(num_entities_));
  write_pod(out, static_cast<std::uint64_t>(num_relations_));
  write_pod(out, calibration_.a);
  write_pod(out, calibration_.b);
  out.write(reinterpret_cast<const char*>(entity_table_.data()),
            static_cast<std::streamsize>(entity_table_.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(relation_table_.data()),
            static_cast<std::streamsize>(relation_table_.size() * sizeof(double)));
  if (!out) throw Error("write failed for " + path.string());
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char magic[4];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw Error(path.string() + " is not a model checkpoint");
  std::uint32_t version = 0, kind = 0, dim = 0, no_conj = 0;
  std::uint64_t ne = 0, nr = 0;
  read_pod(in, version);
  if (version != kVersion)
    throw Error("unsupported checkpoint version " + std::to_string(version));
  read_pod(in, kind);
  read_pod(in, dim);
  read_pod(in, no_conj);
  read_pod(in, ne);
  read_pod(in, nr);
  if (kind > static_cast<std::uint32_t>(ModelKind::kHolE))
    throw Error("corrupt checkpoint: bad model kind");
  EmbeddingModel m(static_cast<ModelKind>(kind), dim, ne, nr);
  m.complex_no_conjugate_ = no_conj != 0;
  read_pod(in, m.calibration_.a);
  read_pod(in, m.calibration_.b);
  in.read(reinterpret_cast<char*>(m.entity_table_.data()),
          static_cast<std::streamsize>(m.entity_table_.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(m.relation_table_.data()),
          static_cast<std::streamsize>(m.relation_table_.size() * sizeof(double)));
  if (!in) throw Error("truncated checkpoint " + path.string());
  return m;
}

bool EmbeddingModel::operator==(const EmbeddingModel& other) const {
  return kind_ == other.kind_ && dim_ == other.dim_ &&
         num_entities_ == other.num_entities_ &&
         num_relations_ == other.num_relations_ &&
         complex_no_conjugate_ == other.complex_no_conjugate_ &&
         calibration_.a == other.calibration_.a &&
         calibration_.b == other.calibration_.b &&
         entity_table_ == other.entity_table_ &&
         relation_table_ == other.relation_table_;
}

}  // namespace kgloop
