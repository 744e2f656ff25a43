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

#include "kgloop/train.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

constexpr int kCorruptTriesPerSample = 200;
constexpr double kAdagradEps = 1e-8;

using MemberFn = std::function<bool(const Triple&)>;

// One corruption attempt loop shared by the public corrupt() and the trainer.
std::optional<Triple> sample_corruption(const Triple& t, std::size_t num_entities,
                                        const MemberFn& is_known, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> pick_entity(
      0, static_cast<std::uint32_t>(num_entities - 1));
  std::uniform_int_distribution<int> coin(0, 1);
  for (int attempt = 0; attempt < kCorruptTriesPerSample; ++attempt) {
    Triple candidate = t;
    if (coin(rng) == 0) {
      candidate.subject = pick_entity(rng);
      if (candidate.subject == t.subject) continue;
    } else {
      candidate.object = pick_entity(rng);
      if (candidate.object == t.object) continue;
    }
    if (is_known(candidate)) continue;
    return candidate;
  }
  return std::nullopt;
}

class Trainer {
 public:
  Trainer(EmbeddingModel& model, const TrainConfig& cfg, const TripleSet& positives)
      : model_(model), cfg_(cfg), positives_(positives) {
    if (cfg.optimizer == OptimizerKind::kAdagrad) {
      adagrad_entity_.assign(model.num_entities() * model.row_width(), 0.0);
      adagrad_relation_.assign(model.num_relations() * model.row_width(), 0.0);
    }
  }

  void run(std::span<const Triple> train, Rng& rng, std::uint32_t epochs) {
    std::vector<std::uint32_t> order(train.size());
    std::iota(order.begin(), order.end(), 0u);

    for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t begin = 0; begin < order.size(); begin += cfg_.batch_size) {
        std::size_t end = std::min(begin + cfg_.batch_size, order.size());
        if (cfg_.threads <= 1) {
          Scratch scratch(model_.row_width());
          for (std::size_t i = begin; i < end; ++i)
            train_sample(train[order[i]], rng, scratch);
        } else {
          run_batch_hogwild(train, order, begin, end, rng, epoch);
        }
        if (cfg_.normalize_entities) renormalize_batch();
        touched_entities_.clear();
      }
      if (!model_.all_finite())
        throw Error("training diverged: non-finite parameters after epoch " +
                    std::to_string(epoch + 1));
    }
  }

 private:
  struct Scratch {
    explicit Scratch(std::uint32_t width) : gs(width), gr(width), go(width) {}
    std::vector<double> gs, gr, go;
  };

  // Lossy data-parallel mode: workers update the shared tables without any
  // locking, so updates can race and runs are nondeterministic.
  void run_batch_hogwild(std::span<const Triple> train,
                         const std::vector<std::uint32_t>& order, std::size_t begin,
                         std::size_t end, Rng& rng, std::uint32_t epoch) {
    std::uint32_t nthreads = cfg_.threads;
    std::uint64_t batch_salt = rng();  // keeps the sequential stream moving
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    std::size_t chunk = (end - begin + nthreads - 1) / nthreads;
    for (std::uint32_t w = 0; w < nthreads; ++w) {
      std::size_t lo = begin + w * chunk;
      std::size_t hi = std::min(lo + chunk, end);
      if (lo >= hi) break;
      workers.emplace_back([this, &train, &order, lo, hi, batch_salt, epoch, w] {
        Rng thread_rng(batch_salt ^ (0x9e3779b97f4a7c15ULL * (w + 1)) ^ epoch);
        Scratch scratch(model_.row_width());
        for (std::size_t i = lo; i < hi; ++i)
          train_sample(train[order[i]], thread_rng, scratch);
      });
    }
    for (auto& t : workers) t.join();
  }

  void train_sample(const Triple& pos, Rng& rng, Scratch& scratch) {
    auto known = [this](const Triple& t) { return positives_.contains(t); };
    double pos_score = model_.score(pos);

    for (std::uint32_t n = 0; n < cfg_.negatives_per_positive; ++n) {
      auto neg = sample_corruption(pos, model_.num_entities(), known, rng);
      if (!neg) continue;  // dense neighborhood, skip this negative

      if (cfg_.loss == LossKind::kPairwise) {
        double neg_score = model_.score(*neg);
        if (cfg_.margin - pos_score + neg_score <= 0.0) continue;
        apply(pos, +1.0, scratch);
        apply(*neg, -1.0, scratch);
        pos_score = model_.score(pos);
      } else {
        double neg_score = model_.score(*neg);
        apply(*neg, -logistic(neg_score), scratch);
      }
    }
    if (cfg_.loss == LossKind::kLogistic) {
      apply(pos, 1.0 - logistic(model_.score(pos)), scratch);
    }
  }

  // One gradient-ascent step of `step_scale * d score / d params` on the three
  // rows of t.
  void apply(const Triple& t, double step_scale, Scratch& scratch) {
    model_.score_gradient(t, scratch.gs, scratch.gr, scratch.go);
    double lr = cfg_.learning_rate;
    update_row(model_.entity(t.subject), entity_accum(t.subject), scratch.gs,
               lr * step_scale);
    update_row(model_.relation(t.relation), relation_accum(t.relation), scratch.gr,
               lr * step_scale);
    update_row(model_.entity(t.object), entity_accum(t.object), scratch.go,
               lr * step_scale);
    if (cfg_.normalize_entities) {
      touched_entities_.push_back(t.subject);
      touched_entities_.push_back(t.object);
    }
  }

  std::span<double> entity_accum(EntityId e) {
    if (cfg_.optimizer != OptimizerKind::kAdagrad) return {};
    return std::span(adagrad_entity_)
        .subspan(std::size_t(e) * model_.row_width(), model_.row_width());
  }

  std::span<double> relation_accum(RelationId r) {
    if (cfg_.optimizer != OptimizerKind::kAdagrad) return {};
    return std::span(adagrad_relation_)
        .subspan(std::size_t(r) * model_.row_width(), model_.row_width());
  }

  void update_row(std::span<double> row, std::span<double> accum,
                  std::span<const double> grad, double step) {
    if (accum.empty()) {  // plain SGD
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += step * grad[i];
      return;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      accum[i] += grad[i] * grad[i];
      row[i] += step * grad[i] / std::sqrt(accum[i] + kAdagradEps);
    }
  }

  void renormalize_batch() {
    std::sort(touched_entities_.begin(), touched_entities_.end());
    touched_entities_.erase(
        std::unique(touched_entities_.begin(), touched_entities_.end()),
        touched_entities_.end());
    for (EntityId e : touched_entities_) model_.renormalize_entity(e);
  }

  EmbeddingModel& model_;
  const TrainConfig& cfg_;
  const TripleSet& positives_;
  std::vector<double> adagrad_entity_;
  std::vector<double> adagrad_relation_;
  std::vector<EntityId> touched_entities_;
};

// Two-parameter logistic regression (Platt scaling) fitted by Newton steps
// with a small ridge term so separable data stays bounded.
Calibration platt_fit(std::span<const double> scores, std::span<const int> labels) {
  constexpr double kRidge = 1e-6;
  double a = 1.0, b = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    double g_a = -kRidge * a, g_b = -kRidge * b;
    double h_aa = kRidge, h_ab = 0.0, h_bb = kRidge;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      double s = scores[i];
      double p = logistic(a * s + b);
      double resid = static_cast<double>(labels[i]) - p;
      g_a += resid * s;
      g_b += resid;
      double w = std::max(p * (1.0 - p), 1e-12);
      h_aa += w * s * s;
      h_ab += w * s;
      h_bb += w;
    }
    double det = h_aa * h_bb - h_ab * h_ab;
    if (det <= 0) break;
    double da = (h_bb * g_a - h_ab * g_b) / det;
    double db = (h_aa * g_b - h_ab * g_a) / det;
    a += da;
    b += db;
    if (std::abs(da) < 1e-10 && std::abs(db) < 1e-10) break;
  }
  if (!std::isfinite(a) || !std::isfinite(b)) return {1.0, 0.0};
  return {a, b};
}

void calibrate(EmbeddingModel& model, std::span<const Triple> held_out,
               const TripleSet& all_positives, Rng& rng) {
  constexpr std::uint32_t kNegativesPerPositive = 5;
  std::vector<double> scores;
  std::vector<int> labels;
  auto known = [&all_positives](const Triple& t) { return all_positives.contains(t); };
  for (const Triple& t : held_out) {
    scores.push_back(model.score(t));
    labels.push_back(1);
    for (std::uint32_t n = 0; n < kNegativesPerPositive; ++n) {
      auto neg = sample_corruption(t, model.num_entities(), known, rng);
      if (!neg) continue;
      scores.push_back(model.score(*neg));
      labels.push_back(0);
    }
  }
  bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
  bool has_neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
  if (!has_pos || !has_neg) return;  // degenerate; keep (1, 0)
  model.calibration() = platt_fit(scores, labels);
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs == 0) throw Error("epochs must be >= 1");
  if (batch_size == 0) throw Error("batch size must be >= 1");
  if (learning_rate <= 0) throw Error("learning rate must be positive");
  if (margin <= 0 && loss == LossKind::kPairwise)
    throw Error("pairwise margin must be positive");
  if (negatives_per_positive == 0) throw Error("negatives per positive must be >= 1");
  if (calibration_split < 0 || calibration_split >= 1)
    throw Error("calibration split must be in [0, 1)");
  if (threads == 0) throw Error("threads must be >= 1");
}

std::vector<Triple> corrupt(const Triple& t, const KnowledgeGraph& g,
                            std::uint32_t k, Rng& rng) {
  if (k == 0) throw Error("corrupt requires k >= 1");
  if (g.num_entities() < 2)
    throw Error("cannot corrupt: graph has fewer than two entities");
  auto known = [&g](const Triple& candidate) { return g.contains(candidate); };
  std::vector<Triple> out;
  out.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    auto neg = sample_corruption(t, g.num_entities(), known, rng);
    if (!neg)
      throw Error("no corruption of the triple exists outside the graph "
                  "(retry budget exhausted)");
    out.push_back(*neg);
  }
  return out;
}

namespace {

// Shared tail of fit()/fit_more(): hold out the calibration slice, train on
// the rest, then Platt-scale on the held-out positives.
void train_and_calibrate(EmbeddingModel& model, std::span<const Triple> positives,
                         const TrainConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Triple> shuffled(positives.begin(), positives.end());
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  auto n_cal = static_cast<std::size_t>(
      cfg.calibration_split * static_cast<double>(shuffled.size()));
  if (n_cal + 1 > shuffled.size()) n_cal = shuffled.size() - 1;
  std::span<const Triple> held_out(shuffled.data(), n_cal);
  std::span<const Triple> train(shuffled.data() + n_cal, shuffled.size() - n_cal);

  TripleSet positive_set(positives.begin(), positives.end());
  Trainer(model, cfg, positive_set).run(train, rng, cfg.epochs);
  if (!held_out.empty()) calibrate(model, held_out, positive_set, rng);
}

}  // namespace

EmbeddingModel fit(std::span<const Triple> positives, const KnowledgeGraph& vocab,
                   ModelKind kind, std::uint32_t dim, const TrainConfig& cfg) {
  cfg.validate();
  if (positives.empty()) throw Error("fit requires a nonempty triple set");
  EmbeddingModel model = EmbeddingModel::random_init(
      kind, dim, vocab.num_entities(), vocab.num_relations(), cfg.seed);
  train_and_calibrate(model, positives, cfg);
  return model;
}

void fit_more(EmbeddingModel& model, std::span<const Triple> positives,
              const KnowledgeGraph& vocab, const TrainConfig& cfg) {
  cfg.validate();
  if (positives.empty()) throw Error("fit_more requires a nonempty triple set");
  if (model.num_entities() < vocab.num_entities() ||
      model.num_relations() < vocab.num_relations())
    throw Error("model tables smaller than the vocabulary; call grow() first");
  train_and_calibrate(model, positives, cfg);
}

std::vector<ScoredTriple> predict(std::span<const Triple> candidates,
                                  const EmbeddingModel& model) {
  std::vector<ScoredTriple> out;
  out.reserve(candidates.size());
  for (const Triple& t : candidates) {
    double s = model.score(t);
    out.push_back({t, s, model.calibration().probability(s), Provenance::kKge});
  }
  return out;
}

std::vector<ScoredTriple> accept(std::span<const ScoredTriple> scored,
                                 double threshold) {
  std::vector<ScoredTriple> out;
  for (const ScoredTriple& st : scored)
    if (st.probability > threshold) out.push_back(st);
  return out;
}

}  // namespace kgloop
