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

#include "kgloop/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

std::string format_double(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

Split make_split(const KnowledgeGraph& g, std::array<double, 3> ratios,
                 std::uint64_t seed) {
  double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("split ratios must sum to 1, got " + format_double(sum));
  if (ratios[0] < 0 || ratios[1] < 0 || ratios[2] < 0)
    throw Error("split ratios must be non-negative");
  if (g.num_triples() == 0) throw Error("cannot split an empty graph");

  const auto& triples = g.triples();
  std::vector<std::uint32_t> order(triples.size());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  // Everything starts in train; a triple may move out only while each of its
  // entities and its relation stays covered by at least one train triple.
  std::vector<std::uint32_t> entity_count(g.num_entities(), 0);
  std::vector<std::uint32_t> relation_count(g.num_relations(), 0);
  for (const Triple& t : triples) {
    ++entity_count[t.subject];
    ++entity_count[t.object];
    ++relation_count[t.relation];
  }

  auto movable = [&](const Triple& t) {
    return entity_count[t.subject] >= 2 && entity_count[t.object] >= 2 &&
           relation_count[t.relation] >= 2;
  };
  auto take = [&](const Triple& t) {
    --entity_count[t.subject];
    --entity_count[t.object];
    --relation_count[t.relation];
  };

  auto n = static_cast<double>(triples.size());
  auto n_valid = static_cast<std::size_t>(ratios[1] * n);
  auto n_test = static_cast<std::size_t>(ratios[2] * n);

  Split split;
  split.seed = seed;
  std::vector<bool> moved(triples.size(), false);
  for (std::uint32_t idx : order) {
    if (split.test.size() >= n_test) break;
    const Triple& t = triples[idx];
    if (!movable(t)) continue;
    take(t);
    split.test.push_back(t);
    moved[idx] = true;
  }
  for (std::uint32_t idx : order) {
    if (split.valid.size() >= n_valid) break;
    if (moved[idx]) continue;
    const Triple& t = triples[idx];
    if (!movable(t)) continue;
    take(t);
    split.valid.push_back(t);
    moved[idx] = true;
  }
  for (std::uint32_t idx = 0; idx < triples.size(); ++idx)
    if (!moved[idx]) split.train.push_back(triples[idx]);
  return split;
}

std::uint32_t filtered_rank(const EmbeddingModel& model, const Triple& t,
                            const TripleSet& known, CorruptionSide side,
                            std::size_t num_candidates) {
  double target = model.score(t);
  std::uint32_t rank = 1;
  Triple candidate = t;
  for (EntityId e = 0; e < num_candidates; ++e) {
    if (side == CorruptionSide::kSubject) {
      if (e == t.subject) continue;
      candidate.subject = e;
    } else {
      if (e == t.object) continue;
      candidate.object = e;
    }
    if (known.contains(candidate)) continue;  // filtered protocol
    if (model.score(candidate) >= target) ++rank;  // ties count against t
  }
  return rank;
}

EvalResult evaluate(const EmbeddingModel& model, const Split& split,
                    const KnowledgeGraph& vocab, const EvalOptions& options) {
  if (split.test.empty()) throw Error("evaluate requires a nonempty test set");

  TripleSet known;
  known.reserve(split.train.size() + split.valid.size() + split.test.size());
  known.insert(split.train.begin(), split.train.end());
  known.insert(split.valid.begin(), split.valid.end());
  known.insert(split.test.begin(), split.test.end());
  if (options.extra_filter)
    known.insert(options.extra_filter->begin(), options.extra_filter->end());

  std::size_t num_candidates =
      options.num_candidates > 0 ? options.num_candidates : vocab.num_entities();
  if (num_candidates > model.num_entities())
    throw Error("candidate set exceeds the model's entity table");

  // Parallel fan-out into preallocated slots keeps aggregation deterministic.
  std::vector<std::array<std::uint32_t, 2>> ranks(split.test.size());
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Triple& t = split.test[i];
      ranks[i][0] =
          filtered_rank(model, t, known, CorruptionSide::kSubject, num_candidates);
      ranks[i][1] =
          filtered_rank(model, t, known, CorruptionSide::kObject, num_candidates);
    }
  };
  if (options.threads > 1) {
    std::vector<std::thread> pool;
    std::size_t chunk = (split.test.size() + options.threads - 1) / options.threads;
    for (std::uint32_t w = 0; w < options.threads; ++w) {
      std::size_t lo = w * chunk;
      std::size_t hi = std::min(lo + chunk, split.test.size());
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  } else {
    worker(0, split.test.size());
  }

  EvalResult result;
  result.evaluated = split.test.size();
  struct Bucket {
    double mrr = 0;
    double hits1 = 0, hits3 = 0, hits10 = 0;
    std::size_t n = 0;
  };
  Bucket total;
  std::map<std::string, Bucket> by_relation;  // ordered for stable reports
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    Bucket& rel = by_relation[std::string(
        vocab.relations().token(split.test[i].relation))];
    for (std::uint32_t r : ranks[i]) {
      double inv = 1.0 / static_cast<double>(r);
      for (Bucket* b : {&total, &rel}) {
        b->mrr += inv;
        b->hits1 += r <= 1;
        b->hits3 += r <= 3;
        b->hits10 += r <= 10;
        b->n += 1;
      }
    }
  }
  auto finish = [](const Bucket& b) {
    auto n = static_cast<double>(b.n);
    return Bucket{b.mrr / n, b.hits1 / n, b.hits3 / n, b.hits10 / n, b.n};
  };
  Bucket t = finish(total);
  result.mrr = t.mrr;
  result.hits1 = t.hits1;
  result.hits3 = t.hits3;
  result.hits10 = t.hits10;
  for (const auto& [name, bucket] : by_relation) {
    Bucket f = finish(bucket);
    result.per_relation.push_back({name, f.mrr, f.hits10, bucket.n / 2});
  }
  return result;
}

std::string EvalResult::to_json(std::string_view method_name) const {
  std::ostringstream out;
  out << "{\n  \"method\": \"" << method_name << "\",\n"
      << "  \"protocol\": {\"sides\": \"both\", \"filtered\": true, "
         "\"ties\": \"pessimistic\"},\n"
      << "  \"mrr\": " << format_double(mrr) << ",\n"
      << "  \"hits1\": " << format_double(hits1) << ",\n"
      << "  \"hits3\": " << format_double(hits3) << ",\n"
      << "  \"hits10\": " << format_double(hits10) << ",\n"
      << "  \"evaluated\": " << evaluated << ",\n"
      << "  \"per_relation\": [";
  for (std::size_t i = 0; i < per_relation.size(); ++i) {
    const auto& pr = per_relation[i];
    out << (i == 0 ? "\n" : ",\n") << "    {\"relation\": \"" << pr.relation
        << "\", \"mrr\": " << format_double(pr.mrr)
        << ", \"hits10\": " << format_double(pr.hits10)
        << ", \"count\": " << pr.count << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

ComparisonReport compare(const EvalResult& baseline, const EvalResult& improved) {
  auto entry = [](std::string metric, double base, double improved_value) {
    MetricComparison c;
    c.metric = std::move(metric);
    c.baseline = base;
    c.improved = improved_value;
    c.delta = improved_value - base;
    c.ratio = base != 0.0 ? improved_value / base
                          : std::numeric_limits<double>::infinity();
    return c;
  };
  ComparisonReport report;
  report.metrics.push_back(entry("MRR", baseline.mrr, improved.mrr));
  report.metrics.push_back(entry("Hits@1", baseline.hits1, improved.hits1));
  report.metrics.push_back(entry("Hits@3", baseline.hits3, improved.hits3));
  report.metrics.push_back(entry("Hits@10", baseline.hits10, improved.hits10));
  return report;
}

std::string ComparisonReport::table(std::string_view baseline_name,
                                    std::string_view improved_name) const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %12.*s %12.*s %10s %8s\n", "Metric",
                static_cast<int>(baseline_name.size()), baseline_name.data(),
                static_cast<int>(improved_name.size()), improved_name.data(),
                "delta", "ratio");
  out << line;
  for (const MetricComparison& m : metrics) {
    std::snprintf(line, sizeof line, "%-10s %12.4f %12.4f %+10.4f %8.2f\n",
                  m.metric.c_str(), m.baseline, m.improved, m.delta, m.ratio);
    out << line;
  }
  return out.str();
}

std::string ComparisonReport::to_json(std::string_view baseline_name,
                                      std::string_view improved_name) const {
  std::ostringstream out;
  out << "{\n  \"baseline\": \"" << baseline_name << "\",\n  \"improved\": \""
      << improved_name << "\",\n  \"metrics\": [";
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto& m = metrics[i];
    out << (i == 0 ? "\n" : ",\n") << "    {\"metric\": \"" << m.metric
        << "\", \"baseline\": " << format_double(m.baseline)
        << ", \"improved\": " << format_double(m.improved)
        << ", \"delta\": " << format_double(m.delta) << ", \"ratio\": "
        << (std::isinf(m.ratio) ? std::string("null") : format_double(m.ratio))
        << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string metrics_table(std::span<const std::pair<std::string, EvalResult>> rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %8s %8s %8s %8s\n", "Method", "MRR",
                "Hits@1", "Hits@3", "Hits@10");
  out << line;
  for (const auto& [name, r] : rows) {
    std::snprintf(line, sizeof line, "%-14s %8.4f %8.4f %8.4f %8.4f\n",
                  name.c_str(), r.mrr, r.hits1, r.hits3, r.hits10);
    out << line;
  }
  return out.str();
}

}  // namespace kgloop
