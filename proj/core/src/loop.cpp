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

#include "kgloop/loop.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>

#include "kgloop/error.hpp"
#include "kgloop/io.hpp"

namespace kgloop {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Schema triples encoded against the working graph's dictionaries, for
// candidate exclusion. Triples whose vocabulary is absent cannot be generated
// in the first place, so they are simply skipped.
TripleSet encodable_schema(const KnowledgeGraph& working, const Ontology& ontology) {
  TripleSet out;
  for (const Triple& t : ontology.schema().triples()) {
    auto [s, r, o] = ontology.schema().decode(t);
    if (auto enc = working.encode(s, r, o)) out.insert(*enc);
  }
  return out;
}

class LoopRunner {
 public:
  LoopRunner(const KnowledgeGraph& g, const Ontology& ontology, const RuleSet& rules,
             const LoopConfig& cfg, const TripleSet* exclude)
      : working_(g), ontology_(ontology), rules_(rules), cfg_(cfg), exclude_(exclude) {}

  LoopResult run() {
    report_.initial_size = working_.num_triples();

    for (std::uint32_t iter = 1; iter <= cfg_.max_iterations; ++iter) {
      IterationStats stats;
      std::vector<ScoredTriple> accepted;
      std::vector<ScoredTriple> inferred;

      if (cfg_.order == LoopOrder::kKgeFirst) {
        run_kge_phase(iter, stats, accepted);
        run_reasoner_phase(stats, accepted, inferred);
      } else {
        run_reasoner_phase(stats, {}, inferred);
        run_kge_phase(iter, stats, accepted, inferred);
      }

      std::size_t added = commit(accepted, inferred);
      stats.kg_size = working_.num_triples();
      report_.iterations.push_back(stats);
      write_checkpoint(iter, accepted, inferred);

      if (added == 0) {
        report_.termination = LoopReport::Termination::kFixpoint;
        break;
      }
      if (iter == cfg_.max_iterations)
        report_.termination = LoopReport::Termination::kMaxIterations;
    }

    report_.final_size = working_.num_triples();
    LoopResult result{std::move(working_), std::move(*model_), std::move(report_),
                      std::move(additions_)};
    return result;
  }

 private:
  // Fit (or refit) on the current triples plus pending reasoner output, then
  // generate candidates, predict, and keep everything above the threshold.
  void run_kge_phase(std::uint32_t iter, IterationStats& stats,
                     std::vector<ScoredTriple>& accepted,
                     const std::vector<ScoredTriple>& pending = {}) {
    KnowledgeGraph train_graph = working_;
    for (const ScoredTriple& st : pending) train_graph.add_triple(st.triple);
    if (cfg_.schema_in_training) {
      for (const Triple& t : ontology_.schema().triples()) {
        auto [s, r, o] = ontology_.schema().decode(t);
        train_graph.add_triple(s, r, o);
      }
    }

    auto t0 = std::chrono::steady_clock::now();
    if (!model_ || cfg_.retrain == RetrainPolicy::kFullRetrain) {
      model_ = fit(train_graph.triples(), train_graph, cfg_.model_kind, cfg_.dim,
                   cfg_.train);
    } else {
      model_->grow(train_graph.num_entities(), train_graph.num_relations(),
                   cfg_.train.seed ^ (0x9e3779b97f4a7c15ULL + iter));
      TrainConfig warm = cfg_.train;
      warm.epochs = cfg_.warm_start_epochs > 0
                        ? cfg_.warm_start_epochs
                        : std::max<std::uint32_t>(1, cfg_.train.epochs / 4);
      warm.seed = cfg_.train.seed + iter;
      fit_more(*model_, train_graph.triples(), train_graph, warm);
    }
    stats.fit_seconds += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    GeneratorConfig gen = cfg_.generator;
    gen.budget = cfg_.candidate_budget;
    gen.seed = cfg_.generator.seed + iter;  // fresh candidates every round
    TripleSet excluded = encodable_schema(working_, ontology_);
    for (const ScoredTriple& st : pending) excluded.insert(st.triple);
    if (exclude_) excluded.insert(exclude_->begin(), exclude_->end());
    std::vector<Triple> candidates =
        generate(working_, &ontology_, gen, &excluded);
    stats.generate_seconds += seconds_since(t0);
    stats.candidates = candidates.size();

    t0 = std::chrono::steady_clock::now();
    std::vector<ScoredTriple> scored = predict(candidates, *model_);
    accepted = accept(scored, cfg_.threshold);
    stats.predict_seconds += seconds_since(t0);
    stats.accepted = accepted.size();
  }

  // Forward-chain over the current triples plus pending accepted ones; the
  // fresh derivations come back translated into working-graph terms.
  void run_reasoner_phase(IterationStats& stats,
                          const std::vector<ScoredTriple>& pending,
                          std::vector<ScoredTriple>& inferred) {
    auto t0 = std::chrono::steady_clock::now();
    KnowledgeGraph reason_graph = working_;
    for (const ScoredTriple& st : pending) reason_graph.add_triple(st.triple);

    InferenceOptions opts;
    opts.threads = cfg_.reasoner_threads;
    InferenceResult inf = infer(reason_graph, ontology_, rules_, opts);
    for (const Triple& t : inf.fresh) {
      auto [s, r, o] = inf.graph.decode(t);
      EntityId si = working_.add_entity(s);
      RelationId ri = working_.add_relation(r);
      EntityId oi = working_.add_entity(o);
      inferred.push_back({Triple{si, ri, oi}, 0.0, 0.0, Provenance::kReasoner});
    }
    stats.infer_seconds += seconds_since(t0);
    stats.inferred = inferred.size();
  }

  std::size_t commit(const std::vector<ScoredTriple>& accepted,
                     const std::vector<ScoredTriple>& inferred) {
    std::size_t added = 0;
    for (const auto* batch : {&accepted, &inferred}) {
      for (const ScoredTriple& st : *batch) {
        if (working_.add_triple(st.triple)) {
          additions_.push_back(st);
          ++added;
        }
      }
    }
    return added;
  }

  void write_checkpoint(std::uint32_t iter, const std::vector<ScoredTriple>& accepted,
                        const std::vector<ScoredTriple>& inferred) {
    if (cfg_.checkpoint_dir.empty()) return;
    char name[32];
    std::snprintf(name, sizeof name, "iter_%03u", iter);
    std::filesystem::path dir = cfg_.checkpoint_dir / name;
    std::filesystem::create_directories(dir);
    model_->save(dir / "model.ckpt");
    std::vector<ScoredTriple> delta = accepted;
    delta.insert(delta.end(), inferred.begin(), inferred.end());
    save_scored(working_, delta, dir / "delta.tsv");
  }

  KnowledgeGraph working_;
  const Ontology& ontology_;
  const RuleSet& rules_;
  const LoopConfig& cfg_;
  const TripleSet* exclude_;
  std::optional<EmbeddingModel> model_;
  std::vector<ScoredTriple> additions_;
  LoopReport report_;
};

}  // namespace

void LoopConfig::validate() const {
  if (max_iterations == 0) throw Error("max iterations must be >= 1");
  if (threshold < 0.0 || threshold > 1.0)
    throw Error("acceptance threshold must be in [0, 1]");
  if (dim == 0) throw Error("embedding dimension must be positive");
  train.validate();
  generator.validate();
}

LoopResult run_loop(const KnowledgeGraph& g, const Ontology& ontology,
                    const RuleSet& rules, const LoopConfig& cfg,
                    const TripleSet* exclude) {
  cfg.validate();
  if (g.num_triples() == 0) throw Error("run_loop requires a nonempty graph");
  return LoopRunner(g, ontology, rules, cfg, exclude).run();
}

std::string LoopReport::to_json() const {
  std::ostringstream out;
  out << "{\n  \"termination\": \""
      << (termination == Termination::kFixpoint ? "fixpoint" : "max-iterations")
      << "\",\n  \"initial_size\": " << initial_size
      << ",\n  \"final_size\": " << final_size << ",\n  \"iterations\": [";
  char buf[256];
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    const IterationStats& it = iterations[i];
    std::snprintf(buf, sizeof buf,
                  "\n    {\"iteration\": %zu, \"candidates\": %zu, "
                  "\"accepted\": %zu, \"inferred\": %zu, \"kg_size\": %zu, "
                  "\"fit_s\": %.3f, \"generate_s\": %.3f, \"predict_s\": %.3f, "
                  "\"infer_s\": %.3f}",
                  i + 1, it.candidates, it.accepted, it.inferred, it.kg_size,
                  it.fit_seconds, it.generate_seconds, it.predict_seconds,
                  it.infer_seconds);
    out << buf << (i + 1 < iterations.size() ? "," : "");
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string LoopReport::table() const {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%4s %10s %9s %9s %10s %8s %8s\n", "iter",
                "candidates", "accepted", "inferred", "kg_size", "fit_s",
                "infer_s");
  out << buf;
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    const IterationStats& it = iterations[i];
    std::snprintf(buf, sizeof buf, "%4zu %10zu %9zu %9zu %10zu %8.2f %8.2f\n",
                  i + 1, it.candidates, it.accepted, it.inferred, it.kg_size,
                  it.fit_seconds, it.infer_seconds);
    out << buf;
  }
  out << "termination: "
      << (termination == Termination::kFixpoint ? "fixpoint" : "max-iterations")
      << "\n";
  return out.str();
}

}  // namespace kgloop
