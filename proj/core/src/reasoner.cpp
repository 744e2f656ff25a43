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

#include "kgloop/reasoner.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "kgloop/dictionary.hpp"
#include "kgloop/error.hpp"

namespace kgloop {
namespace {

// The reasoner works in a unified term space so a variable bound in an
// entity position can match the same token in a relation position (rdfs2/
// rdfs7 join across positions).
using TermId = std::uint32_t;
using Fact = std::array<TermId, 3>;

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    return static_cast<std::size_t>(
        mix(mix((std::uint64_t(f[0]) << 32) | f[2]) ^ f[1]));
  }
};

using FactSet = std::unordered_set<Fact, FactHash>;

class FactStore {
 public:
  TermId term(std::string_view token) { return terms_.insert(token); }
  const std::string& token(TermId id) const { return terms_.token(id); }

  bool contains(const Fact& f) const { return set_.contains(f); }

  bool add(const Fact& f) {
    if (!set_.insert(f).second) return false;
    auto idx = static_cast<std::uint32_t>(facts_.size());
    facts_.push_back(f);
    for (int pos = 0; pos < 3; ++pos) postings_[pos][f[pos]].push_back(idx);
    return true;
  }

  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }

  const std::vector<std::uint32_t>* posting(int pos, TermId value) const {
    auto it = postings_[pos].find(value);
    return it == postings_[pos].end() ? nullptr : &it->second;
  }

 private:
  Dictionary terms_;
  std::vector<Fact> facts_;
  FactSet set_;
  std::array<std::unordered_map<TermId, std::vector<std::uint32_t>>, 3> postings_;
};

// Rule with terms resolved against the store's term space; variables become
// dense indexes in first-occurrence order.
struct CompiledAtom {
  std::array<bool, 3> is_var{};
  std::array<TermId, 3> value{};  // constant TermId or variable index
};

struct CompiledRule {
  std::string name;
  std::vector<CompiledAtom> body;
  CompiledAtom head;
  std::size_t num_vars = 0;
};

CompiledAtom compile_atom(const Atom& atom, FactStore& store,
                          std::unordered_map<std::string, TermId>& vars) {
  CompiledAtom out;
  for (int pos = 0; pos < 3; ++pos) {
    const Term& t = atom[pos];
    if (t.is_variable()) {
      auto [it, inserted] =
          vars.try_emplace(t.text, static_cast<TermId>(vars.size()));
      (void)inserted;
      out.is_var[pos] = true;
      out.value[pos] = it->second;
    } else {
      out.is_var[pos] = false;
      out.value[pos] = store.term(t.text);
    }
  }
  return out;
}

CompiledRule compile_rule(const HornRule& rule, FactStore& store) {
  if (auto unsafe = rule.unsafe_head_variable())
    throw Error("unsafe rule " + rule.name + ": head variable ?" + *unsafe +
                " does not occur in the body");
  CompiledRule out;
  out.name = rule.name;
  std::unordered_map<std::string, TermId> vars;
  for (const Atom& atom : rule.body) out.body.push_back(compile_atom(atom, store, vars));
  out.head = compile_atom(rule.head, store, vars);
  out.num_vars = vars.size();
  return out;
}

struct Bindings {
  std::vector<TermId> value;
  std::vector<bool> bound;
  explicit Bindings(std::size_t n) : value(n, 0), bound(n, false) {}
};

// Tries to unify `fact` with `atom` under the current bindings; records newly
// bound variables in `trail` so the caller can backtrack.
bool unify(const CompiledAtom& atom, const Fact& fact, Bindings& b,
           std::vector<TermId>& trail) {
  for (int pos = 0; pos < 3; ++pos) {
    TermId v = atom.value[pos];
    if (!atom.is_var[pos]) {
      if (fact[pos] != v) return false;
    } else if (b.bound[v]) {
      if (b.value[v] != fact[pos]) return false;
    } else {
      b.bound[v] = true;
      b.value[v] = fact[pos];
      trail.push_back(v);
    }
  }
  return true;
}

void undo(Bindings& b, std::vector<TermId>& trail, std::size_t mark) {
  while (trail.size() > mark) {
    b.bound[trail.back()] = false;
    trail.pop_back();
  }
}

class RuleEvaluator {
 public:
  RuleEvaluator(const FactStore& store, const CompiledRule& rule)
      : store_(store), rule_(rule) {}

  // All head instantiations where at least one body atom matches a fact in
  // [delta_begin, store.size()). Output is deduplicated against the store and
  // within itself.
  std::vector<Fact> evaluate(std::size_t delta_begin) {
    std::vector<Fact> out;
    FactSet emitted;
    Bindings bindings(rule_.num_vars);
    std::vector<TermId> trail;

    const auto& facts = store_.facts();
    for (std::size_t dpos = 0; dpos < rule_.body.size(); ++dpos) {
      for (std::size_t i = delta_begin; i < facts.size(); ++i) {
        std::size_t mark = trail.size();
        if (!unify(rule_.body[dpos], facts[i], bindings, trail)) {
          undo(bindings, trail, mark);
          continue;
        }
        std::vector<bool> done(rule_.body.size(), false);
        done[dpos] = true;
        join_rest(done, bindings, trail, out, emitted);
        undo(bindings, trail, mark);
      }
    }
    return out;
  }

 private:
  // Greedy join order: among unprocessed atoms, take the one with the most
  // bound positions (constants count), ties by original order.
  int pick_next(const std::vector<bool>& done, const Bindings& b) const {
    int best = -1, best_bound = -1;
    for (std::size_t i = 0; i < rule_.body.size(); ++i) {
      if (done[i]) continue;
      int bound_count = 0;
      for (int pos = 0; pos < 3; ++pos) {
        const CompiledAtom& atom = rule_.body[i];
        if (!atom.is_var[pos] || b.bound[atom.value[pos]]) ++bound_count;
      }
      if (bound_count > best_bound) {
        best_bound = bound_count;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  void join_rest(std::vector<bool>& done, Bindings& b, std::vector<TermId>& trail,
                 std::vector<Fact>& out, FactSet& emitted) {
    int next = pick_next(done, b);
    if (next < 0) {
      emit_head(b, out, emitted);
      return;
    }
    const CompiledAtom& atom = rule_.body[next];
    done[next] = true;

    // Smallest posting list among bound positions, else full scan.
    const std::vector<std::uint32_t>* candidates = nullptr;
    bool empty_posting = false;
    for (int pos = 0; pos < 3; ++pos) {
      TermId v = atom.value[pos];
      if (atom.is_var[pos] && !b.bound[v]) continue;
      TermId bound_value = atom.is_var[pos] ? b.value[v] : v;
      const auto* posting = store_.posting(pos, bound_value);
      if (posting == nullptr) {
        empty_posting = true;
        break;
      }
      if (candidates == nullptr || posting->size() < candidates->size())
        candidates = posting;
    }

    if (!empty_posting) {
      const auto& facts = store_.facts();
      if (candidates != nullptr) {
        for (std::uint32_t idx : *candidates) {
          std::size_t mark = trail.size();
          if (unify(atom, facts[idx], b, trail)) join_rest(done, b, trail, out, emitted);
          undo(b, trail, mark);
        }
      } else {
        for (const Fact& fact : facts) {
          std::size_t mark = trail.size();
          if (unify(atom, fact, b, trail)) join_rest(done, b, trail, out, emitted);
          undo(b, trail, mark);
        }
      }
    }
    done[next] = false;
  }

  void emit_head(const Bindings& b, std::vector<Fact>& out, FactSet& emitted) {
    Fact fact;
    for (int pos = 0; pos < 3; ++pos) {
      const CompiledAtom& head = rule_.head;
      fact[pos] = head.is_var[pos] ? b.value[head.value[pos]] : head.value[pos];
    }
    if (store_.contains(fact)) return;
    if (!emitted.insert(fact).second) return;
    out.push_back(fact);
  }

  const FactStore& store_;
  const CompiledRule& rule_;
};

// Reachability closure over one relation: emits (u, p, v) for every pair
// connected by a path of length >= 1. Equals the generic join fixpoint on the
// transitive rule, in one pass.
std::vector<Fact> transitive_closure(const FactStore& store, TermId relation) {
  const auto* posting = store.posting(1, relation);
  if (posting == nullptr) return {};

  const auto& facts = store.facts();
  std::unordered_map<TermId, std::vector<TermId>> adjacency;
  std::vector<TermId> sources;  // insertion order keeps output deterministic
  std::unordered_set<TermId> seen_source;
  for (std::uint32_t idx : *posting) {
    const Fact& f = facts[idx];
    adjacency[f[0]].push_back(f[2]);
    if (seen_source.insert(f[0]).second) sources.push_back(f[0]);
  }

  std::vector<Fact> out;
  std::unordered_set<TermId> reached;
  std::deque<TermId> queue;
  for (TermId src : sources) {
    reached.clear();
    queue.clear();
    // Start from src's successors: paths of length >= 1 only.
    for (TermId next : adjacency[src]) {
      if (reached.insert(next).second) queue.push_back(next);
    }
    while (!queue.empty()) {
      TermId node = queue.front();
      queue.pop_front();
      Fact fact{src, relation, node};
      if (!store.contains(fact)) out.push_back(fact);
      auto it = adjacency.find(node);
      if (it == adjacency.end()) continue;
      for (TermId next : it->second)
        if (reached.insert(next).second) queue.push_back(next);
    }
  }
  // BFS order depends on set insertion; normalize for reproducible output.
  std::sort(out.begin(), out.end());
  return out;
}

bool delta_mentions_relation(const FactStore& store, std::size_t delta_begin,
                             TermId relation) {
  const auto& facts = store.facts();
  for (std::size_t i = delta_begin; i < facts.size(); ++i)
    if (facts[i][1] == relation) return true;
  return false;
}

}  // namespace

ExecutionPlan simplify_rules(const RuleSet& rules) {
  ExecutionPlan plan;
  for (const HornRule& rule : rules.rules) {
    bool tagged = false;
    // Match (?a, p, ?b), (?b, p, ?c) -> (?a, p, ?c) with constant p and
    // distinct variables, in either body order.
    if (rule.body.size() == 2 && !rule.head.relation.is_variable() &&
        rule.head.subject.is_variable() && rule.head.object.is_variable() &&
        rule.head.subject.text != rule.head.object.text) {
      const std::string& p = rule.head.relation.text;
      for (int first : {0, 1}) {
        const Atom& a0 = rule.body[first];
        const Atom& a1 = rule.body[1 - first];
        bool relations_match = !a0.relation.is_variable() &&
                               !a1.relation.is_variable() &&
                               a0.relation.text == p && a1.relation.text == p;
        if (!relations_match) continue;
        bool shape = a0.subject.is_variable() && a0.object.is_variable() &&
                     a1.subject.is_variable() && a1.object.is_variable() &&
                     a0.subject.text == rule.head.subject.text &&
                     a1.object.text == rule.head.object.text &&
                     a0.object.text == a1.subject.text &&
                     a0.object.text != a0.subject.text &&
                     a0.object.text != a1.object.text;
        if (shape) {
          plan.transitive.push_back({rule.name, p});
          tagged = true;
          break;
        }
      }
    }
    if (!tagged) plan.general.push_back(rule);
  }
  return plan;
}

InferenceResult infer(const KnowledgeGraph& g, const Ontology& ontology,
                      const RuleSet& rules, const InferenceOptions& options) {
  ExecutionPlan plan;
  if (options.simplify) {
    plan = simplify_rules(rules);
  } else {
    plan.general = rules.rules;
  }

  FactStore store;
  auto load = [&store](const KnowledgeGraph& src) {
    for (const Triple& t : src.triples()) {
      auto [s, r, o] = src.decode(t);
      store.add({store.term(s), store.term(r), store.term(o)});
    }
  };
  load(g);
  load(ontology.schema());

  std::vector<CompiledRule> compiled;
  compiled.reserve(plan.general.size());
  for (const HornRule& rule : plan.general) compiled.push_back(compile_rule(rule, store));
  std::vector<TermId> transitive_relations;
  transitive_relations.reserve(plan.transitive.size());
  for (const auto& t : plan.transitive) transitive_relations.push_back(store.term(t.relation));

  const std::size_t input_size = store.size();
  std::size_t delta_begin = 0;
  std::size_t rounds = 0;

  while (true) {
    ++rounds;
    // Each rule evaluates against the frozen store; buffers merge in rule
    // order, so parallel and sequential runs build the same closure.
    std::vector<std::vector<Fact>> buffers(compiled.size());
    if (options.threads > 1 && compiled.size() > 1) {
      std::vector<std::thread> workers;
      std::size_t stride = options.threads;
      for (std::size_t w = 0; w < std::min<std::size_t>(stride, compiled.size()); ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t i = w; i < compiled.size(); i += stride)
            buffers[i] = RuleEvaluator(store, compiled[i]).evaluate(delta_begin);
        });
      }
      for (auto& t : workers) t.join();
    } else {
      for (std::size_t i = 0; i < compiled.size(); ++i)
        buffers[i] = RuleEvaluator(store, compiled[i]).evaluate(delta_begin);
    }

    std::vector<Fact> round_new;
    FactSet round_set;
    for (const auto& buffer : buffers)
      for (const Fact& f : buffer)
        if (round_set.insert(f).second) round_new.push_back(f);

    for (std::size_t i = 0; i < transitive_relations.size(); ++i) {
      TermId rel = transitive_relations[i];
      if (rounds > 1 && !delta_mentions_relation(store, delta_begin, rel)) continue;
      for (const Fact& f : transitive_closure(store, rel))
        if (round_set.insert(f).second) round_new.push_back(f);
    }

    if (round_new.empty()) break;
    delta_begin = store.size();
    for (const Fact& f : round_new) store.add(f);
  }

  InferenceResult result;
  result.rounds = rounds;
  result.graph = g;
  for (const Triple& t : ontology.schema().triples()) {
    auto [s, r, o] = ontology.schema().decode(t);
    result.graph.add_triple(s, r, o);
  }
  const auto& facts = store.facts();
  for (std::size_t i = input_size; i < facts.size(); ++i) {
    const Fact& f = facts[i];
    result.graph.add_triple(store.token(f[0]), store.token(f[1]), store.token(f[2]));
    result.fresh.push_back(
        *result.graph.encode(store.token(f[0]), store.token(f[1]), store.token(f[2])));
  }
  return result;
}

}  // namespace kgloop
