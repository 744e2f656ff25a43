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

#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace kgloop::oracles {
namespace {

using Bindings = std::map<std::string, std::string>;

const std::string& term_of(const StrTriple& fact, int pos) { return fact[pos]; }

bool match_atom(const Atom& atom, const StrTriple& fact, Bindings& bindings) {
  for (int pos = 0; pos < 3; ++pos) {
    const Term& term = atom[pos];
    const std::string& value = term_of(fact, pos);
    if (!term.is_variable()) {
      if (term.text != value) return false;
    } else if (auto it = bindings.find(term.text); it != bindings.end()) {
      if (it->second != value) return false;
    } else {
      bindings[term.text] = value;
    }
  }
  return true;
}

void match_body(const HornRule& rule, const StrTripleSet& facts, std::size_t index,
                const Bindings& bindings, StrTripleSet& derived) {
  if (index == rule.body.size()) {
    StrTriple head;
    for (int pos = 0; pos < 3; ++pos) {
      const Term& term = rule.head[pos];
      head[pos] = term.is_variable() ? bindings.at(term.text) : term.text;
    }
    derived.insert(head);
    return;
  }
  for (const StrTriple& fact : facts) {
    Bindings extended = bindings;
    if (match_atom(rule.body[index], fact, extended))
      match_body(rule, facts, index + 1, extended, derived);
  }
}

}  // namespace

StrTripleSet to_string_triples(const KnowledgeGraph& g) {
  StrTripleSet out;
  for (const Triple& t : g.triples()) {
    auto [s, r, o] = g.decode(t);
    out.insert({std::string(s), std::string(r), std::string(o)});
  }
  return out;
}

StrTripleSet naive_closure(StrTripleSet facts, const std::vector<HornRule>& rules) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const HornRule& rule : rules) {
      StrTripleSet derived;
      match_body(rule, facts, 0, {}, derived);
      for (const StrTriple& fact : derived) {
        if (facts.insert(fact).second) changed = true;
      }
    }
  }
  return facts;
}

double clustering_coefficient(const KnowledgeGraph& g, EntityId e) {
  auto connected = [&g](EntityId a, EntityId b) {
    for (const Triple& t : g.triples()) {
      if (t.subject == a && t.object == b) return true;
      if (t.subject == b && t.object == a) return true;
    }
    return false;
  };
  std::vector<EntityId> nbrs;
  for (EntityId other = 0; other < g.num_entities(); ++other)
    if (other != e && connected(e, other)) nbrs.push_back(other);
  if (nbrs.size() <= 1) return 0.0;

  std::size_t pairs = 0, linked = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      ++pairs;
      if (connected(nbrs[i], nbrs[j])) ++linked;
    }
  }
  return static_cast<double>(linked) / static_cast<double>(pairs);
}

std::uint32_t filtered_rank(const EmbeddingModel& model, const Triple& t,
                            const TripleSet& known, bool subject_side,
                            std::size_t num_candidates) {
  std::vector<double> competitor_scores;
  for (EntityId e = 0; e < num_candidates; ++e) {
    Triple candidate = t;
    (subject_side ? candidate.subject : candidate.object) = e;
    if (candidate == t) continue;
    if (known.contains(candidate)) continue;
    competitor_scores.push_back(model.score(candidate));
  }
  std::sort(competitor_scores.begin(), competitor_scores.end(),
            std::greater<double>());
  double target = model.score(t);
  std::uint32_t rank = 1;
  for (double s : competitor_scores) {
    if (s >= target) ++rank;  // pessimistic: ties beat the target
  }
  return rank;
}

NumericGradient numeric_gradient(EmbeddingModel& model, const Triple& t, double h) {
  NumericGradient out;
  auto differentiate = [&](std::span<double> row, std::vector<double>& grad) {
    grad.resize(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      double saved = row[i];
      row[i] = saved + h;
      double plus = model.score(t);
      row[i] = saved - h;
      double minus = model.score(t);
      row[i] = saved;
      grad[i] = (plus - minus) / (2.0 * h);
    }
  };
  differentiate(model.entity(t.subject), out.subject);
  differentiate(model.relation(t.relation), out.relation);
  differentiate(model.entity(t.object), out.object);
  return out;
}

double auc(const std::vector<double>& positives, const std::vector<double>& negatives) {
  double wins = 0.0;
  for (double p : positives) {
    for (double n : negatives) {
      if (p > n)
        wins += 1.0;
      else if (p == n)
        wins += 0.5;
    }
  }
  return wins / (static_cast<double>(positives.size()) *
                 static_cast<double>(negatives.size()));
}

double hole_score_by_definition(const EmbeddingModel& model, const Triple& t) {
  auto s = model.entity(t.subject);
  auto o = model.entity(t.object);
  auto r = model.relation(t.relation);
  std::size_t d = model.dim();
  double total = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double corr_k = 0.0;
    for (std::size_t m = 0; m < d; ++m) corr_k += s[m] * o[(m + k) % d];
    total += r[k] * corr_k;
  }
  return total;
}

}  // namespace kgloop::oracles
