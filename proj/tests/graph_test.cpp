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

#include <doctest.h>

#include <random>
#include <sstream>

#include "kgloop/error.hpp"
#include "kgloop/graph.hpp"
#include "kgloop/io.hpp"
#include "oracles.hpp"

using namespace kgloop;

namespace {

KnowledgeGraph from_text(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return load_graph(in, "<test>", options);
}

}  // namespace

TEST_CASE("duplicate lines collapse to one triple") {
  auto g = from_text("Plato bornIn Athens\nPlato bornIn Athens\n");
  CHECK(g.num_triples() == 1);
  CHECK(g.num_entities() == 2);
  CHECK(g.num_relations() == 1);
}

TEST_CASE("single line parses into the expected dictionary sizes") {
  auto g = from_text("Greece hasCapital Athens\n");
  CHECK(g.num_triples() == 1);
  CHECK(g.num_entities() == 2);
  CHECK(g.num_relations() == 1);
  CHECK(g.encode("Greece", "hasCapital", "Athens").has_value());
}

TEST_CASE("short line is a parse error naming the line") {
  std::istringstream in("Greece hasCapital Athens\nPlato bornIn\n");
  try {
    load_graph(in, "<test>");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("over-long line is a parse error") {
  CHECK_THROWS_AS(from_text("a b c d\n"), ParseError);
}

TEST_CASE("empty file loads as an empty graph") {
  auto g = from_text("");
  CHECK(g.num_triples() == 0);
  CHECK(g.num_entities() == 0);
  CHECK(g.complement_excluded_size() == 0);
}

TEST_CASE("comments and blank lines are ignored") {
  auto g = from_text("# header\n\n  \nPlato bornIn Athens\n");
  CHECK(g.num_triples() == 1);
}

TEST_CASE("tabs and spaces both separate fields") {
  auto g = from_text("a\tr\tb\nc r d\n");
  CHECK(g.num_triples() == 2);
}

TEST_CASE("ntriples subset with IRIs and bare tokens") {
  LoadOptions opt;
  opt.format = TripleFormat::kNTriples;
  auto g = from_text("<http://x/Plato> <http://x/bornIn> <http://x/Athens> .\n"
                     "Socrates bornIn Athens .\n",
                     opt);
  CHECK(g.num_triples() == 2);
  CHECK(g.entities().contains("http://x/Plato"));
  CHECK(g.entities().contains("Socrates"));

  CHECK_THROWS_AS(from_text("a b c\n", opt), ParseError);   // missing dot
  CHECK_THROWS_AS(from_text("a b \"lit\" .\n", opt), ParseError);
}

TEST_CASE("rdf vocabulary mapping normalizes reserved names") {
  LoadOptions opt;
  opt.map_rdf_vocabulary = true;
  auto g = from_text("Plato rdf:type Philosopher\nPhilosopher rdfs:subClassOf Person\n",
                     opt);
  CHECK(g.relations().contains("type"));
  CHECK(g.relations().contains("subClass"));
  CHECK_FALSE(g.relations().contains("rdf:type"));
}

TEST_CASE("save then load round-trips the string triple set") {
  auto g = from_text("b r a\na r b\na q c\nc r a\n");
  for (auto format : {TripleFormat::kTsv, TripleFormat::kNTriples}) {
    std::ostringstream out;
    save_graph(g, out, format);
    std::istringstream in(out.str());
    auto g2 = load_graph(in, "<round-trip>", {.format = format});
    CHECK(oracles::to_string_triples(g2) == oracles::to_string_triples(g));
  }
}

TEST_CASE("dictionary bijection over every stored token") {
  auto g = from_text("a r b\nb s c\nc r a\n");
  for (std::uint32_t id = 0; id < g.num_entities(); ++id)
    CHECK(g.entities().find(g.entities().token(id)) == id);
  for (std::uint32_t id = 0; id < g.num_relations(); ++id)
    CHECK(g.relations().find(g.relations().token(id)) == id);
}

TEST_CASE("index cardinalities are consistent") {
  auto g = from_text("a r b\nb s c\nc r a\na r c\n");
  std::size_t by_rel = 0, by_sub = 0, by_obj = 0;
  for (RelationId r = 0; r < g.num_relations(); ++r) by_rel += g.by_relation(r).size();
  for (EntityId e = 0; e < g.num_entities(); ++e) {
    by_sub += g.by_subject(e).size();
    by_obj += g.by_object(e).size();
  }
  CHECK(by_rel == g.num_triples());
  CHECK(by_sub == g.num_triples());
  CHECK(by_obj == g.num_triples());
}

TEST_CASE("add_triple rejects ids outside the dictionaries") {
  KnowledgeGraph g;
  g.add_entity("a");
  g.add_relation("r");
  CHECK_THROWS_AS(g.add_triple(Triple{0, 0, 5}), Error);
  CHECK_THROWS_AS(g.add_triple(Triple{0, 3, 0}), Error);
}

TEST_CASE("clustering coefficient of a triangle member is 1") {
  auto g = from_text("a r b\nb r c\nc r a\n");
  for (EntityId e = 0; e < 3; ++e)
    CHECK(g.clustering_coefficient(e) == doctest::Approx(1.0));
}

TEST_CASE("clustering coefficient of a star center is 0") {
  auto g = from_text("hub r leaf1\nhub r leaf2\nhub r leaf3\n");
  CHECK(g.clustering_coefficient(*g.entities().find("hub")) == 0.0);
}

TEST_CASE("one edge among three neighbors gives 1/3") {
  // e's neighbors are a, b, c; only (a, b) is connected.
  auto g = from_text("e r a\ne r b\ne r c\na r b\n");
  EntityId e = *g.entities().find("e");
  CHECK(g.clustering_coefficient(e) == doctest::Approx(oracles::clustering_coefficient(g, e)));
  CHECK(g.clustering_coefficient(e) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("degree <= 1 and self-loops give 0") {
  auto g = from_text("a r a\na r b\n");
  CHECK(g.clustering_coefficient(*g.entities().find("a")) == 0.0);
  CHECK(g.clustering_coefficient(*g.entities().find("b")) == 0.0);
}

TEST_CASE("cc matches the brute-force oracle and ignores direction/labels") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entity(0, 11);
  std::uniform_int_distribution<int> rel(0, 2);
  KnowledgeGraph g, reversed;
  for (int e = 0; e < 12; ++e) {
    g.add_entity("e" + std::to_string(e));
    reversed.add_entity("e" + std::to_string(e));
  }
  for (int i = 0; i < 40; ++i) {
    std::string s = "e" + std::to_string(entity(rng));
    std::string o = "e" + std::to_string(entity(rng));
    std::string r = "r" + std::to_string(rel(rng));
    g.add_triple(s, r, o);
    reversed.add_triple(o, "q" + std::to_string(rel(rng)), s);  // flipped + relabeled
  }
  std::vector<double> bulk = clustering_coefficients(g);
  for (EntityId e = 0; e < g.num_entities(); ++e) {
    double expected = oracles::clustering_coefficient(g, e);
    CHECK(g.clustering_coefficient(e) == doctest::Approx(expected));
    CHECK(bulk[e] == doctest::Approx(expected));
    CHECK(reversed.clustering_coefficient(e) == doctest::Approx(expected));
    CHECK(g.clustering_coefficient(e) >= 0.0);
    CHECK(g.clustering_coefficient(e) <= 1.0);
  }
}

TEST_CASE("complement size is N^2 R minus the triple count") {
  auto g2 = from_text("a r b\n");
  CHECK(g2.complement_excluded_size() == 3);  // 2*2*1 - 1

  KnowledgeGraph g3;
  for (auto name : {"a", "b", "c"}) g3.add_entity(name);
  for (auto name : {"r", "s"}) g3.add_relation(name);
  CHECK(g3.complement_excluded_size() == 18);  // 3*3*2 - 0

  auto paper = from_text("Greece hasCapital Athens\n");
  CHECK(paper.complement_excluded_size() == 3);
}

TEST_CASE("subgraph keeps dictionaries and drops triples") {
  auto g = from_text("a r b\nb r c\n");
  std::vector<Triple> keep{g.triples()[0]};
  auto sub = subgraph(g, keep);
  CHECK(sub.num_triples() == 1);
  CHECK(sub.num_entities() == g.num_entities());
  CHECK(sub.num_relations() == g.num_relations());
}

TEST_CASE("ontology lookups resolve domain and range by name") {
  auto schema = from_text("worksFor domain Person\nworksFor range Organization\n");
  Ontology onto{schema};
  REQUIRE(onto.domain_of("worksFor").size() == 1);
  CHECK(onto.domain_of("worksFor")[0] == "Person");
  REQUIRE(onto.range_of("worksFor").size() == 1);
  CHECK(onto.range_of("worksFor")[0] == "Organization");
  CHECK(onto.domain_of("unknown").empty());
}
