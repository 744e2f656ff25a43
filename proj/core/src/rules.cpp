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

#include "kgloop/rules.hpp"

#include <unordered_set>

#include "kgloop/error.hpp"
#include "kgloop/graph.hpp"

namespace kgloop {
namespace {

void collect_variables(const Atom& atom, std::unordered_set<std::string>& vars) {
  for (int pos = 0; pos < 3; ++pos)
    if (atom[pos].is_variable()) vars.insert(atom[pos].text);
}

// Tokenizer/parser for one rule line. Grammar:
//   rule  := atoms "->" atom
//   atoms := atom ("," atom)*
//   atom  := "(" term "," term "," term ")"
//   term  := "?" IDENT | IDENT
class LineParser {
 public:
  LineParser(std::string_view line, std::string_view source, std::size_t line_no)
      : line_(line), source_(source), line_no_(line_no) {}

  HornRule parse() {
    HornRule rule;
    rule.body.push_back(parse_atom());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      rule.body.push_back(parse_atom());
      skip_ws();
    }
    expect('-');
    expect('>');
    Atom head = parse_atom();
    skip_ws();
    if (pos_ != line_.size()) fail("trailing input after head atom");
    rule.head = head;
    return rule;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(std::string(source_), line_no_,
                     msg + " (column " + std::to_string(pos_ + 1) + ")");
  }

  char peek() {
    skip_ws();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t'))
      ++pos_;
  }

  Term parse_term() {
    skip_ws();
    bool variable = false;
    if (pos_ < line_.size() && line_[pos_] == '?') {
      variable = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ',' && line_[pos_] != ')' &&
           line_[pos_] != ' ' && line_[pos_] != '\t')
      ++pos_;
    std::string text(line_.substr(start, pos_ - start));
    if (text.empty()) fail(variable ? "empty variable name" : "empty term");
    return variable ? Term::variable(std::move(text)) : Term::constant(std::move(text));
  }

  Atom parse_atom() {
    expect('(');
    Atom atom;
    atom.subject = parse_term();
    expect(',');
    atom.relation = parse_term();
    expect(',');
    atom.object = parse_term();
    expect(')');
    return atom;
  }

  std::string_view line_;
  std::string_view source_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

Atom make_atom(Term s, Term r, Term o) {
  return Atom{std::move(s), std::move(r), std::move(o)};
}

}  // namespace

std::optional<std::string> HornRule::unsafe_head_variable() const {
  std::unordered_set<std::string> bound;
  for (const Atom& atom : body) collect_variables(atom, bound);
  for (int pos = 0; pos < 3; ++pos) {
    const Term& t = head[pos];
    if (t.is_variable() && !bound.contains(t.text)) return t.text;
  }
  return std::nullopt;
}

RuleSet parse_rules(std::string_view text, std::string_view source_name) {
  RuleSet set;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    std::string_view line = text.substr(
        begin, end == std::string_view::npos ? text.size() - begin : end - begin);
    ++line_no;
    begin = end == std::string_view::npos ? text.size() + 1 : end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    HornRule rule = LineParser(line, source_name, line_no).parse();
    rule.name = "rule" + std::to_string(set.rules.size() + 1);
    if (auto unsafe = rule.unsafe_head_variable())
      throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                  ": unsafe rule: head variable ?" + *unsafe +
                  " does not occur in the body");
    set.rules.push_back(std::move(rule));
  }
  return set;
}

RuleSet rdfs_preset() {
  auto var = [](const char* n) { return Term::variable(n); };
  auto con = [](std::string_view n) { return Term::constant(std::string(n)); };

  RuleSet set;
  set.preset = RulePreset::kRdfsSubset;

  // (r, domain, c), (x, r, y) -> (x, type, c)
  set.rules.push_back(
      {"rdfs2",
       {make_atom(var("r"), con(vocab::kDomain), var("c")),
        make_atom(var("x"), var("r"), var("y"))},
       make_atom(var("x"), con(vocab::kType), var("c"))});
  // (r, range, c), (x, r, y) -> (y, type, c)
  set.rules.push_back(
      {"rdfs3",
       {make_atom(var("r"), con(vocab::kRange), var("c")),
        make_atom(var("x"), var("r"), var("y"))},
       make_atom(var("y"), con(vocab::kType), var("c"))});
  // (r1, subProperty, r2), (r2, subProperty, r3) -> (r1, subProperty, r3)
  set.rules.push_back(
      {"rdfs5",
       {make_atom(var("r1"), con(vocab::kSubProperty), var("r2")),
        make_atom(var("r2"), con(vocab::kSubProperty), var("r3"))},
       make_atom(var("r1"), con(vocab::kSubProperty), var("r3"))});
  // (r1, subProperty, r2), (x, r1, y) -> (x, r2, y)
  set.rules.push_back(
      {"rdfs7",
       {make_atom(var("r1"), con(vocab::kSubProperty), var("r2")),
        make_atom(var("x"), var("r1"), var("y"))},
       make_atom(var("x"), var("r2"), var("y"))});
  // (c1, subClass, c2), (x, type, c1) -> (x, type, c2)
  set.rules.push_back(
      {"rdfs9",
       {make_atom(var("c1"), con(vocab::kSubClass), var("c2")),
        make_atom(var("x"), con(vocab::kType), var("c1"))},
       make_atom(var("x"), con(vocab::kType), var("c2"))});
  // (c1, subClass, c2), (c2, subClass, c3) -> (c1, subClass, c3)
  set.rules.push_back(
      {"rdfs11",
       {make_atom(var("c1"), con(vocab::kSubClass), var("c2")),
        make_atom(var("c2"), con(vocab::kSubClass), var("c3"))},
       make_atom(var("c1"), con(vocab::kSubClass), var("c3"))});
  return set;
}

std::string to_string(const Term& term) {
  return term.is_variable() ? "?" + term.text : term.text;
}

std::string to_string(const Atom& atom) {
  return "(" + to_string(atom.subject) + ", " + to_string(atom.relation) + ", " +
         to_string(atom.object) + ")";
}

std::string to_string(const HornRule& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(rule.body[i]);
  }
  out += " -> ";
  out += to_string(rule.head);
  return out;
}

}  // namespace kgloop
