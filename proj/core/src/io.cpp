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

#include "kgloop/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "kgloop/error.hpp"

namespace kgloop {
namespace {

constexpr std::string_view kWhitespace = " \t\r";

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(kWhitespace);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(kWhitespace);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(kWhitespace, pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(kWhitespace, pos);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

// Recognized spellings of the five reserved schema relations.
std::string_view map_vocabulary(std::string_view token) {
  struct Alias {
    std::string_view from, to;
  };
  static constexpr std::array<Alias, 15> kAliases{{
      {"rdf:type", vocab::kType},
      {"rdfs:domain", vocab::kDomain},
      {"rdfs:range", vocab::kRange},
      {"rdfs:subPropertyOf", vocab::kSubProperty},
      {"rdfs:subClassOf", vocab::kSubClass},
      {"http://www.w3.org/1999/02/22-rdf-syntax-ns#type", vocab::kType},
      {"http://www.w3.org/2000/01/rdf-schema#domain", vocab::kDomain},
      {"http://www.w3.org/2000/01/rdf-schema#range", vocab::kRange},
      {"http://www.w3.org/2000/01/rdf-schema#subPropertyOf", vocab::kSubProperty},
      {"http://www.w3.org/2000/01/rdf-schema#subClassOf", vocab::kSubClass},
      {"a", vocab::kType},
      {"subClassOf", vocab::kSubClass},
      {"subPropertyOf", vocab::kSubProperty},
      {"domainOf", vocab::kDomain},
      {"rangeOf", vocab::kRange},
  }};
  for (const auto& alias : kAliases)
    if (token == alias.from) return alias.to;
  return token;
}

// `<iri>` -> iri; bare tokens pass through. Literals are out of scope.
std::string_view strip_iri(std::string_view token, const std::string& source,
                           std::size_t line_no) {
  if (token.starts_with('<')) {
    if (!token.ends_with('>'))
      throw ParseError(source, line_no, "unterminated IRI: " + std::string(token));
    return token.substr(1, token.size() - 2);
  }
  if (token.starts_with('"'))
    throw ParseError(source, line_no, "literals are not supported");
  return token;
}

}  // namespace

KnowledgeGraph load_graph(std::istream& in, std::string source_name,
                          const LoadOptions& options) {
  KnowledgeGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    if (options.format == TripleFormat::kNTriples) {
      if (!view.ends_with('.'))
        throw ParseError(source_name, line_no, "expected terminating '.'");
      view = trim(view.substr(0, view.size() - 1));
    }

    auto fields = split_fields(view);
    if (fields.size() != 3)
      throw ParseError(source_name, line_no,
                       "expected 3 terms, got " + std::to_string(fields.size()));

    std::string_view s = fields[0], r = fields[1], o = fields[2];
    if (options.format == TripleFormat::kNTriples) {
      s = strip_iri(s, source_name, line_no);
      r = strip_iri(r, source_name, line_no);
      o = strip_iri(o, source_name, line_no);
    }
    if (options.map_rdf_vocabulary) {
      s = map_vocabulary(s);
      r = map_vocabulary(r);
      o = map_vocabulary(o);
    }
    g.add_triple(s, r, o);  // duplicate lines collapse
  }
  return g;
}

KnowledgeGraph load_graph(const std::filesystem::path& path,
                          const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return load_graph(in, path.filename().string(), options);
}

void save_graph(const KnowledgeGraph& g, std::ostream& out, TripleFormat format) {
  for (const Triple& t : g.triples()) {
    auto [s, r, o] = g.decode(t);
    if (format == TripleFormat::kTsv) {
      out << s << '\t' << r << '\t' << o << '\n';
    } else {
      out << '<' << s << "> <" << r << "> <" << o << "> .\n";
    }
  }
}

void save_graph(const KnowledgeGraph& g, const std::filesystem::path& path,
                TripleFormat format) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  save_graph(g, out, format);
}

void save_scored(const KnowledgeGraph& vocab, std::span<const ScoredTriple> rows,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  char buf[32];
  for (const ScoredTriple& row : rows) {
    auto [s, r, o] = vocab.decode(row.triple);
    out << s << '\t' << r << '\t' << o << '\t' << to_string(row.provenance);
    if (row.provenance == Provenance::kKge) {
      std::snprintf(buf, sizeof buf, "%.6f", row.probability);
      out << '\t' << buf;
    }
    out << '\n';
  }
}

std::string file_fingerprint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

}  // namespace kgloop
