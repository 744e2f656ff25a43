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

#include "kgloop/synth.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "kgloop/error.hpp"
#include "kgloop/io.hpp"
#include "kgloop/reasoner.hpp"

namespace kgloop {
namespace {

KnowledgeGraph build_schema() {
  KnowledgeGraph schema;
  auto sub_class = [&](std::string_view a, std::string_view b) {
    schema.add_triple(a, vocab::kSubClass, b);
  };
  auto sub_property = [&](std::string_view a, std::string_view b) {
    schema.add_triple(a, vocab::kSubProperty, b);
  };
  auto dom = [&](std::string_view r, std::string_view c) {
    schema.add_triple(r, vocab::kDomain, c);
  };
  auto rng = [&](std::string_view r, std::string_view c) {
    schema.add_triple(r, vocab::kRange, c);
  };

  sub_class("FullProfessor", "Professor");
  sub_class("AssociateProfessor", "Professor");
  sub_class("AssistantProfessor", "Professor");
  sub_class("Professor", "Faculty");
  sub_class("Lecturer", "Faculty");
  sub_class("Faculty", "Employee");
  sub_class("Employee", "Person");
  sub_class("GraduateStudent", "Student");
  sub_class("UndergraduateStudent", "Student");
  sub_class("Student", "Person");
  sub_class("GraduateCourse", "Course");
  sub_class("Department", "Organization");
  sub_class("University", "Organization");

  sub_property("headOf", "worksFor");
  sub_property("worksFor", "memberOf");
  sub_property("undergraduateDegreeFrom", "degreeFrom");
  sub_property("doctoralDegreeFrom", "degreeFrom");

  dom("headOf", "Professor");
  rng("headOf", "Department");
  dom("worksFor", "Employee");
  rng("worksFor", "Organization");
  dom("memberOf", "Person");
  rng("memberOf", "Organization");
  dom("advisor", "Student");
  rng("advisor", "Professor");
  dom("teacherOf", "Faculty");
  rng("teacherOf", "Course");
  dom("takesCourse", "Student");
  rng("takesCourse", "Course");
  dom("degreeFrom", "Person");
  rng("degreeFrom", "University");
  dom("undergraduateDegreeFrom", "Person");
  rng("undergraduateDegreeFrom", "University");
  dom("doctoralDegreeFrom", "Person");
  rng("doctoralDegreeFrom", "University");
  dom("subOrganizationOf", "Organization");
  rng("subOrganizationOf", "Organization");
  return schema;
}

const char* professor_class(std::uint32_t p) {
  switch (p % 3) {
    case 0: return "FullProfessor";
    case 1: return "AssociateProfessor";
    default: return "AssistantProfessor";
  }
}

}  // namespace

void SynthConfig::validate() const {
  if (universities == 0 || departments_per_university == 0 ||
      professors_per_department == 0 || students_per_professor == 0)
    throw Error("synth counts must all be >= 1");
  if (sparsity < 0.0 || sparsity > 1.0)
    throw Error("sparsity must be in [0, 1]");
}

SynthOutput synth_generate(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);

  SynthOutput out;
  out.ontology = Ontology(build_schema());
  out.rules = rdfs_preset();

  KnowledgeGraph facts;
  std::vector<std::string> university_names;
  for (std::uint32_t u = 0; u < cfg.universities; ++u)
    university_names.push_back("University" + std::to_string(u));
  std::uniform_int_distribution<std::size_t> pick_university(
      0, university_names.size() - 1);

  for (std::uint32_t u = 0; u < cfg.universities; ++u) {
    const std::string& univ = university_names[u];
    facts.add_triple(univ, vocab::kType, "University");
    for (std::uint32_t d = 0; d < cfg.departments_per_university; ++d) {
      std::string dept =
          "Department" + std::to_string(u) + "_" + std::to_string(d);
      facts.add_triple(dept, vocab::kType, "Department");
      facts.add_triple(dept, "subOrganizationOf", univ);
      for (std::uint32_t p = 0; p < cfg.professors_per_department; ++p) {
        std::string tag =
            std::to_string(u) + "_" + std::to_string(d) + "_" + std::to_string(p);
        std::string prof = "Professor" + tag;
        facts.add_triple(prof, vocab::kType, professor_class(p));
        // Department heads are stated via headOf only; their worksFor and
        // memberOf facts are left to the property hierarchy.
        if (p == 0) {
          facts.add_triple(prof, "headOf", dept);
        } else {
          facts.add_triple(prof, "worksFor", dept);
        }
        facts.add_triple(prof, "doctoralDegreeFrom",
                         university_names[pick_university(rng)]);
        std::string course = "Course" + tag;
        facts.add_triple(course, vocab::kType,
                         p % 2 == 1 ? "GraduateCourse" : "Course");
        facts.add_triple(prof, "teacherOf", course);
        for (std::uint32_t s = 0; s < cfg.students_per_professor; ++s) {
          std::string stud = "Student" + tag + "_" + std::to_string(s);
          facts.add_triple(stud, vocab::kType,
                           s % 2 == 0 ? "GraduateStudent" : "UndergraduateStudent");
          facts.add_triple(stud, "advisor", prof);
          facts.add_triple(stud, "memberOf", dept);
          facts.add_triple(stud, "takesCourse", course);
          if (s % 2 == 0)
            facts.add_triple(stud, "undergraduateDegreeFrom",
                             university_names[pick_university(rng)]);
        }
      }
    }
  }

  out.stats.universities = cfg.universities;
  out.stats.departments = cfg.universities * cfg.departments_per_university;
  out.stats.professors = out.stats.departments * cfg.professors_per_department;
  out.stats.students = out.stats.professors * cfg.students_per_professor;
  out.stats.courses = out.stats.professors;
  out.stats.extensional = facts.num_triples();

  // Full entailment over the ground facts; split the derivations into
  // instance-level (withholdable) and schema-level (never emitted as data).
  InferenceResult closure = infer(facts, out.ontology, out.rules);
  std::vector<std::array<std::string, 3>> derivable_instance;
  std::vector<std::array<std::string, 3>> derivable_schema;
  for (const Triple& t : closure.fresh) {
    auto [s, r, o] = closure.graph.decode(t);
    std::array<std::string, 3> row{std::string(s), std::string(r), std::string(o)};
    if (r == vocab::kSubClass || r == vocab::kSubProperty) {
      derivable_schema.push_back(std::move(row));
    } else {
      derivable_instance.push_back(std::move(row));
    }
  }
  out.stats.derivable_instance = derivable_instance.size();
  out.stats.derivable_schema = derivable_schema.size();

  std::shuffle(derivable_instance.begin(), derivable_instance.end(), rng);
  auto withhold = static_cast<std::size_t>(
      cfg.sparsity * static_cast<double>(derivable_instance.size()) + 0.5);

  out.graph = std::move(facts);
  for (std::size_t i = withhold; i < derivable_instance.size(); ++i) {
    const auto& [s, r, o] = derivable_instance[i];
    out.graph.add_triple(s, r, o);
  }
  derivable_instance.resize(withhold);
  out.withheld = std::move(derivable_instance);
  out.withheld.insert(out.withheld.end(), derivable_schema.begin(),
                      derivable_schema.end());
  return out;
}

void write_synth_files(const SynthOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_graph(output.graph, dir / "triples.tsv");
  save_graph(output.ontology.schema(), dir / "ontology.tsv");

  std::ofstream withheld(dir / "withheld.tsv");
  if (!withheld) throw Error("cannot open " + (dir / "withheld.tsv").string());
  for (const auto& [s, r, o] : output.withheld)
    withheld << s << '\t' << r << '\t' << o << '\n';

  std::ofstream rules(dir / "rules.txt");
  if (!rules) throw Error("cannot open " + (dir / "rules.txt").string());
  for (const HornRule& rule : output.rules.rules)
    rules << to_string(rule) << '\n';
}

}  // namespace kgloop
