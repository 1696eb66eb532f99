/* Copyright 2026 The ASPMT Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Randomized property checks shared by the unit tests and the acceptance
// binary. Each returns how many generated cases failed.

#ifndef ASPMT_TESTS_PROPERTIES_HPP
#define ASPMT_TESTS_PROPERTIES_HPP

#include "aspmt/smt.hpp"
#include "support.hpp"

namespace aspmt::testing {

struct PropertyReport {
  int cases = 0;
  int failures = 0;
  int interesting = 0;  // cases where the property's premise held
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline ProgramGenerator::Options any_program() {
  ProgramGenerator::Options o;
  o.require_tight = false;
  return o;
}

// I satisfies its own reduct, and taking the reduct twice changes nothing.
inline PropertyReport check_reduct_properties(unsigned seed, int cases) {
  PropertyReport rep;
  ProgramGenerator gen(seed);
  for (int i = 0; i < cases; ++i, ++rep.cases) {
    Program p = parse_program_or_throw(gen.next(any_program()));
    auto vocab = Vocabulary::build(p.signature, {});
    Interpretation I = gen.interpretation(vocab);
    GroundFormula g = ground(program_formula(p), *vocab);
    GroundFormula r = reduct(g, I);
    if (satisfies(I, g)) {
      ++rep.interesting;
      if (!satisfies(I, r)) rep.fail("fixpoint:\n" + print_program(p) + assignment_text(*vocab, I.assignment()));
    } else if (r.kind() != GroundFormula::Kind::False) {
      rep.fail("falsified formula has a non-#false reduct:\n" + print_program(p));
    }
    if (!(reduct(r, I) == r)) rep.fail("idempotence:\n" + print_program(p));
  }
  return rep;
}

// Irreflexive for any C; transitive and antisymmetric when C has only
// predicates.
inline PropertyReport check_less_than_properties(unsigned seed, int cases) {
  PropertyReport rep;
  ProgramGenerator gen(seed);
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i, ++rep.cases) {
    Program p = parse_program_or_throw(gen.next(any_program()));
    auto vocab = Vocabulary::build(p.signature, {});
    Interpretation I = gen.interpretation(vocab);
    if (less_than(I, I, p.signature.intensional)) rep.fail("reflexive:\n" + print_program(p));

    std::vector<std::string> preds;
    for (const auto& c : p.signature.intensional)
      if (p.signature.predicates.count(c)) preds.push_back(c);
    auto shrink = [&](const Interpretation& from) {
      Interpretation out = from;
      for (const auto& name : preds) {
        int c = *vocab->find_constant(name);
        for (std::size_t cell = 0; cell < vocab->constant(c).cells; ++cell)
          if (out.get(c, cell) && rng() % 2) out.set(c, cell, 0);
      }
      return out;
    };
    Interpretation J = shrink(I);
    Interpretation K = shrink(J);
    if (less_than(K, J, preds) && less_than(J, I, preds)) {
      ++rep.interesting;
      if (!less_than(K, I, preds)) rep.fail("not transitive:\n" + print_program(p));
    }
    if (less_than(J, I, preds) && less_than(I, J, preds)) rep.fail("not antisymmetric:\n" + print_program(p));
  }
  return rep;
}

// Printing and reparsing gives back the same program and formula.
inline PropertyReport check_round_trip(unsigned seed, int cases) {
  PropertyReport rep;
  ProgramGenerator gen(seed);
  for (int i = 0; i < cases; ++i, ++rep.cases) {
    std::string text = gen.next(any_program());
    Program p = parse_program_or_throw(text);
    std::string printed = print_program(p);
    Program q = parse_program_or_throw(printed);
    if (print_program(q) != printed) rep.fail("program text changed:\n" + text);
    bool same = q.rules.size() == p.rules.size();
    for (std::size_t r = 0; same && r < p.rules.size(); ++r) same = rule_formula(p.rules[r]) == rule_formula(q.rules[r]);
    if (!same) rep.fail("rules changed:\n" + text);
    Formula f = program_formula(p);
    if (!(parse_formula(to_string(f), p.signature) == f)) rep.fail("formula changed: " + to_string(f));
  }
  return rep;
}

// The SMT-LIB text depends only on the program, not on the run or on the
// program's printed form.
inline PropertyReport check_emit_determinism(unsigned seed, int cases) {
  PropertyReport rep;
  ProgramGenerator gen(seed);
  for (int i = 0; i < cases; ++i, ++rep.cases) {
    Program p = parse_program_or_throw(gen.next());
    CompletedTheory th = complete(to_clark_normal_form(p));
    std::string a = emit(th).text();
    if (a != emit(th).text()) rep.fail("two emissions differ:\n" + print_program(p));
    if (a != emit(complete(to_clark_normal_form(parse_program_or_throw(print_program(p))))).text())
      rep.fail("reparsed program emits differently:\n" + print_program(p));
    EmitOptions q;
    q.mode = EmitMode::Quantified;
    if (emit(th, q).text() != emit(th, q).text()) rep.fail("quantified emissions differ:\n" + print_program(p));
  }
  return rep;
}

// Stable interpretations are models; witnesses are below I.
inline PropertyReport check_stability_properties(unsigned seed, int cases) {
  PropertyReport rep;
  ProgramGenerator gen(seed);
  for (int i = 0; i < cases; ++i, ++rep.cases) {
    Program p = parse_program_or_throw(gen.next(any_program()));
    auto vocab = Vocabulary::build(p.signature, {});
    Interpretation I = gen.interpretation(vocab);
    Formula f = program_formula(p);
    if (i % 2) {
      auto ms = enumerate_models(vocab, f, {}, {});
      if (!ms.empty()) I = ms[static_cast<std::size_t>(i) % ms.size()];
    }
    auto r = check_stable(I, f);
    if (r.stable) {
      ++rep.interesting;
      if (!satisfies(I, ground(f, I))) rep.fail("stable but not a model:\n" + print_program(p));
    }
    if (r.witness && !less_than(*r.witness, I, p.signature.intensional))
      rep.fail("witness is not below I:\n" + print_program(p));
  }
  return rep;
}

}  // namespace aspmt::testing

#endif  // ASPMT_TESTS_PROPERTIES_HPP
