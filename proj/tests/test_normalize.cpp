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

#include <gtest/gtest.h>

#include "aspmt/ground.hpp"
#include "aspmt/normalize.hpp"
#include "aspmt/parser.hpp"
#include "support.hpp"

namespace aspmt {
namespace {

Bounds bounds(Value lo, Value hi) {
  Bounds b;
  b.integers = Range{lo, hi};
  return b;
}

TEST(RewriteChoice, Bucket) {
  Program p = testing::load_program("bucket.aspmt");
  Rule r = rewrite_choice(p.rules[0]);
  EXPECT_EQ(to_string(r), "amount1 = X :- not not amount1 = X, amount0 = X + 1.");
}

TEST(RewriteChoice, EmptyBody) {
  Program p = parse_program_or_throw("sort s = 0..1.\nfunc f -> s.\nintensional f.\n{f = 0}.\n");
  EXPECT_EQ(to_string(rewrite_choice(p.rules[0])), "f = 0 :- not not f = 0.");
}

TEST(RewriteChoice, RejectsOtherRules) {
  Program p = testing::load_program("bucket.aspmt");
  EXPECT_THROW(rewrite_choice(p.rules[1]), Error);
}

TEST(ClarkNormalForm, Bucket) {
  ClarkProgram c = to_clark_normal_form(testing::load_program("bucket.aspmt"));
  ASSERT_EQ(c.definitions.size(), 1u);
  const Definition& d = c.definitions[0];
  EXPECT_EQ(d.constant, "amount1");
  EXPECT_EQ(to_string(d.head()), "amount1 = Y");
  EXPECT_EQ(formula_body_text(d.body), "(not not amount1 = Y, amount0 = Y + 1) | (Y = 10, fillup)");
  EXPECT_TRUE(c.constraints.empty());
}

TEST(ClarkNormalForm, NoRulesMeansFalsum) {
  ClarkProgram c = to_clark_normal_form(parse_program_or_throw("pred p, q.\nintensional p, q.\nq :- p.\n"));
  EXPECT_TRUE(c.find("p")->body.is_falsum());
  EXPECT_EQ(to_string(c.find("q")->body), "p");
}

TEST(ClarkNormalForm, GearsMotor) {
  ClarkProgram c = to_clark_normal_form(testing::load_program("gears.aspmt"));
  EXPECT_EQ(formula_body_text(c.find("m1speed_1")->body),
            "(m1speed_0 = Y - 1, increasem1_0) | (not not m1speed_1 = Y, m1speed_0 = Y)");
}

TEST(ClarkNormalForm, ArgumentsAndLocalVariables) {
  Program p = parse_program_or_throw(
      "sort s = 0..3.\npred p(s), q(s), r(s).\nintensional p.\n"
      "p(X) :- q(X).\np(2) :- r(Z).\np(Y) :- q(X1), r(Y).\n");
  ClarkProgram c = to_clark_normal_form(p);
  EXPECT_EQ(formula_body_text(c.find("p")->body),
            "q(X1) | #exists Z:s ((X1 = 2, r(Z))) | #exists X1_1:s ((q(X1_1), r(X1)))");
}

TEST(ClarkNormalForm, FunctionArguments) {
  Program p = parse_program_or_throw(
      "sort s = 0..2.\nsort c = {r, g}.\nfunc f(s) -> c.\npred e(s).\nintensional f.\n"
      "f(X) = r :- e(X).\nf(1) = C :- C = g.\n");
  ClarkProgram c = to_clark_normal_form(p);
  const Definition& d = *c.find("f");
  EXPECT_EQ(to_string(d.head()), "f(X1) = Y");
  EXPECT_EQ(formula_body_text(d.body), "(Y = r, e(X1)) | (X1 = 1, Y = g)");
}

TEST(ClarkNormalForm, Constraints) {
  ClarkProgram c = to_clark_normal_form(testing::load_program("myoffice.aspmt"));
  ASSERT_EQ(c.constraints.size(), 2u);
  EXPECT_EQ(to_string(c.constraints[0]), "not myoffice(b)");
  EXPECT_EQ(to_string(c.find("myoffice")->body), "X1 = a");
}

TEST(ClarkNormalForm, ValueOutsideRangeAddsConstraint) {
  Program p = parse_program_or_throw(
      "sort s = 0..3.\nfunc f -> s.\npred q(s).\nintensional f.\nf = X + 1 :- q(X).\n");
  ClarkProgram c = to_clark_normal_form(p);
  ASSERT_EQ(c.constraints.size(), 1u);
  EXPECT_EQ(to_string(c.constraints[0]), "#forall X:s (not (q(X), not (0 <= X + 1, X + 1 <= 3)))");
}

TEST(ClarkNormalForm, Errors) {
  EXPECT_THROW(to_clark_normal_form(parse_program_or_throw("pred p, q.\nintensional q.\np :- q.\n")), Error);
  Program p = parse_program_or_throw("func a -> int.\nintensional a.\n");
  Rule bad;
  bad.head_kind = HeadKind::FunctionEq;
  bad.head = Formula::equal(Term::num(1), Term::num(1));
  p.rules.push_back(bad);
  EXPECT_THROW(to_clark_normal_form(p), Error);
}

TEST(ClarkNormalForm, OneDefinitionPerIntensionalConstant) {
  testing::ProgramGenerator gen(11);
  for (int i = 0; i < 200; ++i) {
    Program p = parse_program_or_throw(gen.next());
    ClarkProgram c = to_clark_normal_form(p);
    std::vector<std::string> keys;
    for (const auto& d : c.definitions) keys.push_back(d.constant);
    EXPECT_EQ(keys, p.signature.intensional);
    for (const auto& d : c.definitions) {
      auto vs = d.variables();
      for (const auto& v : free_variables(d.body))
        EXPECT_NE(std::find(vs.begin(), vs.end(), v), vs.end()) << v.name;
    }
  }
}

// Stable models of the program, of its Clark normal form read as a formula,
// and of the printed normal form parsed again all coincide.
void expect_same_stable_models(const Program& p, const Bounds& b, const Fixings& extra = {}) {
  Fixings fx = p.fixings;
  for (const auto& [k, v] : extra) fx[k] = v;
  auto vocab = Vocabulary::build(p.signature, b);
  auto original = enumerate_models(vocab, program_formula(p), fx, b);
  ClarkProgram c = to_clark_normal_form(p);
  auto cnf = enumerate_models(vocab, c.as_formula(), fx, b);
  auto keys = testing::free_cells(*vocab, fx);
  EXPECT_EQ(testing::projected(original, keys), testing::projected(cnf, keys)) << print_clark(c);
  Program reparsed = parse_program_or_throw(print_clark(c));
  auto printed = enumerate_models(Vocabulary::build(reparsed.signature, b), program_formula(reparsed), fx, b);
  EXPECT_EQ(testing::projected(original, keys), testing::projected(printed, keys)) << print_clark(c);
}

TEST(ClarkNormalForm, PreservesStableModelsOfBundledPrograms) {
  expect_same_stable_models(testing::load_program("bucket.aspmt"), bounds(0, 10), {{"amount0", 6}});
  expect_same_stable_models(testing::load_program("selfloop.aspmt"), {});
  expect_same_stable_models(testing::load_program("pqr.aspmt"), {});
  expect_same_stable_models(testing::load_program("myoffice.aspmt"), {});
  expect_same_stable_models(testing::load_program("gears.aspmt"), {});
}

TEST(ClarkNormalForm, PreservesStableModelsOfRandomPrograms) {
  testing::ProgramGenerator gen(7);
  testing::ProgramGenerator::Options o;
  o.require_tight = false;
  o.max_candidates = 4000;
  for (int i = 0; i < 150; ++i) expect_same_stable_models(parse_program_or_throw(gen.next(o)), {});
}

}  // namespace
}  // namespace aspmt
