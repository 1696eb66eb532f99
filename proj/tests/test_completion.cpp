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

#include "aspmt/completion.hpp"
#include "aspmt/ground.hpp"
#include "aspmt/parser.hpp"
#include "aspmt/tightness.hpp"
#include "support.hpp"

namespace aspmt {
namespace {

EnumerateOptions classical() {
  EnumerateOptions o;
  o.stable = false;
  return o;
}

Signature small_sig() {
  return parse_program_or_throw(
             "sort s = 0..3.\npred p, q, r(s).\nfunc f -> s.\nfunc g(s) -> s.\nintensional p, f.\n")
      .signature;
}

std::string simp(const std::string& text) {
  Signature sig = small_sig();
  return to_string(simplify(parse_formula(text, sig), sig));
}

TEST(Completion, BucketHalves) {
  auto th = complete(to_clark_normal_form(testing::load_program("bucket.aspmt")));
  ASSERT_EQ(th.definitions.size(), 1u);
  auto [fw, bw] = split_simplified(th.definitions[0], th.signature);
  EXPECT_EQ(to_string(fw), "(amount0 = amount1 + 1 | (amount1 = 10, fillup))");
  EXPECT_EQ(to_string(bw), "(fillup -> amount1 = 10)");
  EXPECT_EQ(biconditional_text(th.definitions[0]),
            "#forall Y:int (amount1 = Y <-> (not not amount1 = Y, amount0 = Y + 1) | (Y = 10, fillup))");
}

TEST(Completion, NoRulesGivesNegation) {
  auto th = complete(to_clark_normal_form(parse_program_or_throw("pred p, q.\nintensional p.\n")));
  auto [fw, bw] = split_simplified(th.definitions[0], th.signature);
  EXPECT_EQ(to_string(fw), "not p");
  EXPECT_TRUE(bw.is_top());
}

TEST(Completion, ValueFixedByEquality) {
  auto th = complete(to_clark_normal_form(
      parse_program_or_throw("sort s = 0..5.\nfunc f -> s.\nintensional f.\nf = 3.\n")));
  auto [fw, bw] = split_simplified(th.definitions[0], th.signature);
  EXPECT_EQ(to_string(fw), "f = 3");
  // forall y (y = 3 -> f = y) is f = 3, not a tautology.
  EXPECT_EQ(to_string(bw), "f = 3");
}

TEST(Completion, RawSplitShapes) {
  auto th = complete(to_clark_normal_form(testing::load_program("bucket.aspmt")));
  auto [fw, bw] = split_biconditional(th.definitions[0]);
  EXPECT_EQ(to_string(fw),
            "((not not amount1 = amount1, amount0 = amount1 + 1) | (amount1 = 10, fillup))");
  EXPECT_EQ(bw.kind(), FormulaKind::Forall);
  EXPECT_TRUE(is_y_definite(th.definitions[0]) == false);
}

TEST(Completion, YDefinite) {
  auto cnf = to_clark_normal_form(parse_program_or_throw(
      "sort s = 0..3.\npred e.\nfunc f, h -> s.\nintensional f.\nf = h :- e.\nf = 2 :- not e.\n"));
  EXPECT_TRUE(is_y_definite(cnf.definitions[0]));
}

TEST(Simplify, Atoms) {
  EXPECT_EQ(simp("f = f"), "#true");
  EXPECT_EQ(simp("1 + 2 = 3"), "#true");
  EXPECT_EQ(simp("2 < 1"), "#false");
  EXPECT_EQ(simp("not f = f"), "#false");
}

TEST(Simplify, Connectives) {
  EXPECT_EQ(simp("not not p"), "p");
  EXPECT_EQ(simp("p, #true, (q, r(1))"), "(p, q, r(1))");
  EXPECT_EQ(simp("p | #false"), "p");
  EXPECT_EQ(simp("p | #true"), "#true");
  EXPECT_EQ(simp("#false -> q"), "#true");
  EXPECT_EQ(simp("#true -> q"), "q");
  EXPECT_EQ(simp("p -> #true"), "#true");
  EXPECT_EQ(simp("(p, q) -> p"), "#true");
}

TEST(Simplify, Quantifiers) {
  EXPECT_EQ(simp("#forall X:s (p)"), "p");
  EXPECT_EQ(simp("#exists X:s (X = 2, r(X))"), "r(2)");
  EXPECT_EQ(simp("#forall X:s (X = f -> r(X))"), "r(f)");
  EXPECT_EQ(simp("#exists X:s (X = g(1), r(X))"), "r(g(1))");
}

TEST(Simplify, RangeGuardOnArithmetic) {
  // X + 1 may leave 0..3, so the equality cannot be dropped outright.
  std::string s = simp("#exists X:s (X = f + 1, r(X))");
  EXPECT_NE(s.find("f + 1 <= 3"), std::string::npos) << s;
}

TEST(Simplify, PreservesModelsOfRandomFormulas) {
  testing::ProgramGenerator gen(11);
  testing::ProgramGenerator::Options o;
  o.require_tight = false;
  o.max_candidates = 3000;
  for (int i = 0; i < 150; ++i) {
    Program p = parse_program_or_throw(gen.next(o));
    auto th = complete(to_clark_normal_form(p));
    auto vocab = Vocabulary::build(p.signature, {});
    auto keys = testing::free_cells(*vocab, p.fixings);
    Formula f = th.as_formula();
    auto before = enumerate_models(vocab, f, p.fixings, {}, classical());
    auto after = enumerate_models(vocab, simplify(f, p.signature), p.fixings, {}, classical());
    ASSERT_EQ(testing::projected(before, keys), testing::projected(after, keys)) << print_program(p);

    std::vector<Formula> halves(th.constraints.begin(), th.constraints.end());
    for (const auto& d : th.definitions) {
      auto [fw, bw] = split_simplified(d, p.signature);
      halves.push_back(fw);
      halves.push_back(bw);
    }
    auto split = enumerate_models(vocab, Formula::conj(halves), p.fixings, {}, classical());
    ASSERT_EQ(testing::projected(before, keys), testing::projected(split, keys)) << print_program(p);
  }
}

// Models of the completion are the stable models when the program is tight.
TEST(Completion, ModelsMatchStableModelsOfTightPrograms) {
  testing::ProgramGenerator gen(5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Program p = parse_program_or_throw(gen.next());
    ASSERT_TRUE(is_tight(p).tight);
    auto vocab = Vocabulary::build(p.signature, {});
    auto keys = testing::free_cells(*vocab, p.fixings);
    auto stable = enumerate_stable_models(p, {});
    auto th = complete(to_clark_normal_form(p));
    auto comp = enumerate_models(vocab, th.as_formula(), p.fixings, {}, classical());
    ASSERT_EQ(testing::projected(stable, keys), testing::projected(comp, keys)) << print_program(p);
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Completion, SelfLoopHasExtraModel) {
  Program p = testing::load_program("selfloop.aspmt");
  auto vocab = Vocabulary::build(p.signature, {});
  auto comp = enumerate_models(vocab, complete(to_clark_normal_form(p)).as_formula(), {}, {}, classical());
  EXPECT_EQ(comp.size(), 2u);
  EXPECT_EQ(enumerate_stable_models(p, {}).size(), 1u);
}

TEST(Completion, Gears) {
  Program p = testing::load_program("gears.aspmt");
  auto th = complete(to_clark_normal_form(p));
  EXPECT_EQ(th.definitions.size(), p.signature.intensional.size());
  auto vocab = Vocabulary::build(p.signature, {});
  auto keys = testing::free_cells(*vocab, p.fixings);
  auto comp = enumerate_models(vocab, th.as_formula(), p.fixings, {}, classical());
  EXPECT_EQ(testing::projected(comp, keys), testing::projected(enumerate_stable_models(p, {}), keys));
  EXPECT_FALSE(comp.empty());
}

TEST(Completion, SingletonSorts) {
  Signature sig = parse_program_or_throw("sort one = 4..4.\nsort two = 0..1.\nsort c = {red}.\n").signature;
  EXPECT_EQ(singleton_sorts(sig), (std::vector<std::string>{"one", "c"}));
}

TEST(Completion, PrintedText) {
  auto th = complete(to_clark_normal_form(testing::load_program("myoffice.aspmt")));
  std::string text = print_completion(th);
  EXPECT_NE(text.find("forward:"), std::string::npos);
  EXPECT_NE(text.find("not myoffice(b)"), std::string::npos) << text;
}

}  // namespace
}  // namespace aspmt
