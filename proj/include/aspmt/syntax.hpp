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

// Sorted first-order syntax shared by rules, definitions, completions and
// the grounder: sorts, signatures, terms, formulas, rules and programs.
//
// Terms and formulas are immutable trees of shared nodes, so copies are cheap
// and values can be shared freely across threads.

#ifndef ASPMT_SYNTAX_HPP
#define ASPMT_SYNTAX_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aspmt/error.hpp"

namespace aspmt {

using Value = std::int64_t;

inline constexpr const char* kIntSort = "int";

enum class SortKind { Integer, Enumerated, Range };

struct Sort {
  std::string name;
  SortKind kind = SortKind::Integer;
  Value lo = 0;  // Range only
  Value hi = 0;
  std::vector<std::string> elements;  // Enumerated only; element i has value i

  static Sort integer(std::string name) { return Sort{std::move(name), SortKind::Integer, 0, 0, {}}; }
  static Sort range(std::string name, Value lo, Value hi) {
    return Sort{std::move(name), SortKind::Range, lo, hi, {}};
  }
  static Sort enumerated(std::string name, std::vector<std::string> elements) {
    return Sort{std::move(name), SortKind::Enumerated, 0, 0, std::move(elements)};
  }

  bool is_integer_like() const { return kind != SortKind::Enumerated; }
  bool is_finite() const { return kind != SortKind::Integer; }
  // Inclusive value range of a finite sort.
  Value first() const { return kind == SortKind::Range ? lo : 0; }
  Value last() const {
    return kind == SortKind::Range ? hi : static_cast<Value>(elements.size()) - 1;
  }

  friend bool operator==(const Sort&, const Sort&) = default;
};

struct FunctionDecl {
  std::vector<std::string> args;
  std::string value;
  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

// Propositional constants are 0-ary predicates, object constants are 0-ary
// functions. The background sort `int` with + - * and comparisons is implicit.
struct Signature {
  std::vector<Sort> sorts;
  std::map<std::string, FunctionDecl> functions;
  std::map<std::string, std::vector<std::string>> predicates;
  std::vector<std::string> intensional;

  const Sort* find_sort(const std::string& name) const {
    static const Sort kInt = Sort::integer(kIntSort);
    if (name == kIntSort) return &kInt;
    for (const auto& s : sorts)
      if (s.name == name) return &s;
    return nullptr;
  }
  const FunctionDecl* find_function(const std::string& name) const {
    auto it = functions.find(name);
    return it == functions.end() ? nullptr : &it->second;
  }
  const std::vector<std::string>* find_predicate(const std::string& name) const {
    auto it = predicates.find(name);
    return it == predicates.end() ? nullptr : &it->second;
  }
  bool is_intensional(const std::string& name) const {
    return std::find(intensional.begin(), intensional.end(), name) != intensional.end();
  }
  // Enumerated sort containing `element` and the element's index.
  std::optional<std::pair<std::string, Value>> find_element(const std::string& element) const {
    for (const auto& s : sorts) {
      if (s.kind != SortKind::Enumerated) continue;
      for (std::size_t i = 0; i < s.elements.size(); ++i)
        if (s.elements[i] == element) return std::pair{s.name, static_cast<Value>(i)};
    }
    return std::nullopt;
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Var {
  std::string name;
  std::string sort;
  friend auto operator<=>(const Var&, const Var&) = default;
  friend bool operator==(const Var&, const Var&) = default;
};

enum class TermKind { Variable, Numeral, Element, Apply, Arith };
enum class ArithOp { Add, Sub, Mul };

class Term {
 public:
  struct Node {
    TermKind kind;
    std::string name;  // variable, function or element name
    std::string sort;  // variable or element sort
    Value value = 0;   // numeral value or element index
    ArithOp op = ArithOp::Add;
    std::vector<Term> args;  // function arguments, or {left, right} for Arith
  };

  static Term var(const Var& v) { return make(Node{TermKind::Variable, v.name, v.sort, 0, {}, {}}); }
  static Term var(std::string name, std::string sort) { return var(Var{std::move(name), std::move(sort)}); }
  static Term num(Value v) { return make(Node{TermKind::Numeral, {}, {}, v, {}, {}}); }
  static Term elem(std::string sort, Value index, std::string name) {
    return make(Node{TermKind::Element, std::move(name), std::move(sort), index, {}, {}});
  }
  static Term app(std::string fn, std::vector<Term> args = {}) {
    return make(Node{TermKind::Apply, std::move(fn), {}, 0, {}, std::move(args)});
  }
  static Term arith(ArithOp op, Term l, Term r) {
    return make(Node{TermKind::Arith, {}, {}, 0, op, {std::move(l), std::move(r)}});
  }

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::string& sort() const { return node_->sort; }
  Value value() const { return node_->value; }
  ArithOp op() const { return node_->op; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& left() const { return node_->args[0]; }
  const Term& right() const { return node_->args[1]; }
  Var as_var() const { return Var{node_->name, node_->sort}; }

  bool is_var() const { return kind() == TermKind::Variable; }
  bool is_ground() const {
    if (is_var()) return false;
    return std::all_of(args().begin(), args().end(), [](const Term& t) { return t.is_ground(); });
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.sort == y.sort && x.value == y.value &&
           x.op == y.op && x.args == y.args;
  }

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind { Falsum, Atom, Equal, Compare, And, Or, Implies, Forall, Exists };
enum class CompareOp { Le, Lt, Ge, Gt };

// Negation, truth and biconditional have no nodes of their own: ~F is
// F -> #false, #true is #false -> #false, F <-> G is (F -> G) & (G -> F).
// And/Or are n-ary; the empty conjunction is true and the empty disjunction
// false.
class Formula {
 public:
  struct Node {
    FormulaKind kind;
    std::string pred;          // Atom
    std::vector<Term> terms;   // Atom arguments, or {left, right}
    CompareOp cmp = CompareOp::Le;
    std::vector<Formula> subs; // And/Or children, {antecedent, consequent}, or {body}
    Var bound;                 // Forall/Exists
  };

  static Formula falsum() { return make(Node{FormulaKind::Falsum, {}, {}, {}, {}, {}}); }
  static Formula top() { return implies(falsum(), falsum()); }
  static Formula atom(std::string pred, std::vector<Term> args = {}) {
    return make(Node{FormulaKind::Atom, std::move(pred), std::move(args), {}, {}, {}});
  }
  static Formula equal(Term l, Term r) {
    return make(Node{FormulaKind::Equal, {}, {std::move(l), std::move(r)}, {}, {}, {}});
  }
  static Formula compare(CompareOp op, Term l, Term r) {
    return make(Node{FormulaKind::Compare, {}, {std::move(l), std::move(r)}, op, {}, {}});
  }
  static Formula conj(std::vector<Formula> fs) {
    return make(Node{FormulaKind::And, {}, {}, {}, std::move(fs), {}});
  }
  static Formula disj(std::vector<Formula> fs) {
    return make(Node{FormulaKind::Or, {}, {}, {}, std::move(fs), {}});
  }
  static Formula implies(Formula a, Formula b) {
    return make(Node{FormulaKind::Implies, {}, {}, {}, {std::move(a), std::move(b)}, {}});
  }
  static Formula neg(Formula f) { return implies(std::move(f), falsum()); }
  static Formula iff(const Formula& a, const Formula& b) {
    return conj({implies(a, b), implies(b, a)});
  }
  static Formula forall(Var v, Formula body) {
    return make(Node{FormulaKind::Forall, {}, {}, {}, {std::move(body)}, std::move(v)});
  }
  static Formula exists(Var v, Formula body) {
    return make(Node{FormulaKind::Exists, {}, {}, {}, {std::move(body)}, std::move(v)});
  }
  static Formula forall(const std::vector<Var>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
    return body;
  }
  static Formula exists(const std::vector<Var>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
    return body;
  }
  static Formula forall_or_exists(FormulaKind q, const std::vector<Var>& vs, Formula body) {
    return q == FormulaKind::Forall ? forall(vs, std::move(body)) : exists(vs, std::move(body));
  }

  FormulaKind kind() const { return node_->kind; }
  const std::string& pred() const { return node_->pred; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const Term& left_term() const { return node_->terms[0]; }
  const Term& right_term() const { return node_->terms[1]; }
  CompareOp cmp() const { return node_->cmp; }
  const std::vector<Formula>& subs() const { return node_->subs; }
  const Formula& antecedent() const { return node_->subs[0]; }
  const Formula& consequent() const { return node_->subs[1]; }
  const Formula& body() const { return node_->subs[0]; }
  const Var& bound() const { return node_->bound; }

  bool is_falsum() const { return kind() == FormulaKind::Falsum; }
  bool is_negation() const { return kind() == FormulaKind::Implies && consequent().is_falsum(); }
  // #true in either of its encodings.
  bool is_top() const {
    return (kind() == FormulaKind::And && subs().empty()) ||
           (kind() == FormulaKind::Implies && antecedent().is_falsum() && consequent().is_falsum());
  }
  bool is_bottom() const { return is_falsum() || (kind() == FormulaKind::Or && subs().empty()); }
  bool is_atomic() const {
    return kind() == FormulaKind::Atom || kind() == FormulaKind::Equal ||
           kind() == FormulaKind::Compare;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.pred == y.pred && x.terms == y.terms && x.cmp == y.cmp &&
           x.subs == y.subs && x.bound == y.bound;
  }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }
  std::shared_ptr<const Node> node_;
};

enum class HeadKind { Atom, FunctionEq, Choice, Falsum };

// head <- body, universally closed over `variables`.
struct Rule {
  HeadKind head_kind = HeadKind::Falsum;
  Formula head = Formula::falsum();  // Atom, or Equal with a function application on the left
  Formula body = Formula::conj({});
  std::vector<Var> variables;        // sorted by name

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Ground facts about non-intensional constants, keyed by cell name such as
// "amount0" or "edge(a,b)". Predicate cells hold 0 or 1.
using Fixings = std::map<std::string, Value>;

struct Program {
  Signature signature;
  std::vector<Rule> rules;
  Fixings fixings;

  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace aspmt

#endif  // ASPMT_SYNTAX_HPP
