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

// Clark completion and classical simplification.
//
// simplify() removes double negations, which is only sound classically. It
// must be applied to completed theories and never to a program before
// completion, where "not not" changes the stable models.

#ifndef ASPMT_COMPLETION_HPP
#define ASPMT_COMPLETION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aspmt/logic.hpp"
#include "aspmt/normalize.hpp"
#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

struct CompletedTheory {
  Signature signature;
  std::vector<Definition> definitions;  // head <-> body, one per intensional constant
  std::vector<Formula> constraints;     // closed formulas forall z not B
  Fixings fixings;

  Formula biconditional(const Definition& d) const {
    return Formula::forall(d.variables(), Formula::iff(d.head(), d.body));
  }
  Formula as_formula() const {
    std::vector<Formula> parts;
    for (const auto& d : definitions) parts.push_back(biconditional(d));
    parts.insert(parts.end(), constraints.begin(), constraints.end());
    return Formula::conj(std::move(parts));
  }
};

// Completion does not check tightness; models of the result coincide with
// stable models only for tight inputs.
inline CompletedTheory complete(const ClarkProgram& cnf) {
  return CompletedTheory{cnf.signature, cnf.definitions, cnf.constraints, cnf.fixings};
}

// forward: every true atom or actual value is supported by G.
// backward: G forces the atom or value.
inline std::pair<Formula, Formula> split_biconditional(const Definition& d) {
  Formula backward = d.sentence();
  Formula forward = Formula::falsum();
  if (d.predicate) {
    forward = Formula::forall(d.args, Formula::implies(d.head(), d.body));
  } else {
    std::vector<Term> xs;
    for (const auto& a : d.args) xs.push_back(Term::var(a));
    Binding b;
    b.insert_or_assign(d.value->name, Term::app(d.constant, xs));
    forward = Formula::forall(d.args, substitute(d.body, b));
  }
  return {forward, backward};
}

// G is y-definite when every disjunct has a conjunct Y = t with t free of Y.
inline bool is_y_definite(const Definition& d) {
  if (!d.value) return false;
  const std::string& y = d.value->name;
  std::vector<Formula> ds = d.body.kind() == FormulaKind::Or ? d.body.subs() : std::vector{d.body};
  for (auto g : ds) {
    while (g.kind() == FormulaKind::Exists) g = g.body();
    bool found = false;
    for (const auto& c : conjuncts(g)) {
      if (c.kind() != FormulaKind::Equal) continue;
      const Term& l = c.left_term();
      const Term& r = c.right_term();
      if ((l.is_var() && l.name() == y && !mentions(r, y)) || (r.is_var() && r.name() == y && !mentions(l, y)))
        found = true;
    }
    if (!found) return false;
  }
  return true;
}

namespace detail {

inline std::optional<Value> numeric_value(const Term& t) {
  if (t.kind() == TermKind::Numeral) return t.value();
  if (t.kind() != TermKind::Arith) return std::nullopt;
  auto l = numeric_value(t.left());
  auto r = numeric_value(t.right());
  if (!l || !r) return std::nullopt;
  switch (t.op()) {
    case ArithOp::Add: return *l + *r;
    case ArithOp::Sub: return *l - *r;
    case ArithOp::Mul: return *l * *r;
  }
  return std::nullopt;
}

inline Formula truth(bool b) { return b ? Formula::top() : Formula::falsum(); }

class Simplifier {
 public:
  explicit Simplifier(const Signature& sig) : sig_(sig) {}

  Formula run(Formula f) {
    for (;;) {
      Formula g = step(f);
      if (g == f) return g;
      f = g;
    }
  }

 private:
  const Signature& sig_;

  Formula atom(const Formula& f) {
    if (f.kind() == FormulaKind::Equal) {
      const Term& l = f.left_term();
      const Term& r = f.right_term();
      if (l == r) return Formula::top();
      auto a = numeric_value(l);
      auto b = numeric_value(r);
      if (a && b) return truth(*a == *b);
      if (l.kind() == TermKind::Element && r.kind() == TermKind::Element) return truth(l.value() == r.value());
    } else if (f.kind() == FormulaKind::Compare) {
      const Term& l = f.left_term();
      const Term& r = f.right_term();
      if (l == r) return truth(f.cmp() == CompareOp::Le || f.cmp() == CompareOp::Ge);
      auto a = numeric_value(l);
      auto b = numeric_value(r);
      if (a && b) {
        switch (f.cmp()) {
          case CompareOp::Le: return truth(*a <= *b);
          case CompareOp::Lt: return truth(*a < *b);
          case CompareOp::Ge: return truth(*a >= *b);
          case CompareOp::Gt: return truth(*a > *b);
        }
      }
    }
    return f;
  }

  Formula junction(const Formula& f) {
    bool is_and = f.kind() == FormulaKind::And;
    std::vector<Formula> out;
    for (const auto& s0 : f.subs()) {
      Formula s = step(s0);
      if (s.kind() == f.kind()) {
        out.insert(out.end(), s.subs().begin(), s.subs().end());
        continue;
      }
      if (is_and ? s.is_top() : s.is_bottom()) continue;
      if (is_and ? s.is_bottom() : s.is_top()) return is_and ? Formula::falsum() : Formula::top();
      out.push_back(s);
    }
    if (out.empty()) return is_and ? Formula::top() : Formula::falsum();
    if (out.size() == 1) return out[0];
    return is_and ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
  }

  Formula implication(const Formula& f) {
    Formula a = step(f.antecedent());
    Formula c = step(f.consequent());
    if (a.is_bottom() || c.is_top()) return Formula::top();
    if (a.is_top()) return c;
    // not not A  ->  A
    if (c.is_falsum() && a.is_negation()) return a.antecedent();
    if (c.is_falsum() && a.is_top()) return Formula::falsum();
    // (exists z A) -> C  ->  forall z (A -> C)
    if (a.kind() == FormulaKind::Exists && !has_free(c, a.bound().name))
      return Formula::forall(a.bound(), Formula::implies(a.body(), c));
    // (A | B) -> C  ->  (A -> C), (B -> C)
    if (a.kind() == FormulaKind::Or) {
      std::vector<Formula> parts;
      for (const auto& s : a.subs()) parts.push_back(Formula::implies(s, c));
      return Formula::conj(std::move(parts));
    }
    for (const auto& x : conjuncts(a))
      if (x == c) return Formula::top();
    return Formula::implies(a, c);
  }

  // Range guard for substituting t into a variable of sort `sort`.
  std::vector<Formula> guard(const Var& v, const Term& t) {
    const Sort* s = sig_.find_sort(v.sort);
    if (!s || s->kind != SortKind::Range) return {};
    if (auto n = numeric_value(t); n && t.kind() == TermKind::Numeral && s->lo <= *n && *n <= s->hi) return {};
    if (t.kind() != TermKind::Arith && t.kind() != TermKind::Numeral && term_sort(t, sig_) == v.sort)
      return {};
    return {Formula::compare(CompareOp::Le, Term::num(s->lo), t),
            Formula::compare(CompareOp::Le, t, Term::num(s->hi))};
  }

  // Index of a conjunct v = t or t = v with t free of v.
  static std::optional<std::pair<std::size_t, Term>> defining_equality(const std::vector<Formula>& cs,
                                                                      const Var& v) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Formula& c = cs[i];
      if (c.kind() != FormulaKind::Equal) continue;
      const Term& l = c.left_term();
      const Term& r = c.right_term();
      if (l.is_var() && l.name() == v.name && !mentions(r, v.name)) return std::pair{i, r};
      if (r.is_var() && r.name() == v.name && !mentions(l, v.name)) return std::pair{i, l};
    }
    return std::nullopt;
  }

  // Tries to remove one variable of a quantifier block by substitution.
  std::optional<Formula> eliminate(FormulaKind q, const Var& v, const Formula& m) {
    if (q == FormulaKind::Forall) {
      if (m.kind() != FormulaKind::Implies) return std::nullopt;
      auto cs = conjuncts(m.antecedent());
      auto eq = defining_equality(cs, v);
      if (!eq) return std::nullopt;
      std::vector<Formula> rest = guard(v, eq->second);
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (i != eq->first) rest.push_back(cs[i]);
      Binding b;
      b.insert_or_assign(v.name, eq->second);
      return substitute(Formula::implies(Formula::conj(rest), m.consequent()), b);
    }
    auto cs = conjuncts(m);
    auto eq = defining_equality(cs, v);
    if (!eq) return std::nullopt;
    std::vector<Formula> rest = guard(v, eq->second);
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (i != eq->first) rest.push_back(cs[i]);
    Binding b;
    b.insert_or_assign(v.name, eq->second);
    return substitute(Formula::conj(rest), b);
  }

  Formula quantifier(const Formula& f) {
    FormulaKind q = f.kind();
    std::vector<Var> block;
    Formula m = f;
    while (m.kind() == q) {
      block.push_back(m.bound());
      m = m.body();
    }
    m = step(m);
    // Distribute over the matching junction.
    FormulaKind dist = q == FormulaKind::Forall ? FormulaKind::And : FormulaKind::Or;
    if (m.kind() == dist) {
      std::vector<Formula> parts;
      for (const auto& s : m.subs()) parts.push_back(Formula::forall_or_exists(q, block, s));
      return dist == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    std::vector<Var> kept;
    for (std::size_t i = 0; i < block.size(); ++i) {
      const Var& v = block[i];
      if (!has_free(m, v.name)) continue;
      // Inner bound variables of the block must not occur in the replacement.
      if (auto r = eliminate(q, v, m)) {
        bool captured = false;
        for (std::size_t j = i + 1; j < block.size() && !captured; ++j)
          captured = has_free(*r, block[j].name) && !has_free(m, block[j].name);
        if (!captured) {
          m = *r;
          continue;
        }
      }
      kept.push_back(v);
    }
    return Formula::forall_or_exists(q, kept, m);
  }

 public:
  Formula step(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Falsum: return f;
      case FormulaKind::Atom:
      case FormulaKind::Equal:
      case FormulaKind::Compare: return atom(f);
      case FormulaKind::And:
      case FormulaKind::Or: return junction(f);
      case FormulaKind::Implies: return implication(f);
      case FormulaKind::Forall:
      case FormulaKind::Exists: return quantifier(f);
    }
    return f;
  }
};

}  // namespace detail

// Classically equivalent simplification: reflexive and numeric atoms are
// evaluated, double negations and truth constants removed, nested junctions
// flattened, and variables fixed by an equality are substituted away.
inline Formula simplify(const Formula& f, const Signature& sig) { return detail::Simplifier(sig).run(f); }

inline std::pair<Formula, Formula> split_simplified(const Definition& d, const Signature& sig) {
  auto [fw, bw] = split_biconditional(d);
  return {simplify(fw, sig), simplify(bw, sig)};
}

// Sorts with exactly one element; completion may disagree with stable models
// over such universes.
inline std::vector<std::string> singleton_sorts(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& s : sig.sorts)
    if (s.is_finite() && s.last() == s.first()) out.push_back(s.name);
  return out;
}

inline std::string biconditional_text(const Definition& d) {
  std::string out = to_string(d.head()) + " <-> " + formula_body_text(d.body);
  auto vs = d.variables();
  for (auto it = vs.rbegin(); it != vs.rend(); ++it)
    out = "#forall " + it->name + ":" + it->sort + " (" + out + ")";
  return out;
}

// Human-readable completion: each biconditional, then its simplified
// forward and backward halves, then the constraints.
inline std::string print_completion(const CompletedTheory& th) {
  std::string out;
  for (const auto& d : th.definitions) {
    auto [fw, bw] = split_simplified(d, th.signature);
    out += biconditional_text(d) + ".\n";
    out += "  forward:  " + to_string(fw) + "\n";
    out += "  backward: " + to_string(bw) + "\n";
  }
  for (const auto& c : th.constraints) out += to_string(simplify(c, th.signature)) + ".\n";
  return out;
}

}  // namespace aspmt

#endif  // ASPMT_COMPLETION_HPP
