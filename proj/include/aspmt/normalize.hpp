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

// Clark normal form relative to the intensional constants.
//
// Rules for the same intensional constant are merged into a single sentence
//   forall X1..Xn (G -> p(X1..Xn))      for predicates
//   forall X1..Xn Y (G -> f(X1..Xn) = Y) for functions
// where G is a disjunction with one disjunct per rule. Rule-local variables
// that do not become X_i or Y are existentially quantified in their disjunct.

#ifndef ASPMT_NORMALIZE_HPP
#define ASPMT_NORMALIZE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspmt/error.hpp"
#include "aspmt/logic.hpp"
#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

struct Definition {
  std::string constant;
  bool predicate = false;
  std::vector<Var> args;     // X1..Xn
  std::optional<Var> value;  // Y, functions only
  Formula body = Formula::falsum();  // G

  // p(X1..Xn) or f(X1..Xn) = Y
  Formula head() const {
    std::vector<Term> xs;
    for (const auto& a : args) xs.push_back(Term::var(a));
    if (predicate) return Formula::atom(constant, xs);
    return Formula::equal(Term::app(constant, xs), Term::var(*value));
  }
  std::vector<Var> variables() const {
    std::vector<Var> vs = args;
    if (value) vs.push_back(*value);
    return vs;
  }
  Formula sentence() const { return Formula::forall(variables(), Formula::implies(body, head())); }

  friend bool operator==(const Definition&, const Definition&) = default;
};

struct ClarkProgram {
  Signature signature;
  std::vector<Definition> definitions;  // in the order of the intensional list
  std::vector<Formula> constraints;     // closed sentences forall z (B -> #false)
  Fixings fixings;

  const Definition* find(const std::string& constant) const {
    for (const auto& d : definitions)
      if (d.constant == constant) return &d;
    return nullptr;
  }

  Formula as_formula() const {
    std::vector<Formula> parts;
    for (const auto& d : definitions) parts.push_back(d.sentence());
    parts.insert(parts.end(), constraints.begin(), constraints.end());
    return Formula::conj(std::move(parts));
  }
};

inline std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != FormulaKind::And) return {f};
  std::vector<Formula> out;
  for (const auto& s : f.subs()) {
    auto inner = conjuncts(s);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

// {h} :- B  becomes  h :- not not h, B.
inline Rule rewrite_choice(const Rule& r) {
  if (r.head_kind != HeadKind::Choice) throw Error("not a choice rule: " + to_string(r));
  Rule out = r;
  out.head_kind = r.head.kind() == FormulaKind::Atom ? HeadKind::Atom : HeadKind::FunctionEq;
  std::vector<Formula> body{Formula::neg(Formula::neg(r.head))};
  for (const auto& c : conjuncts(r.body)) body.push_back(c);
  out.body = body.size() == 1 ? body[0] : Formula::conj(std::move(body));
  return out;
}

namespace detail {

inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (int i = 1;; ++i) {
    std::string n = base + "_" + std::to_string(i);
    if (!taken.count(n)) return n;
  }
}

inline std::string canonical_arg(std::size_t i) { return "X" + std::to_string(i + 1); }

// One disjunct of G for a rule whose head defines `def`.
inline Formula disjunct(const Definition& def, const Rule& rule) {
  std::vector<Term> head_args;
  std::optional<Term> head_value;
  if (def.predicate) {
    head_args = rule.head.terms();
  } else {
    head_args = rule.head.left_term().args();
    head_value = rule.head.right_term();
  }

  std::set<std::string> canonical;
  for (const auto& v : def.variables()) canonical.insert(v.name);
  std::set<std::string> taken = canonical;
  for (const auto& v : rule.variables) taken.insert(v.name);

  // Rename rule variables that clash with X_i / Y.
  Binding rename;
  std::vector<Var> locals;
  for (const auto& v : rule.variables) {
    if (canonical.count(v.name)) {
      std::string n = fresh_name(v.name, taken);
      taken.insert(n);
      rename.insert_or_assign(v.name, Term::var(n, v.sort));
      locals.push_back(Var{n, v.sort});
    } else {
      locals.push_back(v);
    }
  }
  for (auto& t : head_args) t = substitute(t, rename);
  if (head_value) head_value = substitute(*head_value, rename);
  Formula body = substitute(rule.body, rename);

  // Identify head variables with canonical ones, or add equalities.
  Binding ident;
  std::vector<Formula> eqs;
  auto bind = [&](const Term& t, const Var& canon) {
    if (t.is_var() && t.sort() == canon.sort && !ident.count(t.name())) {
      ident.insert_or_assign(t.name(), Term::var(canon));
      return;
    }
    eqs.push_back(Formula::equal(Term::var(canon), t));
  };
  for (std::size_t i = 0; i < head_args.size(); ++i) bind(head_args[i], def.args[i]);
  if (head_value) bind(*head_value, *def.value);

  std::vector<Formula> parts;
  for (auto& e : eqs) parts.push_back(substitute(e, ident));
  for (const auto& c : conjuncts(body)) parts.push_back(substitute(c, ident));
  Formula d = parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));

  std::vector<Var> rest;
  for (const auto& v : locals)
    if (!ident.count(v.name)) rest.push_back(v);
  std::sort(rest.begin(), rest.end());
  return Formula::exists(rest, d);
}

// A head f(t) = u whose value u may fall outside the range sort of f cannot
// hold for such values, which the merged form Y = u would silently drop:
// the rule then acts as the constraint  :- B, not (lo <= u, u <= hi).
inline std::optional<Formula> escape_constraint(const Signature& sig, const Rule& r) {
  const Term& f = r.head.left_term();
  const Term& u = r.head.right_term();
  const FunctionDecl* fn = sig.find_function(f.name());
  const Sort* s = fn ? sig.find_sort(fn->value) : nullptr;
  if (!s || s->kind != SortKind::Range) return std::nullopt;
  if (u.kind() == TermKind::Numeral && s->lo <= u.value() && u.value() <= s->hi) return std::nullopt;
  if ((u.is_var() || u.kind() == TermKind::Apply) && term_sort(u, sig) == fn->value) return std::nullopt;
  std::vector<Formula> body = conjuncts(r.body);
  body.push_back(Formula::neg(Formula::conj({Formula::compare(CompareOp::Le, Term::num(s->lo), u),
                                             Formula::compare(CompareOp::Le, u, Term::num(s->hi))})));
  return Formula::forall(r.variables, Formula::implies(Formula::conj(std::move(body)), Formula::falsum()));
}

}  // namespace detail

// The function itself only checks head forms; sort errors are the parser's.
inline ClarkProgram to_clark_normal_form(const Program& program) {
  const Signature& sig = program.signature;
  ClarkProgram out;
  out.signature = sig;
  out.fixings = program.fixings;

  std::map<std::string, std::vector<Rule>> by_constant;
  for (const auto& r0 : program.rules) {
    if (r0.head_kind == HeadKind::Falsum) {
      out.constraints.push_back(Formula::forall(r0.variables, Formula::implies(r0.body, Formula::falsum())));
      continue;
    }
    Rule r = r0.head_kind == HeadKind::Choice ? rewrite_choice(r0) : r0;
    std::string name;
    if (r.head.kind() == FormulaKind::Atom) {
      name = r.head.pred();
    } else if (r.head.kind() == FormulaKind::Equal && r.head.left_term().kind() == TermKind::Apply) {
      name = r.head.left_term().name();
    } else {
      throw Error("rule head is a background atom: " + to_string(r0));
    }
    if (!sig.is_intensional(name))
      throw Error("rule head mentions non-intensional constant '" + name + "': " + to_string(r0));
    if (r0.head_kind == HeadKind::FunctionEq)
      if (auto c = detail::escape_constraint(sig, r0)) out.constraints.push_back(*c);
    by_constant[name].push_back(r);
  }

  for (const auto& c : sig.intensional) {
    Definition def;
    def.constant = c;
    if (const auto* p = sig.find_predicate(c)) {
      def.predicate = true;
      for (std::size_t i = 0; i < p->size(); ++i) def.args.push_back(Var{detail::canonical_arg(i), (*p)[i]});
    } else if (const auto* f = sig.find_function(c)) {
      for (std::size_t i = 0; i < f->args.size(); ++i)
        def.args.push_back(Var{detail::canonical_arg(i), f->args[i]});
      def.value = Var{"Y", f->value};
    } else {
      throw Error("intensional constant '" + c + "' is not declared");
    }
    std::vector<Formula> ds;
    for (const auto& r : by_constant[c]) ds.push_back(detail::disjunct(def, r));
    if (ds.empty()) def.body = Formula::falsum();
    else if (ds.size() == 1) def.body = ds[0];
    else def.body = Formula::disj(std::move(ds));
    out.definitions.push_back(std::move(def));
  }
  return out;
}

inline std::string formula_body_text(const Formula& g) {
  if (g.kind() == FormulaKind::Or && g.subs().size() >= 2) return detail::join(g.subs(), " | ");
  return body_text(g);
}

// The Clark normal form in the rule syntax of the input language.
inline std::string print_clark(const ClarkProgram& cnf) {
  std::string out = print_signature(cnf.signature);
  out += print_fixings(cnf.signature, cnf.fixings);
  for (const auto& d : cnf.definitions) {
    std::string body = formula_body_text(d.body);
    out += to_string(d.head()) + (body.empty() ? "" : " :- " + body) + ".\n";
  }
  for (const auto& c : cnf.constraints) {
    Formula f = c;
    while (f.kind() == FormulaKind::Forall) f = f.body();
    std::string body = body_text(f.antecedent());
    out += ":- " + (body.empty() ? "#and()" : body) + ".\n";
  }
  return out;
}

}  // namespace aspmt

#endif  // ASPMT_NORMALIZE_HPP
