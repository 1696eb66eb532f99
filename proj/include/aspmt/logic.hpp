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

#ifndef ASPMT_LOGIC_HPP
#define ASPMT_LOGIC_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

inline void collect_variables(const Term& t, std::set<Var>& out) {
  if (t.is_var()) {
    out.insert(t.as_var());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

inline std::set<Var> variables_of(const Term& t) {
  std::set<Var> out;
  collect_variables(t, out);
  return out;
}

inline bool mentions(const Term& t, const std::string& var) {
  if (t.is_var()) return t.name() == var;
  for (const auto& a : t.args())
    if (mentions(a, var)) return true;
  return false;
}

namespace detail {

inline void free_vars(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f.kind()) {
    case FormulaKind::Falsum: return;
    case FormulaKind::Atom:
    case FormulaKind::Equal:
    case FormulaKind::Compare:
      for (const auto& t : f.terms()) {
        std::set<Var> vs;
        collect_variables(t, vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      for (const auto& s : f.subs()) free_vars(s, bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool fresh = bound.insert(f.bound()).second;
      free_vars(f.body(), bound, out);
      if (fresh) bound.erase(f.bound());
      return;
    }
  }
}

}  // namespace detail

inline std::set<Var> free_variables(const Formula& f) {
  std::set<Var> bound, out;
  detail::free_vars(f, bound, out);
  return out;
}

inline bool has_free(const Formula& f, const std::string& var) {
  for (const auto& v : free_variables(f))
    if (v.name == var) return true;
  return false;
}

// Keyed by variable name.
using Binding = std::map<std::string, Term>;

inline Term substitute(const Term& t, const Binding& b) {
  if (t.is_var()) {
    auto it = b.find(t.name());
    return it == b.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute(a, b));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  if (t.kind() == TermKind::Arith) return Term::arith(t.op(), args[0], args[1]);
  return Term::app(t.name(), std::move(args));
}

// Simultaneous, capture-avoiding substitution of free variables. Bound
// variables that would capture a variable of a substituted term are renamed.
inline Formula substitute(const Formula& f, const Binding& b) {
  if (b.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::Falsum: return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& t : f.terms()) args.push_back(substitute(t, b));
      return Formula::atom(f.pred(), std::move(args));
    }
    case FormulaKind::Equal:
      return Formula::equal(substitute(f.left_term(), b), substitute(f.right_term(), b));
    case FormulaKind::Compare:
      return Formula::compare(f.cmp(), substitute(f.left_term(), b), substitute(f.right_term(), b));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> subs;
      for (const auto& s : f.subs()) subs.push_back(substitute(s, b));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(subs))
                                          : Formula::disj(std::move(subs));
    }
    case FormulaKind::Implies:
      return Formula::implies(substitute(f.antecedent(), b), substitute(f.consequent(), b));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Binding inner = b;
      inner.erase(f.bound().name);
      Var v = f.bound();
      Formula body = f.body();
      std::set<std::string> incoming;
      for (const auto& [name, t] : inner) {
        if (!has_free(body, name)) continue;
        for (const auto& u : variables_of(t)) incoming.insert(u.name);
      }
      if (incoming.count(v.name)) {
        std::set<std::string> taken = incoming;
        for (const auto& u : free_variables(body)) taken.insert(u.name);
        std::string fresh = v.name;
        for (int i = 1; taken.count(fresh); ++i) fresh = v.name + "_" + std::to_string(i);
        inner.insert_or_assign(v.name, Term::var(fresh, v.sort));
        v.name = fresh;
      }
      Formula nb = substitute(body, inner);
      return f.kind() == FormulaKind::Forall ? Formula::forall(v, nb) : Formula::exists(v, nb);
    }
  }
  return f;
}

// Sort of a term under `sig`, or nullopt when the term is ill-formed.
inline std::optional<std::string> term_sort(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Element: return t.sort();
    case TermKind::Numeral:
    case TermKind::Arith: return std::string(kIntSort);
    case TermKind::Apply: {
      const FunctionDecl* fn = sig.find_function(t.name());
      if (!fn) return std::nullopt;
      return fn->value;
    }
  }
  return std::nullopt;
}

// Integer-valued sorts (ranges and the background integers) are mutually
// compatible; an enumerated sort is only compatible with itself.
inline bool sorts_compatible(const Signature& sig, const std::string& a, const std::string& b) {
  if (a == b) return true;
  const Sort* x = sig.find_sort(a);
  const Sort* y = sig.find_sort(b);
  return x && y && x->is_integer_like() && y->is_integer_like();
}

inline bool integer_like(const Signature& sig, const std::string& sort) {
  const Sort* s = sig.find_sort(sort);
  return s && s->is_integer_like();
}

struct SortDiagnostic {
  std::optional<std::size_t> rule;  // nullopt for signature-level problems
  std::string subterm;
  std::string message;
};

namespace detail {

class SortChecker {
 public:
  SortChecker(const Signature& sig, std::optional<std::size_t> rule,
              std::vector<SortDiagnostic>& out)
      : sig_(sig), rule_(rule), out_(out) {}

  std::optional<std::string> term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Numeral: return std::string(kIntSort);
      case TermKind::Variable:
        if (!sig_.find_sort(t.sort())) {
          report(to_string(t), "variable " + t.name() + " has undeclared sort '" + t.sort() + "'");
          return std::nullopt;
        }
        return t.sort();
      case TermKind::Element: {
        auto e = sig_.find_element(t.name());
        if (!e || e->first != t.sort() || e->second != t.value()) {
          report(to_string(t), "unknown element '" + t.name() + "'");
          return std::nullopt;
        }
        return t.sort();
      }
      case TermKind::Arith: {
        bool ok = true;
        for (const auto& a : t.args()) {
          auto s = term(a);
          if (s && !integer_like(sig_, *s)) {
            report(to_string(a), "arithmetic on non-integer sort '" + *s + "'");
            ok = false;
          }
          ok = ok && s.has_value();
        }
        return ok ? std::optional<std::string>(kIntSort) : std::nullopt;
      }
      case TermKind::Apply: {
        const FunctionDecl* fn = sig_.find_function(t.name());
        if (!fn) {
          if (sig_.find_predicate(t.name()))
            report(to_string(t), "predicate '" + t.name() + "' used as a term");
          else
            report(to_string(t), "undeclared function '" + t.name() + "'");
          for (const auto& a : t.args()) term(a);
          return std::nullopt;
        }
        if (!arguments(to_string(t), fn->args, t.args())) return std::nullopt;
        return fn->value;
      }
    }
    return std::nullopt;
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Falsum: return;
      case FormulaKind::Atom: {
        const auto* args = sig_.find_predicate(f.pred());
        if (!args) {
          report(to_string(f), sig_.find_function(f.pred())
                                   ? "function '" + f.pred() + "' used as a predicate"
                                   : "undeclared predicate '" + f.pred() + "'");
          for (const auto& a : f.terms()) term(a);
          return;
        }
        arguments(to_string(f), *args, f.terms());
        return;
      }
      case FormulaKind::Equal: {
        auto l = term(f.left_term());
        auto r = term(f.right_term());
        if (l && r && !sorts_compatible(sig_, *l, *r))
          report(to_string(f), "equality between sorts '" + *l + "' and '" + *r + "'");
        return;
      }
      case FormulaKind::Compare: {
        for (const auto& t : f.terms()) {
          auto s = term(t);
          if (s && !integer_like(sig_, *s))
            report(to_string(f), "comparison on non-integer sort '" + *s + "'");
        }
        return;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
        for (const auto& s : f.subs()) formula(s);
        return;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        if (!sig_.find_sort(f.bound().sort))
          report(to_string(f), "quantifier over undeclared sort '" + f.bound().sort + "'");
        formula(f.body());
        return;
    }
  }

  void report(std::string subterm, std::string message) {
    out_.push_back({rule_, std::move(subterm), std::move(message)});
  }

 private:
  bool arguments(const std::string& where, const std::vector<std::string>& expected,
                 const std::vector<Term>& args) {
    if (expected.size() != args.size()) {
      report(where, "expected " + std::to_string(expected.size()) + " arguments, got " +
                        std::to_string(args.size()));
      for (const auto& a : args) term(a);
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto s = term(args[i]);
      if (s && !sorts_compatible(sig_, *s, expected[i])) {
        report(to_string(args[i]), "argument " + std::to_string(i + 1) + " has sort '" + *s +
                                       "', expected '" + expected[i] + "'");
        ok = false;
      }
      ok = ok && s.has_value();
    }
    return ok;
  }

  const Signature& sig_;
  std::optional<std::size_t> rule_;
  std::vector<SortDiagnostic>& out_;
};

}  // namespace detail

inline std::vector<SortDiagnostic> check_signature(const Signature& sig) {
  std::vector<SortDiagnostic> out;
  auto report = [&](std::string what, std::string msg) {
    out.push_back({std::nullopt, std::move(what), std::move(msg)});
  };
  std::set<std::string> sort_names, elements;
  for (const auto& s : sig.sorts) {
    if (s.name == kIntSort || !sort_names.insert(s.name).second)
      report(s.name, "duplicate sort '" + s.name + "'");
    if (s.kind == SortKind::Range && s.lo > s.hi) report(s.name, "empty range sort");
    if (s.kind == SortKind::Enumerated && s.elements.empty())
      report(s.name, "enumerated sort without elements");
    for (const auto& e : s.elements)
      if (e.empty() || !elements.insert(e).second) report(e, "duplicate element '" + e + "'");
  }
  auto known = [&](const std::string& s) { return sig.find_sort(s) != nullptr; };
  for (const auto& [name, decl] : sig.functions) {
    if (sig.predicates.count(name)) report(name, "'" + name + "' is both function and predicate");
    if (elements.count(name)) report(name, "'" + name + "' is both function and element");
    for (const auto& a : decl.args)
      if (!known(a)) report(name, "undeclared sort '" + a + "'");
    if (!known(decl.value)) report(name, "undeclared sort '" + decl.value + "'");
  }
  for (const auto& [name, args] : sig.predicates) {
    if (elements.count(name)) report(name, "'" + name + "' is both predicate and element");
    for (const auto& a : args)
      if (!known(a)) report(name, "undeclared sort '" + a + "'");
  }
  std::set<std::string> seen;
  for (const auto& c : sig.intensional) {
    if (!sig.functions.count(c) && !sig.predicates.count(c))
      report(c, "intensional '" + c + "' is not a declared function or predicate");
    if (!seen.insert(c).second) report(c, "'" + c + "' listed twice as intensional");
  }
  return out;
}

inline std::vector<SortDiagnostic> check_rule(const Signature& sig, const Rule& r,
                                              std::optional<std::size_t> index) {
  std::vector<SortDiagnostic> out;
  detail::SortChecker check(sig, index, out);
  switch (r.head_kind) {
    case HeadKind::Atom:
      if (r.head.kind() != FormulaKind::Atom) check.report(to_string(r.head), "head must be an atom");
      break;
    case HeadKind::FunctionEq:
    case HeadKind::Choice:
      if (r.head.kind() != FormulaKind::Equal ||
          r.head.left_term().kind() != TermKind::Apply)
        check.report(to_string(r.head), "head must equate a function application");
      break;
    case HeadKind::Falsum:
      if (!r.head.is_falsum()) check.report(to_string(r.head), "constraint head must be #false");
      break;
  }
  check.formula(r.head);
  check.formula(r.body);
  std::set<Var> declared(r.variables.begin(), r.variables.end());
  std::set<Var> fv = free_variables(r.head);
  for (const auto& v : free_variables(r.body)) fv.insert(v);
  for (const auto& v : fv)
    if (!declared.count(v)) check.report(v.name, "variable " + v.name + " is not schematic in the rule");
  return out;
}

inline std::vector<SortDiagnostic> check_formula(const Signature& sig, const Formula& f) {
  std::vector<SortDiagnostic> out;
  detail::SortChecker(sig, std::nullopt, out).formula(f);
  return out;
}

// Empty iff the signature is consistent and every rule respects it.
inline std::vector<SortDiagnostic> check_well_sorted(const Program& p) {
  std::vector<SortDiagnostic> out = check_signature(p.signature);
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    auto d = check_rule(p.signature, p.rules[i], i);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

// Substitution with sort checking: each bound term must be compatible with
// its variable's sort. Throws SortError otherwise.
inline Formula substitute(const Formula& f, const std::map<Var, Term>& binding,
                          const Signature& sig) {
  Binding b;
  for (const auto& [v, t] : binding) {
    auto s = term_sort(t, sig);
    if (!s || !sorts_compatible(sig, v.sort, *s))
      throw SortError("cannot substitute " + to_string(t) + " for " + v.name + ":" + v.sort);
    b.emplace(v.name, t);
  }
  return substitute(f, b);
}

// The rule read as a sentence: the universal closure of body -> head, where a
// choice head {h} stands for h | not h.
inline Formula rule_formula(const Rule& r) {
  Formula head = r.head;
  if (r.head_kind == HeadKind::Choice) head = Formula::disj({r.head, Formula::neg(r.head)});
  if (r.head_kind == HeadKind::Falsum) head = Formula::falsum();
  return Formula::forall(r.variables, Formula::implies(r.body, head));
}

inline Formula program_formula(const Program& p) {
  std::vector<Formula> parts;
  for (const auto& r : p.rules) parts.push_back(rule_formula(r));
  return Formula::conj(std::move(parts));
}

inline void for_each_term(const Formula& f, const std::function<void(const Term&)>& fn) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) fn(t);
    return;
  }
  for (const auto& s : f.subs()) for_each_term(s, fn);
}

}  // namespace aspmt

#endif  // ASPMT_LOGIC_HPP
