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

// Brute-force stable-model oracle.
//
// A sentence is grounded relative to the universe of an interpretation:
// quantifiers become finite conjunctions and disjunctions over universe
// elements, while function symbols stay in the ground formula unevaluated.
// An interpretation I is stable when it satisfies the ground formula and no J
// that is smaller on the intensional constants (same universe, agreement
// elsewhere, predicate extensions included in those of I, different
// somewhere) satisfies the reduct of the ground formula relative to I.

#ifndef ASPMT_GROUND_HPP
#define ASPMT_GROUND_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aspmt/error.hpp"
#include "aspmt/interpretation.hpp"
#include "aspmt/logic.hpp"
#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

class GroundTerm {
 public:
  enum class Kind { Value, Cell, Arith };
  struct Node {
    Kind kind;
    Value value = 0;
    int sort = -1;      // sort of a Value, for printing element names
    int constant = -1;  // Cell
    ArithOp op = ArithOp::Add;
    std::vector<GroundTerm> args;
  };

  static GroundTerm value(Value v, int sort) { return make(Node{Kind::Value, v, sort, -1, {}, {}}); }
  static GroundTerm cell(int c, std::vector<GroundTerm> args) {
    return make(Node{Kind::Cell, 0, -1, c, {}, std::move(args)});
  }
  static GroundTerm arith(ArithOp op, GroundTerm l, GroundTerm r) {
    return make(Node{Kind::Arith, 0, -1, -1, op, {std::move(l), std::move(r)}});
  }

  const Node& node() const { return *node_; }
  Kind kind() const { return node_->kind; }

  friend bool operator==(const GroundTerm& a, const GroundTerm& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.value == y.value && x.constant == y.constant && x.op == y.op &&
           x.args == y.args;
  }

 private:
  explicit GroundTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static GroundTerm make(Node n) { return GroundTerm(std::make_shared<const Node>(std::move(n))); }
  std::shared_ptr<const Node> node_;
};

// Finitary ground formula: atoms, #false, set-conjunctions, set-disjunctions
// and implications.
class GroundFormula {
 public:
  enum class Kind { False, Pred, Equal, Compare, And, Or, Implies };
  struct Node {
    Kind kind;
    int pred = -1;
    CompareOp cmp = CompareOp::Le;
    std::vector<GroundTerm> terms;
    std::vector<GroundFormula> subs;
  };

  static GroundFormula falsum() { return make(Node{Kind::False, -1, {}, {}, {}}); }
  static GroundFormula pred(int p, std::vector<GroundTerm> args) {
    return make(Node{Kind::Pred, p, {}, std::move(args), {}});
  }
  static GroundFormula equal(GroundTerm l, GroundTerm r) {
    return make(Node{Kind::Equal, -1, {}, {std::move(l), std::move(r)}, {}});
  }
  static GroundFormula compare(CompareOp op, GroundTerm l, GroundTerm r) {
    return make(Node{Kind::Compare, -1, op, {std::move(l), std::move(r)}, {}});
  }
  static GroundFormula conj(std::vector<GroundFormula> fs) {
    return make(Node{Kind::And, -1, {}, {}, std::move(fs)});
  }
  static GroundFormula disj(std::vector<GroundFormula> fs) {
    return make(Node{Kind::Or, -1, {}, {}, std::move(fs)});
  }
  static GroundFormula implies(GroundFormula a, GroundFormula b) {
    return make(Node{Kind::Implies, -1, {}, {}, {std::move(a), std::move(b)}});
  }

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  const std::vector<GroundFormula>& subs() const { return node_->subs; }
  bool is_atomic() const {
    return kind() == Kind::Pred || kind() == Kind::Equal || kind() == Kind::Compare;
  }

  friend bool operator==(const GroundFormula& a, const GroundFormula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.pred == y.pred && x.cmp == y.cmp && x.terms == y.terms &&
           x.subs == y.subs;
  }

 private:
  explicit GroundFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static GroundFormula make(Node n) {
    return GroundFormula(std::make_shared<const Node>(std::move(n)));
  }
  std::shared_ptr<const Node> node_;
};

namespace detail {

struct Grounder {
  const Vocabulary& vocab;
  const Bounds& bounds;
  std::map<std::string, std::pair<Value, int>> env;

  GroundTerm term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Variable: {
        auto it = env.find(t.name());
        if (it == env.end()) throw Error("free variable " + t.name() + " in grounding");
        return GroundTerm::value(it->second.first, it->second.second);
      }
      case TermKind::Numeral: return GroundTerm::value(t.value(), -1);
      case TermKind::Element: return GroundTerm::value(t.value(), vocab.sort_index(t.sort()));
      case TermKind::Apply: {
        auto c = vocab.find_constant(t.name());
        if (!c) throw Error("unknown function '" + t.name() + "'");
        std::vector<GroundTerm> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return GroundTerm::cell(*c, std::move(args));
      }
      case TermKind::Arith: return GroundTerm::arith(t.op(), term(t.left()), term(t.right()));
    }
    throw Error("bad term");
  }

  GroundFormula formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Falsum: return GroundFormula::falsum();
      case FormulaKind::Atom: {
        auto c = vocab.find_constant(f.pred());
        if (!c) throw Error("unknown predicate '" + f.pred() + "'");
        std::vector<GroundTerm> args;
        for (const auto& a : f.terms()) args.push_back(term(a));
        return GroundFormula::pred(*c, std::move(args));
      }
      case FormulaKind::Equal: return GroundFormula::equal(term(f.left_term()), term(f.right_term()));
      case FormulaKind::Compare:
        return GroundFormula::compare(f.cmp(), term(f.left_term()), term(f.right_term()));
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies: {
        std::vector<GroundFormula> subs;
        for (const auto& s : f.subs()) subs.push_back(formula(s));
        if (f.kind() == FormulaKind::And) return GroundFormula::conj(std::move(subs));
        if (f.kind() == FormulaKind::Or) return GroundFormula::disj(std::move(subs));
        return GroundFormula::implies(subs[0], subs[1]);
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        int s = vocab.sort_index(f.bound().sort);
        std::optional<Range> u = vocab.sort(s).universe;
        if (auto it = bounds.variables.find(f.bound().name);
            it != bounds.variables.end() && vocab.sort(s).kind == SortKind::Integer)
          u = it->second;
        if (!u)
          throw Error("quantifier over unbounded sort '" + f.bound().sort + "' for variable " +
                      f.bound().name + " needs bounds");
        auto saved = env.find(f.bound().name) != env.end()
                         ? std::optional(env[f.bound().name])
                         : std::nullopt;
        std::vector<GroundFormula> instances;
        for (Value v = u->lo; v <= u->hi; ++v) {
          env[f.bound().name] = {v, s};
          instances.push_back(formula(f.body()));
        }
        if (saved) env[f.bound().name] = *saved;
        else env.erase(f.bound().name);
        return f.kind() == FormulaKind::Forall ? GroundFormula::conj(std::move(instances))
                                               : GroundFormula::disj(std::move(instances));
      }
    }
    throw Error("bad formula");
  }
};

}  // namespace detail

// Grounding of a sentence relative to the universes of `vocab`.
inline GroundFormula ground(const Formula& f, const Vocabulary& vocab, const Bounds& bounds = {}) {
  detail::Grounder g{vocab, bounds, {}};
  return g.formula(f);
}

inline GroundFormula ground(const Formula& f, const Interpretation& interp,
                            const Bounds& bounds = {}) {
  return ground(f, interp.vocab(), bounds);
}

inline Value evaluate(const Interpretation& I, const GroundTerm& t) {
  const auto& n = t.node();
  switch (n.kind) {
    case GroundTerm::Kind::Value: return n.value;
    case GroundTerm::Kind::Arith: {
      Value l = evaluate(I, n.args[0]);
      Value r = evaluate(I, n.args[1]);
      switch (n.op) {
        case ArithOp::Add: return l + r;
        case ArithOp::Sub: return l - r;
        case ArithOp::Mul: return l * r;
      }
      return 0;
    }
    case GroundTerm::Kind::Cell: {
      std::vector<Value> args;
      args.reserve(n.args.size());
      for (const auto& a : n.args) args.push_back(evaluate(I, a));
      auto cell = I.vocab().cell_index(n.constant, args);
      if (!cell)
        throw EvalError("argument outside the universe of '" + I.vocab().constant(n.constant).name + "'");
      return I.get(n.constant, *cell);
    }
  }
  return 0;
}

inline bool satisfies(const Interpretation& I, const GroundFormula& f) {
  const auto& n = f.node();
  switch (n.kind) {
    case GroundFormula::Kind::False: return false;
    case GroundFormula::Kind::Pred: {
      std::vector<Value> args;
      args.reserve(n.terms.size());
      for (const auto& a : n.terms) args.push_back(evaluate(I, a));
      auto cell = I.vocab().cell_index(n.pred, args);
      if (!cell)
        throw EvalError("argument outside the universe of '" + I.vocab().constant(n.pred).name + "'");
      return I.get(n.pred, *cell) != 0;
    }
    case GroundFormula::Kind::Equal: return evaluate(I, n.terms[0]) == evaluate(I, n.terms[1]);
    case GroundFormula::Kind::Compare: {
      Value l = evaluate(I, n.terms[0]);
      Value r = evaluate(I, n.terms[1]);
      switch (n.cmp) {
        case CompareOp::Le: return l <= r;
        case CompareOp::Lt: return l < r;
        case CompareOp::Ge: return l >= r;
        case CompareOp::Gt: return l > r;
      }
      return false;
    }
    case GroundFormula::Kind::And:
      return std::all_of(n.subs.begin(), n.subs.end(), [&](const auto& s) { return satisfies(I, s); });
    case GroundFormula::Kind::Or:
      return std::any_of(n.subs.begin(), n.subs.end(), [&](const auto& s) { return satisfies(I, s); });
    case GroundFormula::Kind::Implies: return !satisfies(I, n.subs[0]) || satisfies(I, n.subs[1]);
  }
  return false;
}

// Every subformula falsified by I becomes #false; satisfied ones recurse.
inline GroundFormula reduct(const GroundFormula& f, const Interpretation& I) {
  if (!satisfies(I, f)) return GroundFormula::falsum();
  if (f.is_atomic() || f.kind() == GroundFormula::Kind::False) return f;
  std::vector<GroundFormula> subs;
  subs.reserve(f.subs().size());
  for (const auto& s : f.subs()) subs.push_back(reduct(s, I));
  switch (f.kind()) {
    case GroundFormula::Kind::And: return GroundFormula::conj(std::move(subs));
    case GroundFormula::Kind::Or: return GroundFormula::disj(std::move(subs));
    default: return GroundFormula::implies(subs[0], subs[1]);
  }
}

// J <^C I with C the intensional constants of the shared vocabulary, or the
// explicit list when one is given.
inline bool less_than(const Interpretation& J, const Interpretation& I,
                      const std::vector<std::string>& intensional) {
  if (!J.vocab().same_universe(I.vocab())) throw Error("interpretations have different universes");
  const Vocabulary& v = I.vocab();
  bool differs = false;
  for (std::size_t ci = 0; ci < v.constants().size(); ++ci) {
    int c = static_cast<int>(ci);
    const ConstantInfo& info = v.constant(c);
    bool in_c = std::find(intensional.begin(), intensional.end(), info.name) != intensional.end();
    for (std::size_t cell = 0; cell < info.cells; ++cell) {
      Value j = J.get(c, cell);
      Value i = I.get(c, cell);
      if (j == i) continue;
      if (!in_c) return false;
      if (info.predicate && j && !i) return false;
      differs = true;
    }
  }
  return differs;
}

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const GroundTerm& t, const Vocabulary& vocab) {
  const auto& n = t.node();
  switch (n.kind) {
    case GroundTerm::Kind::Value:
      return n.sort >= 0 ? vocab.value_name(n.sort, n.value) : std::to_string(n.value);
    case GroundTerm::Kind::Cell: {
      std::string out = vocab.constant(n.constant).name;
      if (n.args.empty()) return out;
      out += "(";
      for (std::size_t i = 0; i < n.args.size(); ++i)
        out += (i ? ", " : "") + to_string(n.args[i], vocab);
      return out + ")";
    }
    case GroundTerm::Kind::Arith: {
      auto prec = [](const GroundTerm& g) {
        if (g.kind() != GroundTerm::Kind::Arith) return 3;
        return g.node().op == ArithOp::Mul ? 2 : 1;
      };
      int p = prec(t);
      std::string l = to_string(n.args[0], vocab);
      std::string r = to_string(n.args[1], vocab);
      if (prec(n.args[0]) < p) l = "(" + l + ")";
      if (prec(n.args[1]) <= p) r = "(" + r + ")";
      return l + " " + detail::op_text(n.op) + " " + r;
    }
  }
  return "?";
}

// Parenthesization follows the formula printer; `bare` drops the outer
// parentheses of a top-level disjunction or conjunction.
inline std::string to_string(const GroundFormula& f, const Vocabulary& vocab, bool bare = false) {
  const auto& n = f.node();
  auto list = [&](const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < n.subs.size(); ++i)
      out += (i ? sep : "") + to_string(n.subs[i], vocab);
    return out;
  };
  switch (n.kind) {
    case GroundFormula::Kind::False: return "#false";
    case GroundFormula::Kind::Pred: {
      std::string out = vocab.constant(n.pred).name;
      if (n.terms.empty()) return out;
      out += "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i)
        out += (i ? ", " : "") + to_string(n.terms[i], vocab);
      return out + ")";
    }
    case GroundFormula::Kind::Equal:
      return to_string(n.terms[0], vocab) + " = " + to_string(n.terms[1], vocab);
    case GroundFormula::Kind::Compare:
      return to_string(n.terms[0], vocab) + " " + detail::op_text(n.cmp) + " " +
             to_string(n.terms[1], vocab);
    case GroundFormula::Kind::And:
      if (n.subs.size() < 2) return "#and(" + list("") + ")";
      return bare ? list(", ") : "(" + list(", ") + ")";
    case GroundFormula::Kind::Or:
      if (n.subs.size() < 2) return "#or(" + list("") + ")";
      return bare ? list(" | ") : "(" + list(" | ") + ")";
    case GroundFormula::Kind::Implies:
      if (n.subs[1].kind() == GroundFormula::Kind::False) return "not " + to_string(n.subs[0], vocab);
      return "(" + to_string(n.subs[0], vocab) + " -> " + to_string(n.subs[1], vocab) + ")";
  }
  return "?";
}

// Rule-style listing of a ground formula: the top-level conjunction is
// flattened, implications print as `H :- G.`, and conjuncts whose antecedent
// is #false (trivially satisfied) are omitted.
inline std::vector<std::string> ground_rules_text(const GroundFormula& f, const Vocabulary& vocab) {
  std::vector<std::string> out;
  std::vector<GroundFormula> flat;
  auto flatten = [&](auto&& self, const GroundFormula& g) -> void {
    if (g.kind() == GroundFormula::Kind::And) {
      for (const auto& s : g.subs()) self(self, s);
    } else {
      flat.push_back(g);
    }
  };
  flatten(flatten, f);
  for (const auto& g : flat) {
    if (g.kind() == GroundFormula::Kind::Implies) {
      const auto& a = g.subs()[0];
      const auto& h = g.subs()[1];
      if (a.kind() == GroundFormula::Kind::False) continue;
      if (h.kind() == GroundFormula::Kind::False) {
        out.push_back(":- " + to_string(a, vocab, true) + ".");
        continue;
      }
      out.push_back(to_string(h, vocab, true) + " :- " + to_string(a, vocab, true) + ".");
    } else {
      out.push_back(to_string(g, vocab, true) + ".");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stability and enumeration

struct StabilityResult {
  bool model = false;   // I satisfies the formula
  bool stable = false;
  std::optional<Interpretation> witness;  // a J <^C I satisfying the reduct
};

namespace detail {

struct CellRef {
  int constant;
  std::size_t cell;
};

inline std::vector<CellRef> intensional_cells(const Vocabulary& v) {
  std::vector<CellRef> out;
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    const auto& info = v.constant(static_cast<int>(c));
    if (!info.intensional) continue;
    for (std::size_t i = 0; i < info.cells; ++i) out.push_back({static_cast<int>(c), i});
  }
  return out;
}

inline Range domain_of(const Vocabulary& v, int c) {
  auto d = v.cell_domain(c);
  if (!d)
    throw Error("constant '" + v.constant(c).name + "' ranges over unbounded integers; give bounds");
  return *d;
}

// Odometer over cell values; returns false after the last combination.
template <class Lo, class Hi>
bool next_assignment(Interpretation& I, const std::vector<CellRef>& cells, Lo lo, Hi hi) {
  for (std::size_t k = cells.size(); k-- > 0;) {
    const CellRef& r = cells[k];
    Value v = I.get(r.constant, r.cell);
    if (v < hi(k)) {
      I.set(r.constant, r.cell, v + 1);
      return true;
    }
    I.set(r.constant, r.cell, lo(k));
  }
  return false;
}

}  // namespace detail

// Stability of I for an already grounded sentence.
inline StabilityResult check_stable(const Interpretation& I, const GroundFormula& g) {
  StabilityResult res;
  res.model = satisfies(I, g);
  if (!res.model) return res;
  GroundFormula red = reduct(g, I);
  const Vocabulary& v = I.vocab();
  auto cells = detail::intensional_cells(v);
  std::vector<Value> lo(cells.size()), hi(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& info = v.constant(cells[k].constant);
    if (info.predicate) {
      lo[k] = 0;
      hi[k] = I.get(cells[k].constant, cells[k].cell);
    } else {
      Range d = detail::domain_of(v, cells[k].constant);
      lo[k] = d.lo;
      hi[k] = d.hi;
    }
  }
  Interpretation J = I;
  for (std::size_t k = 0; k < cells.size(); ++k) J.set(cells[k].constant, cells[k].cell, lo[k]);
  do {
    if (J == I) continue;
    if (satisfies(J, red)) {
      res.witness = J;
      return res;
    }
  } while (detail::next_assignment(J, cells, [&](std::size_t k) { return lo[k]; },
                                   [&](std::size_t k) { return hi[k]; }));
  res.stable = true;
  return res;
}

inline StabilityResult check_stable(const Interpretation& I, const Formula& f,
                                    const Bounds& bounds = {}) {
  return check_stable(I, ground(f, I, bounds));
}

inline bool is_stable(const Interpretation& I, const Formula& f, const Bounds& bounds = {}) {
  return check_stable(I, f, bounds).stable;
}

inline bool is_stable(const Interpretation& I, const Program& p, const Bounds& bounds = {}) {
  return is_stable(I, program_formula(p), bounds);
}

struct EnumerateStats {
  double candidates = 0;
  std::size_t models = 0;
};

struct EnumerateOptions {
  double max_candidates = 1e7;
  bool stable = true;  // false: enumerate classical models instead
  EnumerateStats* stats = nullptr;
};

// All stable (or classical) models of a sentence in canonical order. Fixed
// cells are held at their values; every other cell ranges over its domain.
inline std::vector<Interpretation> enumerate_models(const VocabularyPtr& vocab, const Formula& f,
                                                    const Fixings& fixings, const Bounds& bounds,
                                                    const EnumerateOptions& opts = {}) {
  Interpretation I(vocab);
  std::vector<detail::CellRef> free;
  std::vector<Value> lo, hi;
  double candidates = 1;
  for (const auto& [key, value] : fixings) {
    auto cell = vocab->find_cell(key);
    if (!cell) throw Error("unknown cell '" + key + "' in fixings");
    I.set(cell->first, cell->second, value);
  }
  for (std::size_t c = 0; c < vocab->constants().size(); ++c) {
    const auto& info = vocab->constant(static_cast<int>(c));
    for (std::size_t i = 0; i < info.cells; ++i) {
      if (fixings.count(vocab->cell_name(static_cast<int>(c), i))) continue;
      Range d = detail::domain_of(*vocab, static_cast<int>(c));
      free.push_back({static_cast<int>(c), i});
      lo.push_back(d.lo);
      hi.push_back(d.hi);
      I.set(static_cast<int>(c), i, d.lo);
      candidates *= static_cast<double>(d.hi - d.lo + 1);
    }
  }
  if (candidates > opts.max_candidates)
    throw CapExceeded("oracle would examine " + std::to_string(static_cast<long double>(candidates)) +
                      " candidate interpretations, more than the cap of " +
                      std::to_string(static_cast<long double>(opts.max_candidates)));
  GroundFormula g = ground(f, *vocab, bounds);
  std::vector<Interpretation> out;
  do {
    bool keep = opts.stable ? check_stable(I, g).stable : satisfies(I, g);
    if (keep) out.push_back(I);
  } while (detail::next_assignment(I, free, [&](std::size_t k) { return lo[k]; },
                                   [&](std::size_t k) { return hi[k]; }));
  std::sort(out.begin(), out.end(), [](const Interpretation& a, const Interpretation& b) {
    return a.assignment() < b.assignment();
  });
  if (opts.stats) *opts.stats = EnumerateStats{candidates, out.size()};
  return out;
}

inline std::vector<Interpretation> enumerate_stable_models(const Program& p, const Bounds& bounds,
                                                           const Fixings& fixings = {},
                                                           const EnumerateOptions& opts = {}) {
  Fixings all = p.fixings;
  for (const auto& [k, v] : fixings) all[k] = v;
  return enumerate_models(Vocabulary::build(p.signature, bounds), program_formula(p), all, bounds,
                          opts);
}

}  // namespace aspmt

#endif  // ASPMT_GROUND_HPP
