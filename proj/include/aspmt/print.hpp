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

// Pretty-printing in the input language. Every printed formula re-parses to a
// structurally equal formula: compound formulas are always printed either
// parenthesized or behind a keyword.

#ifndef ASPMT_PRINT_HPP
#define ASPMT_PRINT_HPP

#include <sstream>
#include <string>

#include "aspmt/syntax.hpp"

namespace aspmt {

namespace detail {

inline int precedence(const Term& t) {
  if (t.kind() != TermKind::Arith) return 3;
  return t.op() == ArithOp::Mul ? 2 : 1;
}

inline const char* op_text(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
  }
  return "?";
}

inline const char* op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Le: return "<=";
    case CompareOp::Lt: return "<";
    case CompareOp::Ge: return ">=";
    case CompareOp::Gt: return ">";
  }
  return "?";
}

}  // namespace detail

inline std::string to_string(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable: return t.name();
    case TermKind::Numeral: return std::to_string(t.value());
    case TermKind::Element: return t.name();
    case TermKind::Apply: {
      if (t.args().empty()) return t.name();
      std::string out = t.name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args()[i]);
      }
      return out + ")";
    }
    case TermKind::Arith: {
      int p = detail::precedence(t);
      std::string l = to_string(t.left());
      std::string r = to_string(t.right());
      if (detail::precedence(t.left()) < p) l = "(" + l + ")";
      if (detail::precedence(t.right()) <= p) r = "(" + r + ")";
      return l + " " + detail::op_text(t.op()) + " " + r;
    }
  }
  return "?";
}

inline std::string to_string(const Formula& f);

namespace detail {

inline std::string join(const std::vector<Formula>& fs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += sep;
    out += to_string(fs[i]);
  }
  return out;
}

inline std::string atom_text(const std::string& pred, const std::vector<Term>& args) {
  if (args.empty()) return pred;
  std::string out = pred + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(args[i]);
  }
  return out + ")";
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Falsum: return "#false";
    case FormulaKind::Atom: return detail::atom_text(f.pred(), f.terms());
    case FormulaKind::Equal: return to_string(f.left_term()) + " = " + to_string(f.right_term());
    case FormulaKind::Compare:
      return to_string(f.left_term()) + " " + detail::op_text(f.cmp()) + " " +
             to_string(f.right_term());
    case FormulaKind::And:
      if (f.subs().size() < 2) return "#and(" + detail::join(f.subs(), "") + ")";
      return "(" + detail::join(f.subs(), ", ") + ")";
    case FormulaKind::Or:
      if (f.subs().size() < 2) return "#or(" + detail::join(f.subs(), "") + ")";
      return "(" + detail::join(f.subs(), " | ") + ")";
    case FormulaKind::Implies:
      if (f.antecedent().is_falsum() && f.consequent().is_falsum()) return "#true";
      if (f.consequent().is_falsum()) return "not " + to_string(f.antecedent());
      return "(" + to_string(f.antecedent()) + " -> " + to_string(f.consequent()) + ")";
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::string(f.kind() == FormulaKind::Forall ? "#forall " : "#exists ") +
             f.bound().name + ":" + f.bound().sort + " (" + to_string(f.body()) + ")";
  }
  return "?";
}

// Rule body as printed after ":-"; an empty string for facts.
inline std::string body_text(const Formula& body) {
  if (body.kind() == FormulaKind::And && body.subs().empty()) return "";
  if (body.kind() == FormulaKind::And && body.subs().size() >= 2)
    return detail::join(body.subs(), ", ");
  return to_string(body);
}

inline std::string to_string(const Rule& r) {
  std::string head;
  switch (r.head_kind) {
    case HeadKind::Atom:
    case HeadKind::FunctionEq: head = to_string(r.head); break;
    case HeadKind::Choice: head = "{" + to_string(r.head) + "}"; break;
    case HeadKind::Falsum: break;
  }
  std::string body = body_text(r.body);
  if (r.head_kind == HeadKind::Falsum) return ":- " + (body.empty() ? "#and()" : body) + ".";
  if (body.empty()) return head + ".";
  return head + " :- " + body + ".";
}

// Value of a cell of sort `sort` in source form.
inline std::string value_text(const Signature& sig, const std::string& sort, Value v) {
  const Sort* s = sig.find_sort(sort);
  if (s && s->kind == SortKind::Enumerated && v >= 0 &&
      v < static_cast<Value>(s->elements.size()))
    return s->elements[static_cast<std::size_t>(v)];
  return std::to_string(v);
}

inline std::string cell_constant(const std::string& key) { return key.substr(0, key.find('(')); }

inline std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  for (const auto& s : sig.sorts) {
    out << "sort " << s.name << " = ";
    if (s.kind == SortKind::Range) {
      out << s.lo << ".." << s.hi;
    } else if (s.kind == SortKind::Enumerated) {
      out << "{";
      for (std::size_t i = 0; i < s.elements.size(); ++i) out << (i ? ", " : "") << s.elements[i];
      out << "}";
    } else {
      out << kIntSort;
    }
    out << ".\n";
  }
  auto args_text = [](const std::vector<std::string>& args) {
    std::string a;
    if (args.empty()) return a;
    a = "(";
    for (std::size_t i = 0; i < args.size(); ++i) a += (i ? ", " : "") + args[i];
    return a + ")";
  };
  for (const auto& [name, args] : sig.predicates) out << "pred " << name << args_text(args) << ".\n";
  for (const auto& [name, decl] : sig.functions)
    out << "func " << name << args_text(decl.args) << " -> " << decl.value << ".\n";
  if (!sig.intensional.empty()) {
    out << "intensional ";
    for (std::size_t i = 0; i < sig.intensional.size(); ++i)
      out << (i ? ", " : "") << sig.intensional[i];
    out << ".\n";
  }
  return out.str();
}

inline std::string print_fixings(const Signature& sig, const Fixings& fixings) {
  std::ostringstream out;
  for (const auto& [key, v] : fixings) {
    std::string name = cell_constant(key);
    if (const FunctionDecl* fn = sig.find_function(name)) {
      out << key << " = " << value_text(sig, fn->value, v) << ".\n";
    } else {
      out << (v ? "" : ":- ") << key << ".\n";
    }
  }
  return out.str();
}

inline std::string print_program(const Program& p) {
  std::string out = print_signature(p.signature) + print_fixings(p.signature, p.fixings);
  for (const auto& r : p.rules) out += to_string(r) + "\n";
  return out;
}

}  // namespace aspmt

#endif  // ASPMT_PRINT_HPP
