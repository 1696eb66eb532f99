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

// SMT-LIB 2 emission and an external solver driven over a pipe.
//
// Finite sorts become Int with range assertions, enumerated elements are
// numbered from 0, predicates become Bool. A constant of positive arity is
// expanded into one SMT constant per argument tuple, named after its cell
// ("f(1,a)", quoted as |f(1,a)|).

#ifndef ASPMT_SMT_HPP
#define ASPMT_SMT_HPP

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspmt/completion.hpp"
#include "aspmt/error.hpp"
#include "aspmt/interpretation.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

enum class EmitMode { Expanded, Quantified };

struct EmitOptions {
  EmitMode mode = EmitMode::Expanded;
  Bounds bounds;    // integer bounds, expanded mode only
  Fixings fixings;  // added to the theory's own fixings
};

struct NameMap {
  std::map<std::string, std::string> to_smt;   // cell -> symbol as printed
  std::map<std::string, std::string> to_cell;  // unquoted symbol -> cell
};

struct SmtSymbol {
  std::string cell;
  std::string symbol;  // as printed
  int constant = 0;
  std::size_t index = 0;
  bool boolean = false;
  std::optional<Range> range;
};

struct SmtScript {
  std::string logic = "QF_LIA";
  std::vector<std::string> declarations;
  std::vector<std::string> assertions;
  NameMap names;
  std::vector<SmtSymbol> symbols;
  VocabularyPtr vocab;

  std::string text() const {
    std::string out = "(set-logic " + logic + ")\n";
    for (const auto& d : declarations) out += d + "\n";
    for (const auto& a : assertions) out += "(assert " + a + ")\n";
    return out;
  }
  std::string query() const { return text() + "(check-sat)\n(get-model)\n"; }
};

using SmtModel = std::map<std::string, Value>;  // unquoted symbol -> value

namespace detail {

inline const std::set<std::string>& smt_reserved() {
  static const std::set<std::string> words = {
      "!", "_", "=>", "and", "as", "assert", "abs", "BINARY", "Bool", "check-sat", "declare-const",
      "declare-fun", "define-fun", "DECIMAL", "distinct", "div", "exists", "exit", "false",
      "forall", "get-model", "HEXADECIMAL", "Int", "ite", "let", "match", "mod", "not", "NUMERAL",
      "or", "par", "pop", "push", "Real", "set-logic", "set-option", "STRING", "true", "xor"};
  return words;
}

inline bool simple_symbol(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (unsigned char c : s)
    if (!std::isalnum(c) && !std::strchr("~!@$%^&*_-+=<>.?/", c)) return false;
  return !smt_reserved().count(s);
}

inline std::string smt_int(Value v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); }

inline std::string range_assert(const std::string& sym, Range r) {
  return "(and (<= " + smt_int(r.lo) + " " + sym + ") (<= " + sym + " " + smt_int(r.hi) + "))";
}

inline std::string nary(const char* op, const std::vector<std::string>& xs, const char* empty) {
  if (xs.empty()) return empty;
  if (xs.size() == 1) return xs[0];
  std::string out = std::string("(") + op;
  for (const auto& x : xs) out += " " + x;
  return out + ")";
}

struct Emitter {
  const Vocabulary& vocab;
  const EmitOptions& opts;
  const std::vector<SmtSymbol>& symbols;
  std::vector<std::size_t> first_symbol;  // per constant
  struct Binding {
    std::optional<Value> value;
    std::string text;
  };
  std::map<std::string, Binding> env;
  bool quantified = false;
  bool nonlinear = false;

  std::optional<Value> static_value(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Numeral:
      case TermKind::Element: return t.value();
      case TermKind::Variable: {
        auto it = env.find(t.name());
        return it == env.end() ? std::nullopt : it->second.value;
      }
      case TermKind::Arith: {
        auto l = static_value(t.left());
        auto r = static_value(t.right());
        if (!l || !r) return std::nullopt;
        if (t.op() == ArithOp::Add) return *l + *r;
        if (t.op() == ArithOp::Sub) return *l - *r;
        return *l * *r;
      }
      case TermKind::Apply: return std::nullopt;
    }
    return std::nullopt;
  }

  const std::string& symbol(int c, std::size_t cell) const {
    return symbols[first_symbol[static_cast<std::size_t>(c)] + cell].symbol;
  }

  // The cell selected by the arguments; an ite chain when they are not known
  // statically. Arguments outside the universe select the last cell.
  std::string cell_ref(const std::string& name, const std::vector<Term>& args) {
    auto c = vocab.find_constant(name);
    if (!c) throw Error("unknown constant '" + name + "' in emission");
    const ConstantInfo& info = vocab.constant(*c);
    std::vector<std::optional<Value>> known;
    std::vector<std::string> texts;
    bool all_known = true;
    for (const auto& a : args) {
      known.push_back(static_value(a));
      texts.push_back(term(a));
      all_known = all_known && known.back().has_value();
    }
    if (all_known) {
      std::vector<Value> vs;
      for (const auto& k : known) vs.push_back(*k);
      auto cell = vocab.cell_index(*c, vs);
      return symbol(*c, cell ? *cell : info.cells - 1);
    }
    std::vector<std::pair<std::string, std::string>> branches;
    for (std::size_t cell = 0; cell < info.cells; ++cell) {
      auto cargs = vocab.cell_args(*c, cell);
      bool match = true;
      std::vector<std::string> conds;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (known[i]) {
          match = match && *known[i] == cargs[i];
        } else {
          conds.push_back("(= " + texts[i] + " " + smt_int(cargs[i]) + ")");
        }
      }
      if (match) branches.push_back({nary("and", conds, "true"), symbol(*c, cell)});
    }
    if (branches.empty()) return symbol(*c, info.cells - 1);
    std::string out = branches.back().second;
    for (std::size_t i = branches.size() - 1; i-- > 0;)
      out = "(ite " + branches[i].first + " " + branches[i].second + " " + out + ")";
    return out;
  }

  std::string term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Numeral:
      case TermKind::Element: return smt_int(t.value());
      case TermKind::Variable: {
        auto it = env.find(t.name());
        if (it == env.end()) throw Error("free variable " + t.name() + " in emission");
        return it->second.text;
      }
      case TermKind::Apply: return cell_ref(t.name(), t.args());
      case TermKind::Arith: {
        if (auto v = static_value(t)) return smt_int(*v);
        if (t.op() == ArithOp::Mul && !static_value(t.left()) && !static_value(t.right())) nonlinear = true;
        const char* op = t.op() == ArithOp::Add ? "+" : t.op() == ArithOp::Sub ? "-" : "*";
        return std::string("(") + op + " " + term(t.left()) + " " + term(t.right()) + ")";
      }
    }
    return "?";
  }

  std::optional<Range> variable_range(const Var& v) const {
    int s = vocab.sort_index(v.sort);
    const SortInfo& info = vocab.sort(s);
    if (info.kind == SortKind::Integer) {
      if (auto it = opts.bounds.variables.find(v.name); it != opts.bounds.variables.end()) return it->second;
      if (opts.mode == EmitMode::Quantified) return std::nullopt;
    }
    return info.universe;
  }

  std::string formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Falsum: return "false";
      case FormulaKind::Atom: return cell_ref(f.pred(), f.terms());
      case FormulaKind::Equal: return "(= " + term(f.left_term()) + " " + term(f.right_term()) + ")";
      case FormulaKind::Compare:
        return std::string("(") + detail::op_text(f.cmp()) + " " + term(f.left_term()) + " " +
               term(f.right_term()) + ")";
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<std::string> xs;
        for (const auto& s : f.subs()) xs.push_back(formula(s));
        return f.kind() == FormulaKind::And ? nary("and", xs, "true") : nary("or", xs, "false");
      }
      case FormulaKind::Implies:
        if (f.is_top()) return "true";
        if (f.is_negation()) return "(not " + formula(f.antecedent()) + ")";
        return "(=> " + formula(f.antecedent()) + " " + formula(f.consequent()) + ")";
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const Var& v = f.bound();
        bool all = f.kind() == FormulaKind::Forall;
        auto range = variable_range(v);
        auto saved = env.count(v.name) ? std::optional(env.at(v.name)) : std::nullopt;
        std::string out;
        if (opts.mode == EmitMode::Expanded) {
          if (!range)
            throw Error("quantifier over unbounded sort '" + v.sort + "' for " + v.name +
                        "; give --bounds or use quantified mode");
          std::vector<std::string> xs;
          for (Value x = range->lo; x <= range->hi; ++x) {
            env.insert_or_assign(v.name, Binding{x, smt_int(x)});
            xs.push_back(formula(f.body()));
          }
          out = all ? nary("and", xs, "true") : nary("or", xs, "false");
        } else {
          quantified = true;
          std::string sym = "$" + v.name;
          env.insert_or_assign(v.name, Binding{std::nullopt, sym});
          std::string body = formula(f.body());
          std::string q = all ? "forall" : "exists";
          if (range) {
            std::string g = range_assert(sym, *range);
            body = all ? "(=> " + g + " " + body + ")" : "(and " + g + " " + body + ")";
          }
          out = "(" + q + " ((" + sym + " Int)) " + body + ")";
        }
        if (saved) env.insert_or_assign(v.name, *saved);
        else env.erase(v.name);
        return out;
      }
    }
    return "?";
  }
};

}  // namespace detail

// The completed theory as an SMT-LIB script: declarations, range assertions,
// fixings, then the simplified forward and backward half of every
// biconditional, then the constraints.
inline SmtScript emit(const CompletedTheory& theory, const EmitOptions& opts = {}) {
  Bounds vb;
  if (opts.mode == EmitMode::Expanded) vb = opts.bounds;
  SmtScript s;
  s.vocab = Vocabulary::build(theory.signature, vb);
  const Vocabulary& v = *s.vocab;

  std::vector<std::size_t> first;
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    const ConstantInfo& info = v.constant(static_cast<int>(c));
    first.push_back(s.symbols.size());
    for (std::size_t i = 0; i < info.cells; ++i) {
      SmtSymbol sym;
      sym.cell = v.cell_name(static_cast<int>(c), i);
      sym.symbol = detail::simple_symbol(sym.cell) ? sym.cell : "|" + sym.cell + "|";
      sym.constant = static_cast<int>(c);
      sym.index = i;
      sym.boolean = info.predicate;
      if (!info.predicate) sym.range = v.sort(info.value_sort).universe;
      s.names.to_smt[sym.cell] = sym.symbol;
      s.names.to_cell[sym.cell] = sym.cell;
      s.declarations.push_back("(declare-const " + sym.symbol + (sym.boolean ? " Bool)" : " Int)"));
      s.symbols.push_back(sym);
    }
  }
  for (const auto& sym : s.symbols)
    if (sym.range) s.assertions.push_back(detail::range_assert(sym.symbol, *sym.range));

  Fixings fixings = theory.fixings;
  for (const auto& [k, val] : opts.fixings) fixings[k] = val;
  for (const auto& [key, val] : fixings) {
    auto it = s.names.to_smt.find(key);
    if (it == s.names.to_smt.end()) throw Error("unknown cell '" + key + "' in fixings");
    auto cell = v.find_cell(key);
    if (v.constant(cell->first).predicate)
      s.assertions.push_back(val ? it->second : "(not " + it->second + ")");
    else
      s.assertions.push_back("(= " + it->second + " " + detail::smt_int(val) + ")");
  }

  detail::Emitter e{v, opts, s.symbols, first, {}, false, false};
  for (const auto& d : theory.definitions) {
    auto [fw, bw] = split_simplified(d, theory.signature);
    for (const auto& f : {fw, bw}) {
      std::string a = e.formula(f);
      if (a != "true") s.assertions.push_back(a);
    }
  }
  for (const auto& c : theory.constraints) {
    std::string a = e.formula(simplify(c, theory.signature));
    if (a != "true") s.assertions.push_back(a);
  }
  s.logic = std::string(e.quantified ? "" : "QF_") + (e.nonlinear ? "NIA" : "LIA");
  return s;
}

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
  bool list = false;
  std::string atom;
  std::vector<SExpr> items;
};

namespace detail {

inline std::vector<SExpr> parse_sexprs(const std::string& text) {
  std::vector<SExpr> stack(1);
  stack[0].list = true;
  std::size_t depth = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      stack.push_back(SExpr{true, "", {}});
      ++depth;
      ++i;
    } else if (c == ')') {
      if (depth == 0) throw Error("unbalanced ')' in solver output");
      SExpr done = std::move(stack.back());
      stack.pop_back();
      stack.back().items.push_back(std::move(done));
      --depth;
      ++i;
    } else if (c == '|') {
      std::size_t j = text.find('|', i + 1);
      if (j == std::string::npos) throw Error("unterminated quoted symbol in solver output");
      stack.back().items.push_back(SExpr{false, text.substr(i + 1, j - i - 1), {}});
      i = j + 1;
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < text.size()) {
        if (text[j] == '"') {
          if (j + 1 < text.size() && text[j + 1] == '"') {
            s += '"';
            j += 2;
            continue;
          }
          break;
        }
        s += text[j++];
      }
      if (j >= text.size()) throw Error("unterminated string in solver output");
      stack.back().items.push_back(SExpr{false, s, {}});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')' && text[j] != ';')
        ++j;
      stack.back().items.push_back(SExpr{false, text.substr(i, j - i), {}});
      i = j;
    }
  }
  if (depth != 0) throw Error("unbalanced '(' in solver output");
  return std::move(stack[0].items);
}

inline std::optional<Value> sexpr_value(const SExpr& e) {
  if (!e.list) {
    if (e.atom == "true") return 1;
    if (e.atom == "false") return 0;
    if (!e.atom.empty() && std::all_of(e.atom.begin(), e.atom.end(), ::isdigit)) return std::stoll(e.atom);
    return std::nullopt;
  }
  if (e.items.size() == 2 && !e.items[0].list && e.items[0].atom == "-")
    if (auto v = sexpr_value(e.items[1])) return -*v;
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Solver process

enum class SolverStatus { Sat, Unsat, Unknown, Failure };

struct SolverResult {
  SolverStatus status = SolverStatus::Failure;
  SmtModel model;
  std::string diagnostic;
  std::string output;
};

struct SolverOptions {
  std::string command;  // empty: $ASPMT_SOLVER, else "z3 -in"
  double timeout_seconds = 60;
};

inline std::string default_solver_command() {
  const char* env = std::getenv("ASPMT_SOLVER");
  return env && *env ? env : "z3 -in";
}

// True when the first word of the command names an executable.
inline bool solver_available(const std::string& command) {
  std::string exe = command.substr(0, command.find(' '));
  if (exe.empty()) return false;
  if (exe.find('/') != std::string::npos) return access(exe.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  std::string p = path ? path : "/usr/bin:/bin";
  std::size_t start = 0;
  while (start <= p.size()) {
    std::size_t end = p.find(':', start);
    if (end == std::string::npos) end = p.size();
    std::string dir = p.substr(start, end - start);
    if (!dir.empty() && access((dir + "/" + exe).c_str(), X_OK) == 0) return true;
    start = end + 1;
  }
  return false;
}

namespace detail {

struct ProcessOutput {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;
};

// Runs `/bin/sh -c command` with `input` on stdin; stdout and stderr are
// captured together.
inline ProcessOutput run_process(const std::string& command, const std::string& input, double timeout) {
  char path[] = "/tmp/aspmt-XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) throw Error("cannot create temporary file for the solver input");
  std::size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(fd, input.data() + written, input.size() - written);
    if (n <= 0) {
      close(fd);
      unlink(path);
      throw Error("cannot write the solver input");
    }
    written += static_cast<std::size_t>(n);
  }
  lseek(fd, 0, SEEK_SET);
  int pipefd[2];
  if (pipe(pipefd) != 0) {
    close(fd);
    unlink(path);
    throw Error("cannot create a pipe for the solver");
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(fd);
    unlink(path);
    close(pipefd[0]);
    close(pipefd[1]);
    throw Error("cannot start the solver");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fd, 0);
    dup2(pipefd[1], 1);
    dup2(pipefd[1], 2);
    close(fd);
    close(pipefd[0]);
    close(pipefd[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(fd);
  unlink(path);
  close(pipefd[1]);

  ProcessOutput out;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout);
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      out.timed_out = true;
      break;
    }
    pollfd p{pipefd[0], POLLIN, 0};
    int r = poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) continue;
    ssize_t n = read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    out.output.append(buf, static_cast<std::size_t>(n));
  }
  close(pipefd[0]);
  if (out.timed_out) kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);
  return out;
}

}  // namespace detail

// Sends `query` (which must end with check-sat and get-model) to the solver.
inline SolverResult run_solver_text(const std::string& query, const SolverOptions& opts = {}) {
  std::string command = opts.command.empty() ? default_solver_command() : opts.command;
  SolverResult res;
  detail::ProcessOutput p;
  try {
    p = detail::run_process(command, query, opts.timeout_seconds);
  } catch (const Error& e) {
    res.diagnostic = e.what();
    return res;
  }
  res.output = p.output;
  if (p.timed_out) {
    res.diagnostic = "solver timed out after " + std::to_string(opts.timeout_seconds) + " s";
    return res;
  }
  std::vector<SExpr> items;
  try {
    items = detail::parse_sexprs(p.output);
  } catch (const Error& e) {
    res.diagnostic = std::string("malformed solver output: ") + e.what();
    return res;
  }
  std::size_t i = 0;
  for (; i < items.size(); ++i) {
    if (items[i].list) {
      if (!items[i].items.empty() && items[i].items[0].atom == "error") {
        res.diagnostic = "solver error: " + (items[i].items.size() > 1 ? items[i].items[1].atom : "");
        return res;
      }
      continue;
    }
    if (items[i].atom == "sat" || items[i].atom == "unsat" || items[i].atom == "unknown") break;
  }
  if (i == items.size()) {
    res.diagnostic = p.exit_code == 127 ? "solver command not found: " + command
                                        : "no verdict in solver output (exit code " + std::to_string(p.exit_code) + ")";
    return res;
  }
  const std::string& verdict = items[i].atom;
  if (verdict == "unsat") {
    res.status = SolverStatus::Unsat;
    return res;
  }
  if (verdict == "unknown") {
    res.status = SolverStatus::Unknown;
    return res;
  }
  if (i + 1 >= items.size() || !items[i + 1].list) {
    res.diagnostic = "sat without a model in solver output";
    return res;
  }
  const SExpr& model = items[i + 1];
  std::size_t k = 0;
  if (!model.items.empty() && !model.items[0].list && model.items[0].atom == "model") k = 1;
  if (!model.items.empty() && !model.items[0].list && model.items[0].atom == "error") {
    res.diagnostic = "solver error: " + (model.items.size() > 1 ? model.items[1].atom : "");
    return res;
  }
  for (; k < model.items.size(); ++k) {
    const SExpr& d = model.items[k];
    if (!d.list || d.items.size() != 5 || d.items[0].atom != "define-fun") continue;
    auto v = detail::sexpr_value(d.items[4]);
    if (!v) {
      res.diagnostic = "cannot read the value of " + d.items[1].atom;
      return res;
    }
    res.model[d.items[1].atom] = *v;
  }
  res.status = SolverStatus::Sat;
  return res;
}

inline SolverResult run_solver(const SmtScript& script, const SolverOptions& opts = {}) {
  return run_solver_text(script.query(), opts);
}

// Interpretation read off an SMT model. Symbols missing from the model
// (unconstrained) take the lowest value of their domain.
inline Interpretation decode_model(const SmtModel& model, const SmtScript& script) {
  Interpretation I(script.vocab);
  for (const auto& sym : script.symbols) {
    auto it = model.find(sym.cell);
    Value v = sym.range ? sym.range->lo : 0;
    if (it != model.end()) v = it->second;
    if (sym.boolean && v != 0 && v != 1) throw Error("non-boolean value for " + sym.cell);
    if (sym.range && (v < sym.range->lo || v > sym.range->hi))
      throw Error("solver value " + std::to_string(v) + " for " + sym.cell + " is outside " +
                  std::to_string(sym.range->lo) + ".." + std::to_string(sym.range->hi));
    I.set(sym.constant, sym.index, v);
  }
  return I;
}

struct AllModelsResult {
  std::vector<Interpretation> models;
  bool truncated = false;
  SolverStatus last = SolverStatus::Unsat;  // Unknown or Failure when stopped early
  std::string diagnostic;
};

// Cells of the named constants; all cells when `constants` is empty.
inline std::vector<std::string> projection_cells(const SmtScript& script,
                                                 const std::vector<std::string>& constants) {
  std::vector<std::string> out;
  for (const auto& sym : script.symbols) {
    const std::string& name = script.vocab->constant(sym.constant).name;
    if (constants.empty() || std::find(constants.begin(), constants.end(), name) != constants.end())
      out.push_back(sym.cell);
  }
  return out;
}

// Solves repeatedly, blocking each projected assignment, until unsat or
// `cap` models. Models come back ordered by their projection.
inline AllModelsResult all_models(const SmtScript& script, const std::vector<std::string>& projection,
                                  std::size_t cap, const SolverOptions& opts = {}) {
  if (cap < 1) throw Error("model cap must be at least 1");
  for (const auto& cell : projection)
    if (!script.names.to_smt.count(cell)) throw Error("unknown cell '" + cell + "' in projection");
  AllModelsResult res;
  std::string blocks;
  for (;;) {
    if (res.models.size() == cap) {
      res.truncated = true;
      break;
    }
    SolverResult r = run_solver_text(script.text() + blocks + "(check-sat)\n(get-model)\n", opts);
    res.last = r.status;
    if (r.status != SolverStatus::Sat) {
      res.diagnostic = r.diagnostic;
      break;
    }
    Interpretation I = decode_model(r.model, script);
    std::vector<std::string> eqs;
    for (const auto& cell : projection) {
      const std::string& sym = script.names.to_smt.at(cell);
      Value v = I.get(cell);
      auto c = script.vocab->find_cell(cell);
      if (script.vocab->constant(c->first).predicate)
        eqs.push_back(v ? sym : "(not " + sym + ")");
      else
        eqs.push_back("(= " + sym + " " + detail::smt_int(v) + ")");
    }
    res.models.push_back(std::move(I));
    if (eqs.empty()) {
      res.last = SolverStatus::Unsat;
      break;
    }
    blocks += "(assert (not " + detail::nary("and", eqs, "true") + "))\n";
  }
  std::sort(res.models.begin(), res.models.end(), [&](const Interpretation& a, const Interpretation& b) {
    return project(a.assignment(), projection) < project(b.assignment(), projection);
  });
  return res;
}

}  // namespace aspmt

#endif  // ASPMT_SMT_HPP
