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

// Command-line driver. run() takes the arguments without the program name
// and writes to the given streams, so it can be called from tests.
//
// Exit codes: 0 success (tight, sat, models found, sets equal), 1 error,
// 2 not tight / not stable, 3 verify discrepancy, 20 unsat or no models,
// 30 unknown.

#ifndef ASPMT_CLI_HPP
#define ASPMT_CLI_HPP

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aspmt/completion.hpp"
#include "aspmt/error.hpp"
#include "aspmt/ground.hpp"
#include "aspmt/interpretation.hpp"
#include "aspmt/normalize.hpp"
#include "aspmt/parser.hpp"
#include "aspmt/smt.hpp"
#include "aspmt/tightness.hpp"

namespace aspmt {

inline constexpr const char* kVersion = "0.1.0";

namespace cli {

enum Exit { kOk = 0, kError = 1, kNotTight = 2, kNotStable = 2, kDiscrepancy = 3, kUnsat = 20, kUnknown = 30 };

struct Config {
  std::string input;
  std::optional<Value> horizon;
  std::vector<std::string> bounds;
  std::vector<std::string> fixes;
  std::string solver;
  double timeout = 60;
  double max_candidates = 1e7;
  std::size_t cap = 1000;
  std::vector<std::string> project;
  bool all = false;
  bool quantified = false;
  bool json = false;
  bool dot = false;
  bool smt = false;
  bool reduct = false;
  std::string emit;
};

inline Range parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Error("bad range '" + text + "', expected lo..hi");
  try {
    std::size_t a = 0, b = 0;
    std::string l = text.substr(0, dots), h = text.substr(dots + 2);
    Range r{std::stoll(l, &a), std::stoll(h, &b)};
    if (a != l.size() || b != h.size()) throw Error("");
    if (r.lo > r.hi) throw Error("empty range '" + text + "'");
    return r;
  } catch (const std::logic_error&) {
    throw Error("bad range '" + text + "', expected lo..hi");
  }
}

// "lo..hi" bounds the integers; "X=lo..hi" a single variable.
inline Bounds parse_bounds(const std::vector<std::string>& specs) {
  Bounds b;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq == std::string::npos) b.integers = parse_range(s);
    else b.variables[s.substr(0, eq)] = parse_range(s.substr(eq + 1));
  }
  return b;
}

inline std::map<std::string, std::string> parse_fixes(const std::vector<std::string>& specs) {
  std::map<std::string, std::string> out;
  for (const auto& s : specs) {
    auto eq = s.rfind('=');
    if (eq == std::string::npos || eq == 0) throw Error("bad fixing '" + s + "', expected name=value");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

// Splits "a=1,b(x,y)=2" at commas outside parentheses.
inline std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::string> flatten(const std::vector<std::string>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs)
    for (auto& y : split_top(x)) out.push_back(y);
  return out;
}

class Runner {
 public:
  Runner(Config cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  Program load() {
    std::ifstream in(cfg_.input);
    if (!in) throw Error("cannot read '" + cfg_.input + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    PreprocessOptions pre;
    if (cfg_.horizon) pre.constants["horizon"] = *cfg_.horizon;
    auto res = parse_program(ss.str(), pre);
    if (!res.ok()) {
      for (const auto& d : res.errors)
        err_ << cfg_.input << ":" << d.span.line << ":" << d.span.column << ": " << d.message << "\n";
      throw Reported{};
    }
    return std::move(*res.program);
  }

  Fixings fixings(const Program& p, const Vocabulary& v) {
    Fixings f = p.fixings;
    for (const auto& [k, val] : resolve_fixings(v, parse_fixes(flatten(cfg_.fixes)))) f[k] = val;
    return f;
  }

  void warn_singletons(const Signature& sig) {
    for (const auto& s : singleton_sorts(sig))
      err_ << "warning: sort '" << s
           << "' has a single element; completion may not match stable models over it\n";
  }

  bool require_tight(const ClarkProgram& cnf) {
    auto t = is_tight(cnf);
    if (t.tight) return true;
    err_ << "error: program is not tight, cycle " << cycle_text(t.cycle) << "\n";
    return false;
  }

  std::string model_line(const Interpretation& I, const std::vector<std::string>& keys = {}) {
    Assignment a = I.assignment();
    if (!keys.empty()) a = project(a, keys);
    return assignment_text(I.vocab(), a);
  }

  nlohmann::json model_json(const Interpretation& I, const std::vector<std::string>& keys = {}) {
    Assignment a = I.assignment();
    if (!keys.empty()) a = project(a, keys);
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : a) {
      auto c = I.vocab().find_cell(k);
      j[k] = I.vocab().cell_value_name(c->first, v);
    }
    return j;
  }

  int check_tight() {
    Program p = load();
    ClarkProgram cnf = to_clark_normal_form(p);
    auto t = is_tight(cnf);
    if (cfg_.dot) {
      out_ << to_dot(t.graph);
    } else {
      out_ << "edges: " << t.graph.edges.size() << "\n";
      for (const auto& e : t.graph.edges) out_ << e.from << " -> " << e.to << "\n";
      if (t.tight) out_ << "tight\n";
      else out_ << "not tight, cycle " << cycle_text(t.cycle) << "\n";
    }
    return t.tight ? kOk : kNotTight;
  }

  EmitOptions emit_options(const Program& p) {
    EmitOptions eo;
    eo.mode = cfg_.quantified ? EmitMode::Quantified : EmitMode::Expanded;
    if (!cfg_.quantified) eo.bounds = parse_bounds(cfg_.bounds);
    auto vocab = Vocabulary::build(p.signature, eo.bounds);
    eo.fixings = fixings(p, *vocab);
    return eo;
  }

  int complete_cmd() {
    Program p = load();
    ClarkProgram cnf = to_clark_normal_form(p);
    if (auto t = is_tight(cnf); !t.tight)
      err_ << "warning: program is not tight (cycle " << cycle_text(t.cycle)
           << "); models of the completion need not be stable\n";
    warn_singletons(p.signature);
    if (cfg_.emit == "cnf") {
      out_ << print_clark(cnf);
      return kOk;
    }
    if (!cfg_.emit.empty() && cfg_.emit != "completion") throw Error("unknown --emit value '" + cfg_.emit + "'");
    CompletedTheory th = complete(cnf);
    if (cfg_.smt) {
      out_ << emit(th, emit_options(p)).query();
      return kOk;
    }
    out_ << "% Clark normal form\n" << print_clark(cnf) << "% completion\n" << print_completion(th);
    return kOk;
  }

  SolverOptions solver_options() const { return SolverOptions{cfg_.solver, cfg_.timeout}; }

  int solve() {
    Program p = load();
    ClarkProgram cnf = to_clark_normal_form(p);
    if (!require_tight(cnf)) return kError;
    warn_singletons(p.signature);
    EmitOptions eo = emit_options(p);
    SmtScript script = emit(complete(cnf), eo);
    std::vector<std::string> keys;
    if (!cfg_.project.empty()) keys = projection_cells(script, flatten(cfg_.project));

    if (!cfg_.all) {
      SolverResult r = run_solver(script, solver_options());
      switch (r.status) {
        case SolverStatus::Sat: {
          Interpretation I = decode_model(r.model, script);
          if (cfg_.json) {
            nlohmann::json j;
            j["models"] = nlohmann::json::array({model_json(I, keys)});
            j["stats"] = {{"models", 1}, {"solver_calls", 1}, {"result", "sat"}};
            out_ << j.dump() << "\n";
          } else {
            out_ << model_line(I, keys) << "\n";
          }
          return kOk;
        }
        case SolverStatus::Unsat: out_ << (cfg_.json ? R"({"models":[],"stats":{"models":0,"solver_calls":1,"result":"unsat"}})" : "UNSATISFIABLE") << "\n"; return kUnsat;
        case SolverStatus::Unknown: out_ << "UNKNOWN\n"; return kUnknown;
        case SolverStatus::Failure:
          err_ << "error: " << r.diagnostic << "\n";
          if (!r.output.empty()) err_ << r.output;
          return kError;
      }
    }

    std::vector<std::string> proj = keys;
    if (proj.empty())
      for (const auto& sym : script.symbols)
        if (!eo.fixings.count(sym.cell)) proj.push_back(sym.cell);
    AllModelsResult all = all_models(script, proj, cfg_.cap, solver_options());
    if (all.last == SolverStatus::Failure) {
      err_ << "error: " << all.diagnostic << "\n";
      return kError;
    }
    if (cfg_.json) {
      nlohmann::json j;
      j["models"] = nlohmann::json::array();
      for (const auto& m : all.models) j["models"].push_back(model_json(m, keys));
      j["stats"] = {{"models", all.models.size()},
                    {"solver_calls", all.models.size() + (all.truncated ? 0 : 1)},
                    {"truncated", all.truncated}};
      out_ << j.dump() << "\n";
    } else {
      for (const auto& m : all.models) out_ << model_line(m, keys) << "\n";
      if (all.models.empty()) out_ << "UNSATISFIABLE\n";
    }
    if (all.truncated) err_ << "note: stopped after " << cfg_.cap << " models\n";
    if (!all.models.empty()) return kOk;
    return all.last == SolverStatus::Unknown ? kUnknown : kUnsat;
  }

  int enumerate() {
    Program p = load();
    Bounds bounds = parse_bounds(cfg_.bounds);
    auto vocab = Vocabulary::build(p.signature, bounds);
    Fixings fx = fixings(p, *vocab);
    EnumerateStats stats;
    auto start = std::chrono::steady_clock::now();
    auto models = enumerate_models(vocab, program_formula(p), fx, bounds,
                                   EnumerateOptions{cfg_.max_candidates, true, &stats});
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (cfg_.json) {
      nlohmann::json j;
      j["models"] = nlohmann::json::array();
      for (const auto& m : models) j["models"].push_back(model_json(m));
      j["stats"] = {{"models", models.size()}, {"candidates", stats.candidates}, {"time_ms", ms}};
      out_ << j.dump() << "\n";
    } else {
      for (const auto& m : models) out_ << model_line(m) << "\n";
    }
    return models.empty() ? kUnsat : kOk;
  }

  int check_stable() {
    Program p = load();
    Bounds bounds = parse_bounds(cfg_.bounds);
    auto vocab = Vocabulary::build(p.signature, bounds);
    Fixings fx = fixings(p, *vocab);
    Interpretation I(vocab);
    std::vector<std::string> missing;
    for (std::size_t c = 0; c < vocab->constants().size(); ++c)
      for (std::size_t i = 0; i < vocab->constant(static_cast<int>(c)).cells; ++i) {
        std::string key = vocab->cell_name(static_cast<int>(c), i);
        if (auto it = fx.find(key); it != fx.end()) I.set(static_cast<int>(c), i, it->second);
        else missing.push_back(key);
      }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw Error("interpretation leaves unassigned: " + list);
    }
    GroundFormula g = ground(program_formula(p), *vocab, bounds);
    StabilityResult r = aspmt::check_stable(I, g);
    if (cfg_.reduct && r.model)
      for (const auto& line : ground_rules_text(reduct(g, I), *vocab)) out_ << line << "\n";
    if (!r.model) {
      out_ << "not a model\n";
      return kNotStable;
    }
    if (r.stable) {
      out_ << "stable\n";
      return kOk;
    }
    out_ << "not stable\nwitness: " << model_line(*r.witness) << "\n";
    return kNotStable;
  }

  int verify() {
    Program p = load();
    ClarkProgram cnf = to_clark_normal_form(p);
    if (!require_tight(cnf)) return kError;
    warn_singletons(p.signature);
    Bounds bounds = parse_bounds(cfg_.bounds);
    auto vocab = Vocabulary::build(p.signature, bounds);
    Fixings fx = fixings(p, *vocab);
    auto oracle = enumerate_models(vocab, program_formula(p), fx, bounds,
                                   EnumerateOptions{cfg_.max_candidates, true, nullptr});

    EmitOptions eo;
    eo.bounds = bounds;
    eo.fixings = fx;
    SmtScript script = emit(complete(cnf), eo);
    std::vector<std::string> proj;
    for (const auto& sym : script.symbols)
      if (!fx.count(sym.cell)) proj.push_back(sym.cell);
    AllModelsResult smt = all_models(script, proj, oracle.size() + 1, solver_options());
    if (smt.last == SolverStatus::Failure || smt.last == SolverStatus::Unknown) {
      err_ << "error: solver " << (smt.last == SolverStatus::Unknown ? "returned unknown" : smt.diagnostic)
           << "\n";
      return kError;
    }
    std::set<Assignment> a, b;
    for (const auto& m : oracle) a.insert(project(m.assignment(), proj));
    for (const auto& m : smt.models) b.insert(project(m.assignment(), proj));
    if (a == b) {
      out_ << a.size() << " model" << (a.size() == 1 ? "" : "s") << ", sets equal\n";
      return kOk;
    }
    for (const auto& m : a)
      if (!b.count(m)) {
        out_ << "discrepancy: stable model not found by the solver: " << assignment_text(*vocab, m) << "\n";
        return kDiscrepancy;
      }
    for (const auto& m : b)
      if (!a.count(m)) {
        out_ << "discrepancy: solver model is not stable: " << assignment_text(*vocab, m) << "\n";
        return kDiscrepancy;
      }
    return kDiscrepancy;
  }

  struct Reported {};

 private:
  Config cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace cli

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  cli::Config cfg;
  CLI::App app{"Compiler and solver for answer set programs modulo theories", "aspmt"};
  app.set_version_flag("--version", std::string("aspmt ") + kVersion);
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub) {
    sub->add_option("file", cfg.input, "program file")->required();
    sub->add_option("--horizon", cfg.horizon, "value of the #const horizon");
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--bounds", cfg.bounds, "integer bounds lo..hi, or X=lo..hi for one variable");
  };
  auto fix = [&](CLI::App* sub) { sub->add_option("--fix", cfg.fixes, "fix a cell: name=value"); };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--solver", cfg.solver, "solver command (default $ASPMT_SOLVER or 'z3 -in')");
    sub->add_option("--timeout", cfg.timeout, "solver timeout in seconds")->check(CLI::PositiveNumber);
  };

  auto* tight = app.add_subcommand("check-tight", "t-dependency graph and tightness");
  input(tight);
  tight->add_flag("--dot", cfg.dot, "print the graph in dot format");

  auto* comp = app.add_subcommand("complete", "Clark normal form and completion");
  input(comp);
  comp->add_option("--emit", cfg.emit, "cnf or completion");
  comp->add_flag("--smt", cfg.smt, "print the SMT-LIB script");
  comp->add_flag("--quantified", cfg.quantified, "keep quantifiers in the SMT-LIB script");
  bounds(comp);
  fix(comp);

  auto* solve = app.add_subcommand("solve", "stable models through an SMT solver");
  input(solve);
  solver(solve);
  bounds(solve);
  fix(solve);
  solve->add_flag("--all", cfg.all, "enumerate all models");
  solve->add_option("--project", cfg.project, "constants to project on");
  solve->add_option("--cap", cfg.cap, "maximum number of models")->check(CLI::PositiveNumber);
  solve->add_flag("--quantified", cfg.quantified, "emit quantifiers instead of expanding them");
  solve->add_flag("--json", cfg.json, "JSON output");

  auto* en = app.add_subcommand("enumerate", "stable models by brute force");
  input(en);
  bounds(en);
  fix(en);
  en->add_option("--max-candidates", cfg.max_candidates, "refuse larger searches");
  en->add_flag("--json", cfg.json, "JSON output");

  auto* st = app.add_subcommand("check-stable", "stability of one interpretation given by --fix");
  input(st);
  bounds(st);
  fix(st);
  st->add_flag("--reduct", cfg.reduct, "print the reduct");

  auto* ver = app.add_subcommand("verify", "compare solver models with the brute-force oracle");
  input(ver);
  bounds(ver);
  fix(ver);
  solver(ver);
  ver->add_option("--max-candidates", cfg.max_candidates, "refuse larger searches");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : cli::kError;
  }

  cli::Runner r(cfg, out, err);
  try {
    if (tight->parsed()) return r.check_tight();
    if (comp->parsed()) return r.complete_cmd();
    if (solve->parsed()) return r.solve();
    if (en->parsed()) return r.enumerate();
    if (st->parsed()) return r.check_stable();
    if (ver->parsed()) return r.verify();
  } catch (const cli::Runner::Reported&) {
    return cli::kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return cli::kError;
  }
  return cli::kError;
}

}  // namespace aspmt

#endif  // ASPMT_CLI_HPP
