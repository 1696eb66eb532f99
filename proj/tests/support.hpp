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

// Shared helpers for the test suites: a random program generator and a
// textbook answer-set checker for propositional programs.

#ifndef ASPMT_TESTS_SUPPORT_HPP
#define ASPMT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aspmt/completion.hpp"
#include "aspmt/ground.hpp"
#include "aspmt/interpretation.hpp"
#include "aspmt/normalize.hpp"
#include "aspmt/parser.hpp"
#include "aspmt/smt.hpp"
#include "aspmt/tightness.hpp"

#ifndef ASPMT_PROGRAMS_DIR
#define ASPMT_PROGRAMS_DIR "programs"
#endif

namespace aspmt::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string program_path(const std::string& name) { return std::string(ASPMT_PROGRAMS_DIR) + "/" + name; }

inline Program load_program(const std::string& name, const PreprocessOptions& opts = {}) {
  return parse_program_or_throw(read_file(program_path(name)), opts);
}

inline std::set<Assignment> projected(const std::vector<Interpretation>& ms, const std::vector<std::string>& keys) {
  std::set<Assignment> out;
  for (const auto& m : ms) out.insert(project(m.assignment(), keys));
  return out;
}

// Cells of the vocabulary that are not fixed.
inline std::vector<std::string> free_cells(const Vocabulary& v, const Fixings& fx) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < v.constants().size(); ++c)
    for (std::size_t i = 0; i < v.constant(static_cast<int>(c)).cells; ++i) {
      auto k = v.cell_name(static_cast<int>(c), i);
      if (!fx.count(k)) out.push_back(k);
    }
  return out;
}

inline double candidate_count(const Vocabulary& v, const Fixings& fx) {
  double n = 1;
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    auto d = v.cell_domain(static_cast<int>(c));
    for (std::size_t i = 0; i < v.constant(static_cast<int>(c)).cells; ++i)
      if (!fx.count(v.cell_name(static_cast<int>(c), i))) n *= static_cast<double>(d->hi - d->lo + 1);
  }
  return n;
}

// Oracle stable models next to the models found by the SMT pipeline, both
// as full assignments. `ok` is false when the solver did not finish.
struct Differential {
  std::set<Assignment> oracle;
  std::set<Assignment> smt;
  bool ok = false;
  std::string diagnostic;
};

inline Differential differential(const Program& p, const Bounds& bounds, const Fixings& extra = {},
                                 EmitMode mode = EmitMode::Expanded, const SolverOptions& solver = {}) {
  Differential d;
  Fixings fx = p.fixings;
  for (const auto& [k, v] : extra) fx[k] = v;
  auto vocab = Vocabulary::build(p.signature, bounds);
  for (const auto& m : enumerate_models(vocab, program_formula(p), fx, bounds)) d.oracle.insert(m.assignment());
  EmitOptions eo;
  eo.mode = mode;
  eo.bounds = bounds;
  eo.fixings = extra;
  SmtScript script = emit(complete(to_clark_normal_form(p)), eo);
  AllModelsResult r = all_models(script, projection_cells(script, {}), 100000, solver);
  d.ok = r.last == SolverStatus::Unsat && !r.truncated;
  d.diagnostic = r.diagnostic;
  for (const auto& m : r.models) d.smt.insert(m.assignment());
  return d;
}

// ---------------------------------------------------------------------------
// Random programs: a range sort s0 (2..5 values), sometimes an enumerated
// sort s1 (2..4 elements), one extensional function g0 -> s0, up to two more
// extensional constants, 1..3 intensional constants and 1..5 rules. Argument
// positions only hold variables, numerals and elements.

class ProgramGenerator {
 public:
  explicit ProgramGenerator(unsigned seed) : rng_(seed) {}

  struct Options {
    double max_candidates = 20000;
    bool require_tight = true;
    bool allow_functions = true;
  };

  // Source text of a program that parses and satisfies the options.
  std::string next(const Options& opts) {
    for (;;) {
      std::string text = draft(opts);
      auto res = parse_program(text);
      if (!res.ok()) continue;
      const Program& p = *res.program;
      auto v = Vocabulary::build(p.signature, {});
      if (candidate_count(*v, p.fixings) > opts.max_candidates) continue;
      if (opts.require_tight && !is_tight(p).tight) continue;
      return text;
    }
  }
  std::string next() { return next(Options{}); }

  // A random interpretation of the program's vocabulary.
  Interpretation interpretation(const VocabularyPtr& v) {
    Interpretation I(v);
    for (std::size_t c = 0; c < v->constants().size(); ++c) {
      auto d = v->cell_domain(static_cast<int>(c));
      for (std::size_t i = 0; i < v->constant(static_cast<int>(c)).cells; ++i)
        I.set(static_cast<int>(c), i, pick(d->lo, d->hi));
    }
    return I;
  }

  std::mt19937& rng() { return rng_; }

  // Random values for every extensional cell the program leaves open.
  Fixings extensional_fixing(const Program& p) {
    auto v = Vocabulary::build(p.signature, {});
    Interpretation I = interpretation(v);
    Fixings out;
    for (std::size_t c = 0; c < v->constants().size(); ++c) {
      const auto& info = v->constant(static_cast<int>(c));
      if (info.intensional) continue;
      for (std::size_t i = 0; i < info.cells; ++i) {
        auto key = v->cell_name(static_cast<int>(c), i);
        if (!p.fixings.count(key)) out[key] = I.get(static_cast<int>(c), i);
      }
    }
    return out;
  }

 private:
  struct Const {
    std::string name;
    bool predicate;
    int arg;    // -1 none, 0 s0, 1 s1
    int value;  // functions: 0 s0, 1 s1
  };

  std::mt19937 rng_;
  int s0_lo_ = 0, s0_hi_ = 1, s1_size_ = 0;
  std::vector<Const> consts_;
  std::map<std::string, int> vars_;  // variables of the current rule

  Value pick(Value lo, Value hi) { return std::uniform_int_distribution<Value>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& choose(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(0, static_cast<Value>(xs.size()) - 1))];
  }

  std::string value_of(int sort) {
    if (sort == 0) return std::to_string(pick(s0_lo_, s0_hi_));
    return "e" + std::to_string(pick(0, s1_size_ - 1));
  }

  std::string variable(int sort) {
    static const std::vector<std::string> s0{"X", "Y", "Z", "X1"};
    static const std::vector<std::string> s1{"U", "V", "Y"};
    const auto& pool = sort == 0 ? s0 : s1;
    for (int tries = 0; tries < 8; ++tries) {
      const std::string& n = choose(pool);
      auto it = vars_.find(n);
      if (it == vars_.end() || it->second == sort) {
        vars_[n] = sort;
        return n;
      }
    }
    std::string n = sort == 0 ? "W" : "T";
    vars_[n] = sort;
    return n;
  }

  std::string term_of(int sort) { return coin(0.6) ? variable(sort) : value_of(sort); }

  std::string apply(const Const& c) {
    return c.arg < 0 ? c.name : c.name + "(" + term_of(c.arg) + ")";
  }

  std::string literal() {
    const Const& c = choose(consts_);
    std::string atom;
    if (c.predicate) {
      atom = apply(c);
    } else {
      atom = apply(c) + (coin(0.8) ? " = " : " != ") + term_of(c.value);
    }
    if (coin(0.3)) return "not " + atom;
    if (coin(0.08)) return "not not " + atom;
    return atom;
  }

  std::string draft(const Options& opts) {
    consts_.clear();
    s0_lo_ = static_cast<int>(pick(0, 1));
    s0_hi_ = s0_lo_ + static_cast<int>(pick(1, 4));
    s1_size_ = coin(0.4) ? static_cast<int>(pick(2, 4)) : 0;
    std::string out = "sort s0 = " + std::to_string(s0_lo_) + ".." + std::to_string(s0_hi_) + ".\n";
    if (s1_size_) {
      out += "sort s1 = {";
      for (int i = 0; i < s1_size_; ++i) out += (i ? ", e" : "e") + std::to_string(i);
      out += "}.\n";
    }
    int sorts = s1_size_ ? 2 : 1;
    auto random_sort = [&] { return static_cast<int>(pick(0, sorts - 1)); };

    consts_.push_back({"g0", false, -1, 0});
    int ext = static_cast<int>(pick(0, 2));
    for (int i = 0; i < ext; ++i) {
      bool pred = !opts.allow_functions || coin(0.6);
      consts_.push_back({"e" + std::string(pred ? "p" : "f") + std::to_string(i), pred,
                         coin(0.4) ? random_sort() : -1, random_sort()});
    }
    int n_int = static_cast<int>(pick(1, 3));
    std::vector<Const> intensional;
    for (int i = 0; i < n_int; ++i) {
      bool pred = !opts.allow_functions || coin(0.5);
      Const c{(pred ? "p" : "f") + std::to_string(i), pred, coin(0.35) ? random_sort() : -1, random_sort()};
      consts_.push_back(c);
      intensional.push_back(c);
    }
    auto sort_name = [](int s) { return s == 0 ? std::string("s0") : std::string("s1"); };
    for (const auto& c : consts_) {
      std::string args = c.arg < 0 ? "" : "(" + sort_name(c.arg) + ")";
      if (c.predicate) out += "pred " + c.name + args + ".\n";
      else out += "func " + c.name + args + " -> " + sort_name(c.value) + ".\n";
    }
    out += "intensional ";
    for (std::size_t i = 0; i < intensional.size(); ++i) out += (i ? ", " : "") + intensional[i].name;
    out += ".\n";

    int n_rules = static_cast<int>(pick(1, 5));
    for (int r = 0; r < n_rules; ++r) {
      vars_.clear();
      std::vector<std::string> body;
      std::string head;
      if (coin(0.1)) {
        body.push_back(literal());
      } else {
        const Const& c = choose(intensional);
        if (c.predicate) {
          head = apply(c);
        } else {
          std::string lhs = apply(c);
          std::string rhs;
          if (c.value == 0 && coin(0.2)) {
            std::string x = variable(0);
            rhs = x + (coin() ? " + 1" : " - 1");
            body.push_back("g0 = " + x);
          } else {
            rhs = term_of(c.value);
          }
          head = coin(0.3) ? "{" + lhs + " = " + rhs + "}" : lhs + " = " + rhs;
        }
      }
      int n_body = static_cast<int>(pick(0, 2));
      for (int i = 0; i < n_body; ++i) body.push_back(literal());
      std::vector<std::string> s0_vars;
      for (const auto& [n, s] : vars_)
        if (s == 0) s0_vars.push_back(n);
      if (!s0_vars.empty() && coin(0.2))
        body.push_back(choose(s0_vars) + (coin() ? " < " : " >= ") + std::to_string(pick(s0_lo_, s0_hi_)));
      std::string b;
      for (std::size_t i = 0; i < body.size(); ++i) b += (i ? ", " : "") + body[i];
      if (head.empty()) out += ":- " + (b.empty() ? "#and()" : b) + ".\n";
      else out += head + (b.empty() ? "" : " :- " + b) + ".\n";
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Propositional answer sets by the Gelfond-Lifschitz reduct.

struct PropRule {
  int head = -1;  // -1 for a constraint
  std::vector<int> pos;
  std::vector<int> neg;
};

struct PropProgram {
  int atoms = 0;
  std::vector<bool> intensional;  // extensional atoms have no rules
  std::vector<PropRule> rules;

  std::string text() const {
    auto name = [](int a) { return "a" + std::to_string(a); };
    std::string out = "pred ";
    for (int a = 0; a < atoms; ++a) out += (a ? ", " : "") + name(a);
    out += ".\n";
    std::string in;
    for (int a = 0; a < atoms; ++a)
      if (intensional[static_cast<std::size_t>(a)]) in += (in.empty() ? "" : ", ") + name(a);
    if (!in.empty()) out += "intensional " + in + ".\n";
    for (const auto& r : rules) {
      std::string body;
      for (int a : r.pos) body += (body.empty() ? "" : ", ") + name(a);
      for (int a : r.neg) body += (body.empty() ? "" : ", ") + std::string("not ") + name(a);
      if (r.head < 0) out += ":- " + (body.empty() ? "#and()" : body) + ".\n";
      else out += name(r.head) + (body.empty() ? "" : " :- " + body) + ".\n";
    }
    return out;
  }
};

inline PropProgram random_prop_program(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  PropProgram p;
  p.atoms = pick(1, 12);
  for (int a = 0; a < p.atoms; ++a) p.intensional.push_back(pick(0, 3) > 0);
  std::vector<int> heads;
  for (int a = 0; a < p.atoms; ++a)
    if (p.intensional[static_cast<std::size_t>(a)]) heads.push_back(a);
  int n = pick(1, 8);
  for (int i = 0; i < n; ++i) {
    PropRule r;
    if (!heads.empty() && pick(0, 5) > 0) r.head = heads[static_cast<std::size_t>(pick(0, static_cast<int>(heads.size()) - 1))];
    int lits = pick(0, 3);
    for (int k = 0; k < lits; ++k) (pick(0, 1) ? r.pos : r.neg).push_back(pick(0, p.atoms - 1));
    p.rules.push_back(r);
  }
  return p;
}

// All answer sets, each as the bit vector of true atoms, with extensional
// atoms ranging freely.
inline std::set<std::vector<bool>> gl_answer_sets(const PropProgram& p) {
  std::set<std::vector<bool>> out;
  std::size_t n = static_cast<std::size_t>(p.atoms);
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<bool> m(n);
    for (std::size_t a = 0; a < n; ++a) m[a] = (mask >> a) & 1;
    // Least model of the reduct, extensional atoms taken from m.
    std::vector<bool> lm(n, false);
    for (std::size_t a = 0; a < n; ++a)
      if (!p.intensional[a]) lm[a] = m[a];
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : p.rules) {
        if (r.head < 0 || lm[static_cast<std::size_t>(r.head)]) continue;
        bool ok = std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return m[static_cast<std::size_t>(a)]; }) &&
                  std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return lm[static_cast<std::size_t>(a)]; });
        if (ok) {
          lm[static_cast<std::size_t>(r.head)] = true;
          changed = true;
        }
      }
    }
    if (lm != m) continue;
    bool violated = false;
    for (const auto& r : p.rules)
      if (r.head < 0 &&
          std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return m[static_cast<std::size_t>(a)]; }) &&
          std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return m[static_cast<std::size_t>(a)]; }))
        violated = true;
    if (!violated) out.insert(m);
  }
  return out;
}

}  // namespace aspmt::testing

#endif  // ASPMT_TESTS_SUPPORT_HPP
