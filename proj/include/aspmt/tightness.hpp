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

// t-dependency graph and tightness.
//
// An occurrence is strictly positive when it is not inside the antecedent of
// any implication. The graph has an edge c -> d when some strictly positive
// implication G -> H has c strictly positive in H and d strictly positive in G.

#ifndef ASPMT_TIGHTNESS_HPP
#define ASPMT_TIGHTNESS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspmt/normalize.hpp"
#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

namespace detail {

inline void term_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Apply) out.insert(t.name());
  if (t.kind() == TermKind::Apply || t.kind() == TermKind::Arith)
    for (const auto& a : t.args()) term_constants(a, out);
}

inline void positive_constants(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Falsum: return;
    case FormulaKind::Atom: out.insert(f.pred()); [[fallthrough]];
    case FormulaKind::Equal:
    case FormulaKind::Compare:
      for (const auto& t : f.terms()) term_constants(t, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      for (const auto& s : f.subs()) positive_constants(s, out);
      return;
    case FormulaKind::Implies: positive_constants(f.consequent(), out); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: positive_constants(f.body(), out); return;
  }
}

}  // namespace detail

// Every predicate and function constant with a strictly positive occurrence.
inline std::set<std::string> strictly_positive_constants(const Formula& f) {
  std::set<std::string> out;
  detail::positive_constants(f, out);
  return out;
}

inline std::set<std::string> strictly_positive_constants(const Formula& f,
                                                         const std::vector<std::string>& among) {
  std::set<std::string> out;
  for (const auto& c : strictly_positive_constants(f))
    if (std::find(among.begin(), among.end(), c) != among.end()) out.insert(c);
  return out;
}

// Calls fn on every strictly positive occurrence of an implication.
template <class Fn>
void for_each_positive_implication(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      for (const auto& s : f.subs()) for_each_positive_implication(s, fn);
      return;
    case FormulaKind::Implies:
      fn(f);
      for_each_positive_implication(f.consequent(), fn);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: for_each_positive_implication(f.body(), fn); return;
    default: return;
  }
}

struct Edge {
  std::string from;
  std::string to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct TDependencyGraph {
  std::vector<std::string> vertices;
  std::set<Edge> edges;
  // First implication (in traversal order) that produced each edge.
  std::map<Edge, Formula> provenance;

  std::vector<std::string> successors(const std::string& v) const {
    std::vector<std::string> out;
    for (auto it = edges.lower_bound(Edge{v, ""}); it != edges.end() && it->from == v; ++it)
      out.push_back(it->to);
    return out;
  }
  bool has_edge(const std::string& a, const std::string& b) const { return edges.count(Edge{a, b}) > 0; }
};

inline TDependencyGraph build_t_dependency_graph(const Formula& f,
                                                 const std::vector<std::string>& intensional) {
  TDependencyGraph g;
  g.vertices = intensional;
  for_each_positive_implication(f, [&](const Formula& imp) {
    auto heads = strictly_positive_constants(imp.consequent(), intensional);
    if (heads.empty()) return;
    auto bodies = strictly_positive_constants(imp.antecedent(), intensional);
    for (const auto& c : heads)
      for (const auto& d : bodies) {
        Edge e{c, d};
        if (g.edges.insert(e).second) g.provenance.emplace(e, imp);
      }
  });
  return g;
}

// The graph of a program is taken from its Clark normal form, where choice
// rules have been rewritten so the double negation sits in an antecedent.
inline TDependencyGraph build_t_dependency_graph(const ClarkProgram& cnf) {
  return build_t_dependency_graph(cnf.as_formula(), cnf.signature.intensional);
}

// A shortest cycle, written from its least vertex; among shortest cycles the
// lexicographically least one.
inline std::optional<std::vector<std::string>> shortest_cycle(const TDependencyGraph& g) {
  std::vector<std::string> vs = g.vertices;
  std::sort(vs.begin(), vs.end());
  std::optional<std::vector<std::string>> best;
  for (const auto& start : vs) {
    // Distance from each vertex >= start back to start, over vertices >= start.
    std::map<std::string, std::size_t> dist;
    std::deque<std::string> queue;
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      for (const auto& e : g.edges) {
        if (e.to != v || e.from < start || dist.count(e.from)) continue;
        dist[e.from] = dist[v] + 1;
        queue.push_back(e.from);
      }
    }
    std::optional<std::size_t> len;
    for (const auto& u : g.successors(start))
      if (u >= start && dist.count(u) && (!len || dist[u] + 1 < *len)) len = dist[u] + 1;
    if (!len || (best && *len > best->size())) continue;
    std::vector<std::string> cycle{start};
    std::string at = start;
    for (std::size_t remaining = *len - 1; remaining > 0; --remaining) {
      for (const auto& u : g.successors(at)) {
        if (u > start && dist.count(u) && dist[u] == remaining) {
          at = u;
          break;
        }
      }
      cycle.push_back(at);
    }
    if (!best || cycle.size() < best->size() || (cycle.size() == best->size() && cycle < *best))
      best = cycle;
  }
  return best;
}

struct TightnessResult {
  bool tight = true;
  std::vector<std::string> cycle;  // empty when tight
  TDependencyGraph graph;
};

inline TightnessResult is_tight(const Formula& f, const std::vector<std::string>& intensional) {
  TightnessResult r;
  r.graph = build_t_dependency_graph(f, intensional);
  if (auto c = shortest_cycle(r.graph)) {
    r.tight = false;
    r.cycle = *c;
  }
  return r;
}

inline TightnessResult is_tight(const ClarkProgram& cnf) {
  return is_tight(cnf.as_formula(), cnf.signature.intensional);
}

inline TightnessResult is_tight(const Program& p) { return is_tight(to_clark_normal_form(p)); }

inline std::string cycle_text(const std::vector<std::string>& cycle) {
  std::string out;
  for (const auto& v : cycle) out += v + " -> ";
  return out + (cycle.empty() ? "" : cycle.front());
}

inline std::string to_dot(const TDependencyGraph& g) {
  std::string out = "digraph tdep {\n";
  for (const auto& v : g.vertices) out += "  \"" + v + "\";\n";
  for (const auto& e : g.edges) out += "  \"" + e.from + "\" -> \"" + e.to + "\";\n";
  return out + "}\n";
}

}  // namespace aspmt

#endif  // ASPMT_TIGHTNESS_HPP
