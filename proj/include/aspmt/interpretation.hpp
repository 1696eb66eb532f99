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

// Finite interpretations. A Vocabulary fixes the universe of every sort and
// numbers the constants and their cells (argument tuples); an Interpretation
// is one table of values per constant over that vocabulary.

#ifndef ASPMT_INTERPRETATION_HPP
#define ASPMT_INTERPRETATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aspmt/error.hpp"
#include "aspmt/parser.hpp"
#include "aspmt/print.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

struct Range {
  Value lo = 0;
  Value hi = 0;
  friend bool operator==(const Range&, const Range&) = default;
};

// Finitization of the background integers for grounding: `integers` bounds
// every integer-sorted position; `variables` overrides it per variable name.
struct Bounds {
  std::optional<Range> integers;
  std::map<std::string, Range> variables;
};

struct SortInfo {
  std::string name;
  SortKind kind;
  std::optional<Range> universe;  // absent for unbounded integers
  std::vector<std::string> elements;

  std::size_t size() const {
    return universe ? static_cast<std::size_t>(universe->hi - universe->lo + 1) : 0;
  }
  bool contains(Value v) const { return universe && universe->lo <= v && v <= universe->hi; }
};

struct ConstantInfo {
  std::string name;
  bool predicate = false;
  bool intensional = false;
  std::vector<int> arg_sorts;
  int value_sort = -1;  // -1 for predicates
  std::size_t cells = 1;
};

// Assignment of values to cells, keyed by cell name ("amount1", "p(a,2)").
using Assignment = std::map<std::string, Value>;

class Vocabulary {
 public:
  static std::shared_ptr<const Vocabulary> build(const Signature& sig, const Bounds& bounds = {}) {
    auto v = std::shared_ptr<Vocabulary>(new Vocabulary());
    v->sig_ = sig;
    v->add_sort(*sig.find_sort(kIntSort), bounds);
    for (const auto& s : sig.sorts) v->add_sort(s, bounds);
    // Intensional constants first, in declaration order; then the rest by name.
    for (const auto& c : sig.intensional) v->add_constant(c);
    for (const auto& [name, decl] : sig.predicates)
      if (!sig.is_intensional(name)) v->add_constant(name);
    for (const auto& [name, decl] : sig.functions)
      if (!sig.is_intensional(name)) v->add_constant(name);
    return v;
  }

  const Signature& signature() const { return sig_; }
  const std::vector<SortInfo>& sorts() const { return sorts_; }
  const SortInfo& sort(int i) const { return sorts_[static_cast<std::size_t>(i)]; }
  int sort_index(const std::string& name) const {
    auto it = sort_ids_.find(name);
    if (it == sort_ids_.end()) throw SortError("unknown sort '" + name + "'");
    return it->second;
  }
  const std::vector<ConstantInfo>& constants() const { return constants_; }
  const ConstantInfo& constant(int c) const { return constants_[static_cast<std::size_t>(c)]; }
  std::optional<int> find_constant(const std::string& name) const {
    auto it = constant_ids_.find(name);
    if (it == constant_ids_.end()) return std::nullopt;
    return it->second;
  }

  // Cell of the argument tuple, or nullopt if an argument is outside its universe.
  std::optional<std::size_t> cell_index(int c, const std::vector<Value>& args) const {
    const ConstantInfo& info = constant(c);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const SortInfo& s = sort(info.arg_sorts[i]);
      if (!s.contains(args[i])) return std::nullopt;
      idx = idx * s.size() + static_cast<std::size_t>(args[i] - s.universe->lo);
    }
    return idx;
  }

  std::vector<Value> cell_args(int c, std::size_t cell) const {
    const ConstantInfo& info = constant(c);
    std::vector<Value> args(info.arg_sorts.size());
    for (std::size_t i = args.size(); i-- > 0;) {
      const SortInfo& s = sort(info.arg_sorts[i]);
      args[i] = s.universe->lo + static_cast<Value>(cell % s.size());
      cell /= s.size();
    }
    return args;
  }

  std::string cell_name(int c, std::size_t cell) const {
    const ConstantInfo& info = constant(c);
    std::vector<std::string> sorts;
    for (int s : info.arg_sorts) sorts.push_back(sort(s).name);
    return cell_key(sig_, info.name, sorts, cell_args(c, cell));
  }

  // Inverse of cell_name.
  std::optional<std::pair<int, std::size_t>> find_cell(const std::string& key) const {
    auto c = find_constant(cell_constant(key));
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < constant(*c).cells; ++i)
      if (cell_name(*c, i) == key) return std::pair{*c, i};
    return std::nullopt;
  }

  // Range of values a cell can take; nullopt for unbounded integers.
  std::optional<Range> cell_domain(int c) const {
    const ConstantInfo& info = constant(c);
    if (info.predicate) return Range{0, 1};
    return sort(info.value_sort).universe;
  }

  std::string value_name(int sort_id, Value v) const {
    const SortInfo& s = sort(sort_id);
    if (s.kind == SortKind::Enumerated && v >= 0 && v < static_cast<Value>(s.elements.size()))
      return s.elements[static_cast<std::size_t>(v)];
    return std::to_string(v);
  }

  std::string cell_value_name(int c, Value v) const {
    const ConstantInfo& info = constant(c);
    if (info.predicate) return v ? "true" : "false";
    return value_name(info.value_sort, v);
  }

  // Parses a value written in source form for the given cell.
  std::optional<Value> parse_value(int c, const std::string& text) const {
    const ConstantInfo& info = constant(c);
    if (info.predicate) {
      if (text == "true" || text == "1") return 1;
      if (text == "false" || text == "0") return 0;
      return std::nullopt;
    }
    const SortInfo& s = sort(info.value_sort);
    for (std::size_t i = 0; i < s.elements.size(); ++i)
      if (s.elements[i] == text) return static_cast<Value>(i);
    try {
      std::size_t used = 0;
      Value v = std::stoll(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }

  bool same_universe(const Vocabulary& o) const {
    if (sorts_.size() != o.sorts_.size()) return false;
    for (std::size_t i = 0; i < sorts_.size(); ++i)
      if (sorts_[i].name != o.sorts_[i].name || sorts_[i].universe != o.sorts_[i].universe)
        return false;
    return true;
  }

 private:
  Vocabulary() = default;

  void add_sort(const Sort& s, const Bounds& bounds) {
    SortInfo info{s.name, s.kind, std::nullopt, s.elements};
    if (s.is_finite()) info.universe = Range{s.first(), s.last()};
    else if (bounds.integers) info.universe = bounds.integers;
    sort_ids_[s.name] = static_cast<int>(sorts_.size());
    sorts_.push_back(std::move(info));
  }

  void add_constant(const std::string& name) {
    ConstantInfo info;
    info.name = name;
    info.intensional = sig_.is_intensional(name);
    const std::vector<std::string>* args = nullptr;
    if (const auto* p = sig_.find_predicate(name)) {
      info.predicate = true;
      args = p;
    } else {
      const FunctionDecl* fn = sig_.find_function(name);
      args = &fn->args;
      info.value_sort = sort_index(fn->value);
    }
    for (const auto& a : *args) {
      int s = sort_index(a);
      if (!sort(s).universe)
        throw Error("constant '" + name + "' has an argument of unbounded sort '" + a + "'");
      info.arg_sorts.push_back(s);
      info.cells *= sort(s).size();
    }
    constant_ids_[name] = static_cast<int>(constants_.size());
    constants_.push_back(std::move(info));
  }

  Signature sig_;
  std::vector<SortInfo> sorts_;
  std::map<std::string, int> sort_ids_;
  std::vector<ConstantInfo> constants_;
  std::map<std::string, int> constant_ids_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

class Interpretation {
 public:
  explicit Interpretation(VocabularyPtr vocab) : vocab_(std::move(vocab)) {
    for (const auto& c : vocab_->constants()) {
      Value init = 0;
      if (!c.predicate) {
        if (const auto& u = vocab_->sort(c.value_sort).universe) init = u->lo;
      }
      tables_.emplace_back(c.cells, init);
    }
  }

  const Vocabulary& vocab() const { return *vocab_; }
  const VocabularyPtr& vocab_ptr() const { return vocab_; }

  Value get(int c, std::size_t cell) const {
    return tables_[static_cast<std::size_t>(c)][cell];
  }
  void set(int c, std::size_t cell, Value v) { tables_[static_cast<std::size_t>(c)][cell] = v; }

  Value get(const std::string& key) const {
    auto cell = vocab_->find_cell(key);
    if (!cell) throw Error("unknown cell '" + key + "'");
    return get(cell->first, cell->second);
  }
  void set(const std::string& key, Value v) {
    auto cell = vocab_->find_cell(key);
    if (!cell) throw Error("unknown cell '" + key + "'");
    set(cell->first, cell->second, v);
  }

  Assignment assignment() const {
    Assignment out;
    for (std::size_t c = 0; c < tables_.size(); ++c)
      for (std::size_t i = 0; i < tables_[c].size(); ++i)
        out[vocab_->cell_name(static_cast<int>(c), i)] = tables_[c][i];
    return out;
  }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.tables_ == b.tables_;
  }

 private:
  VocabularyPtr vocab_;
  std::vector<std::vector<Value>> tables_;
};

inline Assignment project(const Assignment& a, const std::vector<std::string>& keys) {
  Assignment out;
  for (const auto& k : keys) {
    auto it = a.find(k);
    if (it != a.end()) out.insert(*it);
  }
  return out;
}

// "amount1=5 fillup=false"
inline std::string assignment_text(const Vocabulary& vocab, const Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) {
    if (!out.empty()) out += ' ';
    auto cell = vocab.find_cell(k);
    out += k + "=" + (cell ? vocab.cell_value_name(cell->first, v) : std::to_string(v));
  }
  return out;
}

// Resolves "name=value" fixings against the vocabulary and checks ranges.
inline Fixings resolve_fixings(const Vocabulary& vocab, const std::map<std::string, std::string>& raw) {
  Fixings out;
  for (const auto& [key, text] : raw) {
    auto cell = vocab.find_cell(key);
    if (!cell) throw Error("unknown constant '" + key + "' in fixing");
    auto v = vocab.parse_value(cell->first, text);
    if (!v) throw Error("bad value '" + text + "' for '" + key + "'");
    auto dom = vocab.cell_domain(cell->first);
    if (dom && (*v < dom->lo || *v > dom->hi))
      throw Error("value " + text + " for '" + key + "' is outside its sort");
    out[key] = *v;
  }
  return out;
}

}  // namespace aspmt

#endif  // ASPMT_INTERPRETATION_HPP
