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

// Parser for the textual input language.
//
//   sort s = lo..hi.   sort s = {e1, ..., en}.
//   pred p(s1, ..., sn).   func f(s1, ..., sn) -> s.   intensional f, p.
//   Head :- Body.   Head.   :- Body.
//
// Heads are atoms, `f(t) = u`, or choices `{f(t) = u}`. Bodies are formulas:
// `,` conjunction, `|` disjunction, `->` implication, `not`, `#true`,
// `#false`, `#and(F)`, `#or(F)`, `#forall X:s (F)`, `#exists X:s (F)`, and
// comparisons `= != < <= > >=` over terms built from `+ - *`. Variables start
// with an uppercase letter. `%` starts a comment.
//
// A small preprocessor expands `#const name = n.`, `#for T in a..b { ... }`
// and bracketed index expressions such as `speed_[T-1]` before parsing.

#ifndef ASPMT_PARSER_HPP
#define ASPMT_PARSER_HPP

#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspmt/error.hpp"
#include "aspmt/logic.hpp"
#include "aspmt/syntax.hpp"

namespace aspmt {

// ---------------------------------------------------------------------------
// Preprocessor

struct PreprocessOptions {
  std::map<std::string, Value> constants;  // override #const definitions
};

namespace detail {

inline Value eval_index(const std::string& name, const std::string& sign, const std::string& k,
                        const std::map<std::string, Value>& env) {
  auto it = env.find(name);
  if (it == env.end()) throw ParseError({{SourceSpan{}, "unknown index name '" + name + "'"}});
  Value v = it->second;
  if (!k.empty()) v += (sign == "-" ? -1 : 1) * std::stoll(k);
  return v;
}

inline Value eval_bound(const std::string& text, const std::map<std::string, Value>& env) {
  static const std::regex kBound(R"(\s*(-?\d+)\s*|\s*([A-Za-z_]\w*)\s*(?:([+-])\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, kBound))
    throw ParseError({{SourceSpan{}, "bad #for bound '" + text + "'"}});
  if (m[1].matched) return std::stoll(m[1]);
  return eval_index(m[2], m[3], m[4], env);
}

inline std::string substitute_indices(const std::string& text,
                                      const std::map<std::string, Value>& env) {
  static const std::regex kIndex(R"(\[\s*([A-Za-z_]\w*)\s*(?:([+-])\s*(\d+))?\s*\])");
  std::string out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), kIndex);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (!env.count(m[1])) continue;
    out.append(text, last, static_cast<std::size_t>(m.position(0)) - last);
    out += std::to_string(eval_index(m[1], m[2], m[3], env));
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  out.append(text, last, std::string::npos);
  return out;
}

inline std::string expand_loops(const std::string& text, std::map<std::string, Value> env) {
  static const std::regex kFor(R"(#for\s+([A-Za-z_]\w*)\s+in\s+([^{]*?)\.\.([^{]*?)\{)");
  std::string out;
  std::size_t pos = 0;
  std::smatch m;
  while (std::regex_search(text.begin() + static_cast<std::ptrdiff_t>(pos), text.end(), m, kFor)) {
    std::size_t start = pos + static_cast<std::size_t>(m.position(0));
    std::size_t body_begin = start + static_cast<std::size_t>(m.length(0));
    int depth = 1;
    std::size_t i = body_begin;
    for (; i < text.size() && depth > 0; ++i) {
      if (text[i] == '{') ++depth;
      if (text[i] == '}') --depth;
    }
    if (depth != 0) throw ParseError({{SourceSpan{start, start, 1, 1}, "unterminated #for block"}});
    std::string body = text.substr(body_begin, i - 1 - body_begin);
    out += substitute_indices(text.substr(pos, start - pos), env);
    Value lo = eval_bound(m[2], env);
    Value hi = eval_bound(m[3], env);
    std::string var = m[1];
    for (Value v = lo; v <= hi; ++v) {
      auto inner = env;
      inner[var] = v;
      out += expand_loops(body, inner);
      out += '\n';
    }
    pos = i;
  }
  out += substitute_indices(text.substr(pos), env);
  return out;
}

}  // namespace detail

// Returns the text unchanged when it has no preprocessor directives.
inline std::string preprocess(const std::string& text, const PreprocessOptions& opts = {}) {
  if (text.find('#') == std::string::npos || (text.find("#const") == std::string::npos &&
                                              text.find("#for") == std::string::npos &&
                                              text.find('[') == std::string::npos))
    return text;
  static const std::regex kConst(R"(#const\s+([A-Za-z_]\w*)\s*=\s*(-?\d+)\s*\.)");
  std::map<std::string, Value> env;
  std::string stripped;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kConst);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    env[m[1]] = std::stoll(m[2]);
    stripped.append(text, last, static_cast<std::size_t>(m.position(0)) - last);
    stripped.append(static_cast<std::size_t>(m.length(0)), ' ');
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  stripped.append(text, last, std::string::npos);
  for (const auto& [k, v] : opts.constants) env[k] = v;
  return detail::expand_loops(stripped, env);
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  End, Lower, Upper, Number, Dot, DotDot, Comma, LParen, RParen, LBrace, RBrace, If, Colon,
  Arrow, Bar, Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Hash
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& errors) {
    std::vector<Token> out;
    for (;;) {
      skip();
      SourceSpan sp{pos_, pos_, line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", sp});
        return out;
      }
      char c = src_[pos_];
      auto word = [&] {
        std::size_t b = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        return std::string(src_.substr(b, pos_ - b));
      };
      Token t;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t b = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t = {Tok::Number, std::string(src_.substr(b, pos_ - b)), sp};
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string w = word();
        t = {std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower, w, sp};
      } else if (c == '#') {
        advance();
        std::string w = word();
        t = {Tok::Hash, "#" + w, sp};
      } else {
        auto two = [&](char a, char b) {
          return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        Tok k;
        int n = 1;
        if (two('.', '.')) k = Tok::DotDot, n = 2;
        else if (two(':', '-')) k = Tok::If, n = 2;
        else if (two('-', '>')) k = Tok::Arrow, n = 2;
        else if (two('!', '=')) k = Tok::Ne, n = 2;
        else if (two('<', '=')) k = Tok::Le, n = 2;
        else if (two('>', '=')) k = Tok::Ge, n = 2;
        else {
          switch (c) {
            case '.': k = Tok::Dot; break;
            case ',': k = Tok::Comma; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ':': k = Tok::Colon; break;
            case '|': k = Tok::Bar; break;
            case '=': k = Tok::Eq; break;
            case '<': k = Tok::Lt; break;
            case '>': k = Tok::Gt; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            default:
              errors.push_back({{pos_, pos_ + 1, line_, col_},
                                std::string("unexpected character '") + c + "'"});
              advance();
              continue;
          }
        }
        std::string text(src_.substr(pos_, static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) advance();
        t = {k, text, sp};
      }
      t.span.end = pos_;
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_[pos_] == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------------------
// Raw syntax, before names are resolved against the signature.

enum class RawKind {
  Ident, Variable, Numeral, Arith,                         // terms
  False, True, AndKw, OrKw, And, Or, Implies, Not, Forall, Exists, Compare, Atom  // formulas
};

struct Raw {
  RawKind kind;
  std::string name;  // identifier, variable, quantified variable
  std::string op;    // arithmetic or comparison operator; quantifier sort
  Value num = 0;
  std::vector<Raw> kids;
  SourceSpan span;
};

struct RawRule {
  HeadKind head_kind;
  std::optional<Raw> head;
  std::optional<Raw> body;
  SourceSpan span;
};

struct SyntaxFail {
  Diagnostic diag;
};

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> k{"sort", "pred", "func", "intensional", "not", "int"};
  return k;
}

class RawParser {
 public:
  explicit RawParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::Lower) && peek().text == w; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxFail{{t.span, msg + ", found " + found}};
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }
  std::string lower_name(const char* what) {
    if (!at(Tok::Lower) || reserved_words().count(peek().text)) fail(std::string("expected ") + what);
    return take().text;
  }
  Value number() {
    bool neg = false;
    if (at(Tok::Minus)) {
      take();
      neg = true;
    }
    Token t = expect(Tok::Number, "number");
    Value v = std::stoll(t.text);
    return neg ? -v : v;
  }
  void skip_statement() {
    while (!at(Tok::End) && !at(Tok::Dot)) take();
    if (at(Tok::Dot)) take();
  }
  std::size_t position() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

  // terms
  Raw term() {
    Raw l = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token op = take();
      Raw r = product();
      l = Raw{RawKind::Arith, {}, op.text, 0, {std::move(l), std::move(r)}, op.span};
    }
    return l;
  }
  Raw product() {
    Raw l = factor();
    while (at(Tok::Star)) {
      Token op = take();
      Raw r = factor();
      l = Raw{RawKind::Arith, {}, "*", 0, {std::move(l), std::move(r)}, op.span};
    }
    return l;
  }
  Raw factor() {
    SourceSpan sp = peek().span;
    if (at(Tok::Number) || (at(Tok::Minus) && peek(1).kind == Tok::Number))
      return Raw{RawKind::Numeral, {}, {}, number(), {}, sp};
    if (at(Tok::Upper)) return Raw{RawKind::Variable, take().text, {}, 0, {}, sp};
    if (at(Tok::Lower)) {
      Raw r{RawKind::Ident, lower_name("identifier"), {}, 0, {}, sp};
      if (at(Tok::LParen)) {
        take();
        r.kids.push_back(term());
        while (at(Tok::Comma)) {
          take();
          r.kids.push_back(term());
        }
        expect(Tok::RParen, "')'");
      }
      return r;
    }
    if (at(Tok::LParen)) {
      take();
      Raw r = term();
      expect(Tok::RParen, "')'");
      return r;
    }
    fail("expected term");
  }

  // formulas
  Raw formula() {
    Raw l = disjunction();
    if (at(Tok::Arrow)) {
      SourceSpan sp = take().span;
      Raw r = formula();
      return Raw{RawKind::Implies, {}, {}, 0, {std::move(l), std::move(r)}, sp};
    }
    return l;
  }
  Raw disjunction() {
    Raw first = conjunction();
    if (!at(Tok::Bar)) return first;
    Raw r{RawKind::Or, {}, {}, 0, {}, first.span};
    r.kids.push_back(std::move(first));
    while (at(Tok::Bar)) {
      take();
      r.kids.push_back(conjunction());
    }
    return r;
  }
  Raw conjunction() {
    Raw first = unary();
    if (!at(Tok::Comma)) return first;
    Raw r{RawKind::And, {}, {}, 0, {}, first.span};
    r.kids.push_back(std::move(first));
    while (at(Tok::Comma)) {
      take();
      r.kids.push_back(unary());
    }
    return r;
  }
  Raw unary() {
    if (at_word("not")) {
      SourceSpan sp = take().span;
      return Raw{RawKind::Not, {}, {}, 0, {unary()}, sp};
    }
    return primary();
  }
  Raw primary() {
    SourceSpan sp = peek().span;
    if (at(Tok::Hash)) {
      std::string kw = take().text;
      if (kw == "#false") return Raw{RawKind::False, {}, {}, 0, {}, sp};
      if (kw == "#true") return Raw{RawKind::True, {}, {}, 0, {}, sp};
      if (kw == "#and" || kw == "#or") {
        Raw r{kw == "#and" ? RawKind::AndKw : RawKind::OrKw, {}, {}, 0, {}, sp};
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) r.kids.push_back(formula());
        expect(Tok::RParen, "')'");
        return r;
      }
      if (kw == "#forall" || kw == "#exists") {
        Raw r{kw == "#forall" ? RawKind::Forall : RawKind::Exists, {}, {}, 0, {}, sp};
        r.name = expect(Tok::Upper, "variable").text;
        expect(Tok::Colon, "':'");
        if (at_word("int")) r.op = take().text;
        else r.op = lower_name("sort name");
        expect(Tok::LParen, "'('");
        r.kids.push_back(formula());
        expect(Tok::RParen, "')'");
        return r;
      }
      throw SyntaxFail{{sp, "unknown keyword '" + kw + "'"}};
    }
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      try {
        take();
        Raw inner = formula();
        expect(Tok::RParen, "')'");
        if (!is_term_continuation()) return inner;
      } catch (const SyntaxFail&) {
      }
      pos_ = save;
    }
    return comparison();
  }
  bool is_term_continuation() const {
    switch (peek().kind) {
      case Tok::Eq: case Tok::Ne: case Tok::Lt: case Tok::Le: case Tok::Gt: case Tok::Ge:
      case Tok::Plus: case Tok::Minus: case Tok::Star: return true;
      default: return false;
    }
  }
  Raw comparison() {
    SourceSpan sp = peek().span;
    Raw l = term();
    std::string op;
    switch (peek().kind) {
      case Tok::Eq: case Tok::Ne: case Tok::Lt: case Tok::Le: case Tok::Gt: case Tok::Ge:
        op = take().text;
        break;
      default:
        if (l.kind != RawKind::Ident) throw SyntaxFail{{sp, "expected comparison after term"}};
        return Raw{RawKind::Atom, {}, {}, 0, {std::move(l)}, sp};
    }
    Raw r = term();
    return Raw{RawKind::Compare, {}, op, 0, {std::move(l), std::move(r)}, sp};
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution of raw syntax against a signature.

class Resolver {
 public:
  Resolver(const Signature& sig, std::vector<Diagnostic>& errors) : sig_(sig), errors_(errors) {}

  // Infers sorts of the free (schematic) variables of `parts`.
  std::map<std::string, std::string> infer(const std::vector<const Raw*>& parts, SourceSpan span) {
    std::map<std::string, std::set<std::string>> found;
    std::set<std::string> all;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Raw* p : parts) {
        std::set<std::string> bound;
        changed = visit(*p, bound, found, all) || changed;
      }
    }
    std::map<std::string, std::string> out;
    for (const auto& v : all) {
      auto it = found.find(v);
      if (it == found.end() || it->second.empty()) {
        error(span, "cannot infer the sort of variable " + v);
      } else if (it->second.size() > 1) {
        std::string sorts;
        for (const auto& s : it->second) sorts += (sorts.empty() ? "" : ", ") + s;
        error(span, "variable " + v + " is used at different sorts: " + sorts);
      } else {
        out[v] = *it->second.begin();
      }
    }
    return out;
  }

  Term term(const Raw& r, const std::map<std::string, std::string>& vars) {
    switch (r.kind) {
      case RawKind::Numeral: return Term::num(r.num);
      case RawKind::Variable: {
        auto it = vars.find(r.name);
        return Term::var(r.name, it == vars.end() ? std::string("?") : it->second);
      }
      case RawKind::Arith: {
        ArithOp op = r.op == "+" ? ArithOp::Add : r.op == "-" ? ArithOp::Sub : ArithOp::Mul;
        return Term::arith(op, term(r.kids[0], vars), term(r.kids[1], vars));
      }
      case RawKind::Ident: {
        std::vector<Term> args;
        for (const auto& k : r.kids) args.push_back(term(k, vars));
        if (!sig_.find_function(r.name)) {
          if (auto e = sig_.find_element(r.name); e && r.kids.empty())
            return Term::elem(e->first, e->second, r.name);
          if (!sig_.find_predicate(r.name)) error(r.span, "undeclared symbol '" + r.name + "'");
        }
        return Term::app(r.name, std::move(args));
      }
      default: break;
    }
    error(r.span, "expected a term");
    return Term::num(0);
  }

  Formula formula(const Raw& r, std::map<std::string, std::string> vars) {
    auto all = [&](RawKind) {
      std::vector<Formula> fs;
      for (const auto& k : r.kids) fs.push_back(formula(k, vars));
      return fs;
    };
    switch (r.kind) {
      case RawKind::False: return Formula::falsum();
      case RawKind::True: return Formula::top();
      case RawKind::AndKw:
      case RawKind::And: return Formula::conj(all(r.kind));
      case RawKind::OrKw:
      case RawKind::Or: return Formula::disj(all(r.kind));
      case RawKind::Implies:
        return Formula::implies(formula(r.kids[0], vars), formula(r.kids[1], vars));
      case RawKind::Not: return Formula::neg(formula(r.kids[0], vars));
      case RawKind::Forall:
      case RawKind::Exists: {
        if (!sig_.find_sort(r.op)) error(r.span, "undeclared sort '" + r.op + "'");
        vars[r.name] = r.op;
        Var v{r.name, r.op};
        Formula body = formula(r.kids[0], vars);
        return r.kind == RawKind::Forall ? Formula::forall(v, body) : Formula::exists(v, body);
      }
      case RawKind::Atom: {
        const Raw& id = r.kids[0];
        if (!sig_.find_predicate(id.name)) {
          error(id.span, sig_.find_function(id.name)
                             ? "function '" + id.name + "' used as a formula"
                             : "undeclared predicate '" + id.name + "'");
        }
        std::vector<Term> args;
        for (const auto& k : id.kids) args.push_back(term(k, vars));
        return Formula::atom(id.name, std::move(args));
      }
      case RawKind::Compare: {
        Term l = term(r.kids[0], vars);
        Term rt = term(r.kids[1], vars);
        if (r.op == "=") return Formula::equal(l, rt);
        if (r.op == "!=") return Formula::neg(Formula::equal(l, rt));
        CompareOp op = r.op == "<" ? CompareOp::Lt : r.op == "<=" ? CompareOp::Le
                     : r.op == ">" ? CompareOp::Gt : CompareOp::Ge;
        return Formula::compare(op, l, rt);
      }
      default: break;
    }
    error(r.span, "expected a formula");
    return Formula::falsum();
  }

  void error(SourceSpan sp, std::string msg) { errors_.push_back({sp, std::move(msg)}); }

 private:
  std::optional<std::string> known_sort(const Raw& r, const std::set<std::string>& bound,
                                        const std::map<std::string, std::set<std::string>>& found) {
    if (r.kind == RawKind::Ident) {
      if (const FunctionDecl* fn = sig_.find_function(r.name)) return fn->value;
      if (auto e = sig_.find_element(r.name); e && r.kids.empty()) return e->first;
    }
    if (r.kind == RawKind::Variable && !bound.count(r.name)) {
      auto it = found.find(r.name);
      if (it != found.end() && it->second.size() == 1) return *it->second.begin();
    }
    return std::nullopt;
  }

  bool add(std::map<std::string, std::set<std::string>>& found, const std::string& v,
           const std::string& sort) {
    return found[v].insert(sort).second;
  }

  // Returns true when a new sort fact was learned.
  bool visit(const Raw& r, std::set<std::string>& bound,
             std::map<std::string, std::set<std::string>>& found, std::set<std::string>& all) {
    bool changed = false;
    switch (r.kind) {
      case RawKind::Variable:
        if (!bound.count(r.name)) all.insert(r.name);
        return false;
      case RawKind::Ident:
      case RawKind::Atom: {
        const Raw& id = r.kind == RawKind::Atom ? r.kids[0] : r;
        const std::vector<std::string>* args = nullptr;
        if (const FunctionDecl* fn = sig_.find_function(id.name)) args = &fn->args;
        else args = sig_.find_predicate(id.name);
        for (std::size_t i = 0; i < id.kids.size(); ++i) {
          const Raw& k = id.kids[i];
          if (args && i < args->size() && k.kind == RawKind::Variable && !bound.count(k.name))
            changed = add(found, k.name, (*args)[i]) || changed;
          changed = visit(k, bound, found, all) || changed;
        }
        return changed;
      }
      case RawKind::Compare:
        if (r.op == "=" || r.op == "!=") {
          for (int side = 0; side < 2; ++side) {
            const Raw& v = r.kids[static_cast<std::size_t>(side)];
            const Raw& o = r.kids[static_cast<std::size_t>(1 - side)];
            if (v.kind == RawKind::Variable && !bound.count(v.name))
              if (auto s = known_sort(o, bound, found)) changed = add(found, v.name, *s) || changed;
          }
        }
        break;
      case RawKind::Forall:
      case RawKind::Exists: {
        bool fresh = bound.insert(r.name).second;
        changed = visit(r.kids[0], bound, found, all);
        if (fresh) bound.erase(r.name);
        return changed;
      }
      default: break;
    }
    for (const auto& k : r.kids) changed = visit(k, bound, found, all) || changed;
    return changed;
  }

  const Signature& sig_;
  std::vector<Diagnostic>& errors_;
};

// Value of a ground term built from numerals, elements and arithmetic.
inline std::optional<Value> constant_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::Numeral:
    case TermKind::Element: return t.value();
    case TermKind::Arith: {
      auto l = constant_value(t.left());
      auto r = constant_value(t.right());
      if (!l || !r) return std::nullopt;
      switch (t.op()) {
        case ArithOp::Add: return *l + *r;
        case ArithOp::Sub: return *l - *r;
        case ArithOp::Mul: return *l * *r;
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

}  // namespace detail

// Cell key "f(1,a)" for a constant applied to values of the given sorts.
inline std::string cell_key(const Signature& sig, const std::string& name,
                            const std::vector<std::string>& arg_sorts,
                            const std::vector<Value>& args) {
  if (args.empty()) return name;
  std::string key = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    key += (i ? "," : "") + value_text(sig, arg_sorts[i], args[i]);
  return key + ")";
}

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> errors;
  bool ok() const { return program.has_value(); }
};

namespace detail {

struct Statements {
  Signature sig;
  std::vector<RawRule> rules;
};

inline bool in_range(const Signature& sig, const std::string& sort, Value v) {
  const Sort* s = sig.find_sort(sort);
  return s && (!s->is_finite() || (s->first() <= v && v <= s->last()));
}

// Ground facts about non-intensional constants become fixings.
inline bool lift_fixing(const Signature& sig, const Rule& r, Fixings& fix) {
  auto args_of = [&](const std::vector<Term>& ts, const std::vector<std::string>& sorts,
                     std::vector<Value>& out) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto v = constant_value(ts[i]);
      if (!v || !in_range(sig, sorts[i], *v)) return false;
      out.push_back(*v);
    }
    return true;
  };
  auto record = [&](const std::string& key, Value v) {
    auto [it, fresh] = fix.emplace(key, v);
    return fresh || it->second == v;
  };
  bool fact = r.body.kind() == FormulaKind::And && r.body.subs().empty();
  if (fact && r.head_kind == HeadKind::Atom && !sig.is_intensional(r.head.pred())) {
    const auto* sorts = sig.find_predicate(r.head.pred());
    std::vector<Value> args;
    if (!sorts || !args_of(r.head.terms(), *sorts, args)) return false;
    return record(cell_key(sig, r.head.pred(), *sorts, args), 1);
  }
  if (fact && r.head_kind == HeadKind::FunctionEq) {
    const Term& lhs = r.head.left_term();
    const FunctionDecl* fn = sig.find_function(lhs.name());
    if (!fn || sig.is_intensional(lhs.name())) return false;
    std::vector<Value> args;
    auto v = constant_value(r.head.right_term());
    if (!args_of(lhs.args(), fn->args, args) || !v || !in_range(sig, fn->value, *v)) return false;
    return record(cell_key(sig, lhs.name(), fn->args, args), *v);
  }
  if (r.head_kind == HeadKind::Falsum && r.body.kind() == FormulaKind::Atom &&
      !sig.is_intensional(r.body.pred())) {
    const auto* sorts = sig.find_predicate(r.body.pred());
    std::vector<Value> args;
    if (!sorts || !args_of(r.body.terms(), *sorts, args)) return false;
    return record(cell_key(sig, r.body.pred(), *sorts, args), 0);
  }
  return false;
}

inline void parse_statement(RawParser& p, Statements& st, std::vector<Diagnostic>& errors) {
  SourceSpan start = p.peek().span;
  auto names_with_args = [&](bool allow_args) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    do {
      if (!out.empty()) p.take();
      std::string name = p.lower_name("name");
      std::vector<std::string> args;
      if (allow_args && p.at(Tok::LParen)) {
        p.take();
        do {
          if (!args.empty()) p.take();
          if (p.at_word("int")) args.push_back(p.take().text);
          else args.push_back(p.lower_name("sort name"));
        } while (p.at(Tok::Comma));
        p.expect(Tok::RParen, "')'");
      }
      out.emplace_back(std::move(name), std::move(args));
    } while (p.at(Tok::Comma));
    return out;
  };
  if (p.at_word("sort")) {
    p.take();
    std::string name = p.lower_name("sort name");
    p.expect(Tok::Eq, "'='");
    if (p.at(Tok::LBrace)) {
      p.take();
      std::vector<std::string> elems;
      do {
        if (!elems.empty()) p.take();
        elems.push_back(p.lower_name("element name"));
      } while (p.at(Tok::Comma));
      p.expect(Tok::RBrace, "'}'");
      st.sig.sorts.push_back(Sort::enumerated(name, std::move(elems)));
    } else if (p.at_word("int")) {
      p.take();
      st.sig.sorts.push_back(Sort::integer(name));
    } else {
      Value lo = p.number();
      p.expect(Tok::DotDot, "'..'");
      Value hi = p.number();
      st.sig.sorts.push_back(Sort::range(name, lo, hi));
    }
  } else if (p.at_word("pred")) {
    p.take();
    for (auto& [n, args] : names_with_args(true)) {
      if (!st.sig.predicates.emplace(n, args).second)
        errors.push_back({start, "duplicate declaration of '" + n + "'"});
    }
  } else if (p.at_word("func")) {
    p.take();
    auto items = names_with_args(true);
    p.expect(Tok::Arrow, "'->'");
    std::string value = p.at_word("int") ? p.take().text : p.lower_name("sort name");
    for (auto& [n, args] : items) {
      if (!st.sig.functions.emplace(n, FunctionDecl{args, value}).second)
        errors.push_back({start, "duplicate declaration of '" + n + "'"});
    }
  } else if (p.at_word("intensional")) {
    p.take();
    for (auto& [n, args] : names_with_args(false)) st.sig.intensional.push_back(n);
  } else {
    RawRule rr{HeadKind::Falsum, std::nullopt, std::nullopt, start};
    if (p.at(Tok::If)) {
      p.take();
      rr.body = p.formula();
    } else {
      if (p.at(Tok::LBrace)) {
        p.take();
        Raw h = p.comparison();
        if (h.kind != RawKind::Compare || h.op != "=")
          throw SyntaxFail{{h.span, "choice head must be an equality"}};
        p.expect(Tok::RBrace, "'}'");
        rr.head_kind = HeadKind::Choice;
        rr.head = std::move(h);
      } else {
        Raw h = p.comparison();
        if (h.kind == RawKind::Atom) rr.head_kind = HeadKind::Atom;
        else if (h.kind == RawKind::Compare && h.op == "=") rr.head_kind = HeadKind::FunctionEq;
        else throw SyntaxFail{{h.span, "rule head must be an atom or an equality"}};
        rr.head = std::move(h);
      }
      if (p.at(Tok::If)) {
        p.take();
        rr.body = p.formula();
      }
    }
    st.rules.push_back(std::move(rr));
  }
  if (!p.at(Tok::Dot)) p.fail("expected '.'");
  p.take();
}

}  // namespace detail

inline ParseResult parse_program(const std::string& source, const PreprocessOptions& opts = {}) {
  ParseResult res;
  std::string text;
  try {
    text = preprocess(source, opts);
  } catch (const ParseError& e) {
    res.errors = e.diagnostics();
    return res;
  }
  auto toks = detail::Lexer(text).run(res.errors);
  detail::RawParser p(std::move(toks));
  detail::Statements st;
  while (!p.at(Tok::End)) {
    try {
      detail::parse_statement(p, st, res.errors);
    } catch (const detail::SyntaxFail& f) {
      res.errors.push_back(f.diag);
      p.skip_statement();
    }
  }

  Program prog;
  prog.signature = st.sig;
  for (const auto& d : check_signature(st.sig))
    res.errors.push_back({SourceSpan{}, "sort error: " + d.message});

  detail::Resolver resolve(st.sig, res.errors);
  for (const auto& rr : st.rules) {
    std::size_t before = res.errors.size();
    std::vector<const detail::Raw*> parts;
    if (rr.head) parts.push_back(&*rr.head);
    if (rr.body) parts.push_back(&*rr.body);
    auto vars = resolve.infer(parts, rr.span);
    Rule r;
    r.head_kind = rr.head_kind;
    if (rr.head) r.head = resolve.formula(*rr.head, vars);
    if (rr.body) r.body = resolve.formula(*rr.body, vars);
    for (const auto& [n, s] : vars) r.variables.push_back(Var{n, s});
    if (res.errors.size() != before) continue;
    for (const auto& d : check_rule(st.sig, r, std::nullopt))
      res.errors.push_back({rr.span, "sort error: " + d.message + " in '" + d.subterm + "'"});
    if (res.errors.size() != before) continue;
    if (r.variables.empty() && detail::lift_fixing(st.sig, r, prog.fixings)) continue;
    prog.rules.push_back(std::move(r));
  }
  if (res.errors.empty()) res.program = std::move(prog);
  return res;
}

inline Program parse_program_or_throw(const std::string& source,
                                      const PreprocessOptions& opts = {}) {
  auto res = parse_program(source, opts);
  if (!res.ok()) throw ParseError(res.errors);
  return std::move(*res.program);
}

// A standalone formula; free variables get their sorts inferred as in rules.
inline Formula parse_formula(const std::string& text, const Signature& sig) {
  std::vector<Diagnostic> errors;
  auto toks = detail::Lexer(text).run(errors);
  detail::RawParser p(std::move(toks));
  std::optional<detail::Raw> raw;
  try {
    raw = p.formula();
    if (!p.at(Tok::End)) p.fail("expected end of formula");
  } catch (const detail::SyntaxFail& f) {
    errors.push_back(f.diag);
  }
  if (!errors.empty()) throw ParseError(errors);
  detail::Resolver resolve(sig, errors);
  auto vars = resolve.infer({&*raw}, SourceSpan{});
  Formula f = resolve.formula(*raw, vars);
  for (const auto& d : check_formula(sig, f))
    errors.push_back({SourceSpan{}, "sort error: " + d.message + " in '" + d.subterm + "'"});
  if (!errors.empty()) throw ParseError(errors);
  return f;
}

}  // namespace aspmt

#endif  // ASPMT_PARSER_HPP
