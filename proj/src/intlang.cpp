#include "doctrina/intlang.hpp"

#include <cctype>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

enum class Tok { ident, lparen, rparen, comma, colon, dot, amp, eq, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) ++j;
      out.push_back({Tok::ident, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok k;
    switch (ch) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      case ':': k = Tok::colon; break;
      case '.': k = Tok::dot; break;
      case '&': k = Tok::amp; break;
      case '=': k = Tok::eq; break;
      default: throw LanguageError(std::string("lex error: unexpected '") + ch + "'", i);
    }
    out.push_back({k, std::string(1, ch), i});
    ++i;
  }
  out.push_back({Tok::end, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& src, const Signature& sig) : toks_(lex(src)), sig_(sig) {}

  RegularFormula parse() {
    RegularFormula f = formula();
    if (peek().kind != Tok::end) error("parse error: unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  [[noreturn]] void error(const std::string& msg) const {
    throw LanguageError(peek().kind == Tok::end ? msg + " (end of input)" : msg, peek().pos);
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) error(std::string("parse error: expected ") + what);
    return toks_[i_++];
  }

  RegularFormula formula() {
    RegularFormula left = atom();
    while (peek().kind == Tok::amp) {
      const std::size_t pos = toks_[i_++].pos;
      RegularFormula right = atom();
      RegularFormula c;
      c.kind = RegularFormula::Kind::conj;
      c.pos = pos;
      c.children = {std::move(left), std::move(right)};
      left = std::move(c);
    }
    return left;
  }

  RegularFormula atom() {
    const Token& t = peek();
    RegularFormula f;
    f.pos = t.pos;
    if (t.kind == Tok::lparen) {
      ++i_;
      f = formula();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (t.kind != Tok::ident) error("parse error: expected formula");
    if (t.text == "T") {
      ++i_;
      f.kind = RegularFormula::Kind::top;
      return f;
    }
    if (t.text == "E") {
      ++i_;
      f.kind = RegularFormula::Kind::exists;
      f.name = expect(Tok::ident, "variable").text;
      expect(Tok::colon, "':'");
      const Token s = expect(Tok::ident, "sort");
      if (!sig_.sorts.count(s.text)) throw LanguageError("unknown sort '" + s.text + "'", s.pos);
      f.sort = s.text;
      expect(Tok::dot, "'.'");
      f.children.push_back(formula());
      return f;
    }
    if (auto it = sig_.relations.find(t.text); it != sig_.relations.end()) {
      ++i_;
      f.kind = RegularFormula::Kind::relation;
      f.name = t.text;
      f.terms = arguments();
      if (f.terms.size() != it->second.args.size()) {
        throw LanguageError("arity mismatch for '" + t.text + "'", t.pos);
      }
      return f;
    }
    f.kind = RegularFormula::Kind::equal;
    f.terms.push_back(term());
    const std::size_t eq = peek().pos;
    expect(Tok::eq, "'='");
    f.terms.push_back(term());
    f.pos = eq;
    return f;
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (peek().kind != Tok::lparen) return args;
    ++i_;
    if (peek().kind != Tok::rparen) {
      args.push_back(term());
      while (peek().kind == Tok::comma) {
        ++i_;
        args.push_back(term());
      }
    }
    expect(Tok::rparen, "')'");
    return args;
  }

  Term term() {
    const Token t = expect(Tok::ident, "term");
    Term out;
    out.name = t.text;
    out.pos = t.pos;
    auto fn = sig_.functions.find(t.text);
    if (peek().kind == Tok::lparen || (fn != sig_.functions.end() && fn->second.args.empty())) {
      if (fn == sig_.functions.end()) throw LanguageError("unknown symbol '" + t.text + "'", t.pos);
      out.kind = Term::Kind::apply;
      out.args = arguments();
      if (out.args.size() != fn->second.args.size()) {
        throw LanguageError("arity mismatch for '" + t.text + "'", t.pos);
      }
    }
    return out;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Signature& sig_;
};

// Left-associated tuple of morphisms out of a common domain.
Morphism tuple(const Category& c, ObjectId dom, const std::vector<Morphism>& ms) {
  if (ms.empty()) return c.to_terminal(dom);
  Morphism acc = ms[0];
  for (std::size_t i = 1; i < ms.size(); ++i) acc = pair(c, acc, ms[i]);
  return acc;
}

std::string sort_name(const Signature& sig, ObjectId a) {
  for (const auto& [n, id] : sig.sorts) {
    if (id == a) return n;
  }
  return "#" + std::to_string(a);
}

}  // namespace

std::string to_string(const Term& t) {
  if (t.kind == Term::Kind::variable) return t.name;
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + to_string(t.args[i]);
  return s + ")";
}

std::string to_string(const RegularFormula& f) {
  switch (f.kind) {
    case RegularFormula::Kind::top: return "T";
    case RegularFormula::Kind::conj: return "(" + to_string(f.children[0]) + " & " + to_string(f.children[1]) + ")";
    case RegularFormula::Kind::equal: return to_string(f.terms[0]) + " = " + to_string(f.terms[1]);
    case RegularFormula::Kind::relation: {
      std::string s = f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? "," : "") + to_string(f.terms[i]);
      return s + ")";
    }
    case RegularFormula::Kind::exists: return "(E " + f.name + ":" + f.sort + ". " + to_string(f.children[0]) + ")";
  }
  return "";
}

TypingContext::TypingContext(const Category& c, std::vector<std::pair<std::string, ObjectId>> vars)
    : c_(&c), vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[i].first == vars_[j].first) throw LanguageError("variable '" + vars_[i].first + "' bound twice", 0);
    }
  }
  if (vars_.empty()) {
    object_ = require_terminal(c);
    return;
  }
  object_ = vars_[0].second;
  projections_.push_back(c.identity(object_));
  for (std::size_t i = 1; i < vars_.size(); ++i) {
    const auto w = require_product(c, object_, vars_[i].second);
    for (auto& p : projections_) p = c.compose(p, w.p1);
    projections_.push_back(w.p2);
    object_ = w.object;
  }
}

std::optional<std::size_t> TypingContext::find(const std::string& v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].first == v) return i;
  }
  return std::nullopt;
}

std::pair<TypingContext, Morphism> TypingContext::extend(const std::string& v, ObjectId sort) const {
  auto vars = vars_;
  vars.emplace_back(v, sort);
  TypingContext ext(*c_, std::move(vars));
  Morphism drop = vars_.empty() ? c_->to_terminal(sort) : require_product(*c_, object_, sort).p1;
  return {std::move(ext), std::move(drop)};
}

RegularFormula parse_formula(const std::string& src, const Signature& sig) { return Parser(src, sig).parse(); }

TypingContext parse_context(const std::string& src, const Signature& sig, const Category& c) {
  std::vector<std::pair<std::string, ObjectId>> vars;
  std::size_t start = 0;
  while (start < src.size()) {
    std::size_t end = src.find(',', start);
    if (end == std::string::npos) end = src.size();
    std::string item = src.substr(start, end - start);
    const auto colon = item.find(':');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (colon == std::string::npos) throw LanguageError("context entry without ':'", start);
    const std::string v = trim(item.substr(0, colon));
    const std::string s = trim(item.substr(colon + 1));
    auto it = sig.sorts.find(s);
    if (v.empty() || it == sig.sorts.end()) throw LanguageError("unknown sort '" + s + "'", start + colon + 1);
    vars.emplace_back(v, it->second);
    start = end + 1;
  }
  return TypingContext(c, std::move(vars));
}

Morphism evaluate_term(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const Term& t) {
  const Category& c = d.base();
  if (t.kind == Term::Kind::variable) {
    auto i = ctx.find(t.name);
    if (!i) {
      auto fn = sig.functions.find(t.name);
      if (fn != sig.functions.end() && fn->second.args.empty()) {
        return c.compose(fn->second.morphism, c.to_terminal(ctx.object()));
      }
      throw LanguageError("unbound variable '" + t.name + "'", t.pos);
    }
    return ctx.projection(*i);
  }
  const auto& fn = sig.functions.at(t.name);
  std::vector<Morphism> args;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    args.push_back(evaluate_term(d, sig, ctx, t.args[i]));
    if (args.back().cod != fn.args[i]) {
      throw LanguageError("type error: '" + to_string(t.args[i]) + "' has sort " + sort_name(sig, args.back().cod) +
                              ", expected " + sort_name(sig, fn.args[i]),
                          t.args[i].pos);
    }
  }
  return c.compose(fn.morphism, tuple(c, ctx.object(), args));
}

Elem evaluate(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const RegularFormula& f) {
  const Category& c = d.base();
  switch (f.kind) {
    case RegularFormula::Kind::top:
      return d.top(ctx.object());
    case RegularFormula::Kind::conj:
      return d.meet(ctx.object(), evaluate(d, sig, ctx, f.children[0]), evaluate(d, sig, ctx, f.children[1]));
    case RegularFormula::Kind::equal: {
      const Morphism t = evaluate_term(d, sig, ctx, f.terms[0]);
      const Morphism u = evaluate_term(d, sig, ctx, f.terms[1]);
      if (t.cod != u.cod) {
        throw LanguageError("type error: '" + to_string(f) + "' compares sorts " + sort_name(sig, t.cod) + " and " +
                                sort_name(sig, u.cod),
                            f.pos);
      }
      return d.reindex(pair(c, t, u), d.equality(t.cod));
    }
    case RegularFormula::Kind::relation: {
      const auto& rel = sig.relations.at(f.name);
      std::vector<Morphism> args;
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        args.push_back(evaluate_term(d, sig, ctx, f.terms[i]));
        if (args.back().cod != rel.args[i]) {
          throw LanguageError("type error: argument '" + to_string(f.terms[i]) + "' of " + f.name, f.terms[i].pos);
        }
      }
      return d.reindex(tuple(c, ctx.object(), args), rel.formula);
    }
    case RegularFormula::Kind::exists: {
      if (ctx.find(f.name)) throw LanguageError("variable '" + f.name + "' already bound", f.pos);
      auto [ext, drop] = ctx.extend(f.name, sig.sorts.at(f.sort));
      return d.exists(drop, evaluate(d, sig, ext, f.children[0]));
    }
  }
  throw LanguageError("unknown formula node", f.pos);
}

bool entails(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const RegularFormula& phi,
             const RegularFormula& psi) {
  return d.leq(ctx.object(), evaluate(d, sig, ctx, phi), evaluate(d, sig, ctx, psi));
}

}  // namespace doctrina
