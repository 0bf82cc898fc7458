#include "zfcat/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <vector>

namespace zfcat {

namespace {

enum class Tok {
  Ident, Zero, One,
  LParen, RParen, LBrace, RBrace, Langle, Rangle, Comma, Dot, Bar,
  Tilde, AndOp, OrOp, Arrow, IffOp, Equals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

const std::set<std::string> kKeywords = {
    "forall", "exists", "in", "sub", "true", "false",
    "sigma", "sing", "upair", "Un", "Fun", "ON", "Nat", "dom", "ran",
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance(1);
      if (pos >= src.size()) break;
      int l = line, c = col;
      char ch = src[pos];
      auto push = [&](Tok k, std::string t, std::size_t n) {
        out.push_back({k, std::move(t), l, c});
        advance(n);
      };
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t j = pos;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                  src[j] == '_' || src[j] == '\'')) ++j;
        push(Tok::Ident, src.substr(pos, j - pos), j - pos);
        continue;
      }
      if (ch == '0') { push(Tok::Zero, "0", 1); continue; }
      if (ch == '1') { push(Tok::One, "1", 1); continue; }
      if (src.compare(pos, 3, "<->") == 0) { push(Tok::IffOp, "<->", 3); continue; }
      if (src.compare(pos, 2, "->") == 0) { push(Tok::Arrow, "->", 2); continue; }
      if (src.compare(pos, 2, "/\\") == 0) { push(Tok::AndOp, "/\\", 2); continue; }
      if (src.compare(pos, 2, "\\/") == 0) { push(Tok::OrOp, "\\/", 2); continue; }
      switch (ch) {
        case '(': push(Tok::LParen, "(", 1); continue;
        case ')': push(Tok::RParen, ")", 1); continue;
        case '{': push(Tok::LBrace, "{", 1); continue;
        case '}': push(Tok::RBrace, "}", 1); continue;
        case '<': push(Tok::Langle, "<", 1); continue;
        case '>': push(Tok::Rangle, ">", 1); continue;
        case ',': push(Tok::Comma, ",", 1); continue;
        case '.': push(Tok::Dot, ".", 1); continue;
        case '|': push(Tok::Bar, "|", 1); continue;
        case '~': push(Tok::Tilde, "~", 1); continue;
        case '=': push(Tok::Equals, "=", 1); continue;
        default: fail(std::string("unexpected character '") + ch + "'");
      }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t i = 0;

  const Token& peek(std::size_t k = 0) const {
    return toks[std::min(i + k, toks.size() - 1)];
  }
  const Token& next() { return toks[std::min(i++, toks.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }

  bool at_ident(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    next();
  }

  void expect_word(const char* word) {
    if (!at_ident(word)) fail(std::string("expected '") + word + "'", peek());
    next();
  }

  Var variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a variable name", t);
    if (kKeywords.count(t.text)) fail("'" + t.text + "' is a keyword, not a variable", t);
    next();
    return Var{t.text};
  }

  // -- terms -----------------------------------------------------------

  TermPtr call1(TermPtr (*mk)(TermPtr)) {
    expect(Tok::LParen, "'('");
    TermPtr a = term();
    expect(Tok::RParen, "')'");
    return mk(std::move(a));
  }

  TermPtr term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero: next(); return sf::zero();
      case Tok::One: next(); return sf::one();
      case Tok::Langle: {
        next();
        TermPtr a = term();
        expect(Tok::Comma, "','");
        TermPtr b = term();
        expect(Tok::Rangle, "'>'");
        return sf::pair(std::move(a), std::move(b));
      }
      case Tok::LBrace: {
        next();
        Var binder = variable();
        expect(Tok::Bar, "'|'");
        SFormulaPtr body = formula();
        expect(Tok::RBrace, "'}'");
        return sf::cls(std::move(binder), std::move(body));
      }
      case Tok::Ident: {
        if (t.text == "sigma") { next(); return call1(&sf::sigma); }
        if (t.text == "sing") { next(); return call1(&sf::sing); }
        if (t.text == "Un") { next(); return call1(&sf::un); }
        if (t.text == "upair") {
          next();
          expect(Tok::LParen, "'('");
          TermPtr a = term();
          expect(Tok::Comma, "','");
          TermPtr b = term();
          expect(Tok::RParen, "')'");
          return sf::upair(std::move(a), std::move(b));
        }
        return sf::tvar(variable());
      }
      default:
        fail("expected a term", t);
    }
  }

  // -- atoms -----------------------------------------------------------

  TermPtr parenthesized_term() {
    expect(Tok::LParen, "'('");
    TermPtr t = term();
    expect(Tok::RParen, "')'");
    return t;
  }

  SFormulaPtr atom() {
    if (at_ident("Fun")) { next(); return sf::fun(parenthesized_term()); }
    if (at_ident("ON") && peek(1).kind == Tok::LParen) { next(); return sf::on(parenthesized_term()); }
    if (at_ident("Nat") && peek(1).kind == Tok::LParen) { next(); return sf::nat(parenthesized_term()); }
    if (at_ident("dom")) {
      next();
      TermPtr f = parenthesized_term();
      expect(Tok::Equals, "'=' after dom(...)");
      return sf::domeq(std::move(f), term());
    }
    if (at_ident("ran")) {
      next();
      TermPtr f = parenthesized_term();
      expect_word("sub");
      return sf::ransub(std::move(f), term());
    }
    TermPtr lhs = term();
    const Token& op = peek();
    if (op.kind == Tok::Ident && op.text == "in") {
      next();
      if (at_ident("dom")) { next(); return sf::indom(std::move(lhs), parenthesized_term()); }
      if (at_ident("ran")) { next(); return sf::inran(std::move(lhs), parenthesized_term()); }
      if (at_ident("ON") && peek(1).kind != Tok::LParen) { next(); return sf::on(std::move(lhs)); }
      if (at_ident("Nat") && peek(1).kind != Tok::LParen) { next(); return sf::nat(std::move(lhs)); }
      return sf::mem(std::move(lhs), term());
    }
    if (op.kind == Tok::Equals) { next(); return sf::eq(std::move(lhs), term()); }
    if (op.kind == Tok::Ident && op.text == "sub") { next(); return sf::sub(std::move(lhs), term()); }
    fail("expected 'in', '=' or 'sub' after term", op);
  }

  // -- formulas --------------------------------------------------------

  SFormulaPtr quantified() {
    bool is_forall = at_ident("forall");
    next();
    Var v = variable();
    expect(Tok::Dot, "'.'");
    SFormulaPtr body = formula();
    return is_forall ? sf::forall(std::move(v), std::move(body))
                     : sf::exists(std::move(v), std::move(body));
  }

  SFormulaPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) { next(); return sf::lnot(unary()); }
    if (t.kind == Tok::LParen) {
      next();
      SFormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_ident("true")) { next(); return sf::top(); }
    if (at_ident("false")) { next(); return sf::bot(); }
    if (at_ident("forall") || at_ident("exists")) return quantified();
    return atom();
  }

  SFormulaPtr conj() {
    SFormulaPtr l = unary();
    if (peek().kind == Tok::AndOp) { next(); return sf::land(std::move(l), conj()); }
    return l;
  }

  SFormulaPtr disj() {
    SFormulaPtr l = conj();
    if (peek().kind == Tok::OrOp) { next(); return sf::lor(std::move(l), disj()); }
    return l;
  }

  SFormulaPtr impl() {
    SFormulaPtr l = disj();
    if (peek().kind == Tok::Arrow) { next(); return sf::implies(std::move(l), impl()); }
    return l;
  }

  SFormulaPtr formula() {
    if (at_ident("forall") || at_ident("exists")) return quantified();
    SFormulaPtr l = impl();
    if (peek().kind == Tok::IffOp) { next(); return sf::iff(std::move(l), formula_noquant()); }
    return l;
  }

  // Right operand of <->: allow a quantifier to start here too.
  SFormulaPtr formula_noquant() { return formula(); }

  SFormulaPtr run() {
    SFormulaPtr f = formula();
    if (peek().kind != Tok::End) fail("trailing input after formula", peek());
    return f;
  }
};

}  // namespace

SFormulaPtr parse(const std::string& text) {
  Lexer lex(text);
  Parser p{lex.run()};
  return p.run();
}

}  // namespace zfcat
