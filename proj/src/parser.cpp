#include <string>
#include <vector>

#include "evlogic/errors.hpp"
#include "evlogic/formula.hpp"

namespace evlogic {

namespace {

enum class Tok { ident, bang, box, dotbox, arrow, iff, bar, amp, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::bang: return "'!'";
    case Tok::box: return "'[]'";
    case Tok::dotbox: return "'[.]'";
    case Tok::arrow: return "'->'";
    case Tok::iff: return "'<->'";
    case Tok::bar: return "'|'";
    case Tok::amp: return "'&'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::end, {}, line, col};
    std::size_t len = 1;
    if (starts("<->")) {
      t.kind = Tok::iff;
      len = 3;
    } else if (starts("->")) {
      t.kind = Tok::arrow;
      len = 2;
    } else if (starts("[.]")) {
      t.kind = Tok::dotbox;
      len = 3;
    } else if (starts("[]")) {
      t.kind = Tok::box;
      len = 2;
    } else if (c == '!') {
      t.kind = Tok::bang;
    } else if (c == '|') {
      t.kind = Tok::bar;
    } else if (c == '&') {
      t.kind = Tok::amp;
    } else if (c == '(') {
      t.kind = Tok::lparen;
    } else if (c == ')') {
      t.kind = Tok::rparen;
    } else if (is_identifier(std::string_view(&c, 1))) {
      std::size_t j = i;
      auto word = [](char ch) {
        return ch == '_' || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9');
      };
      while (j < text.size() && word(text[j])) ++j;
      t.kind = Tok::ident;
      len = j - i;
      t.text = std::string(text.substr(i, len));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
    advance(len);
  }
  out.push_back(Token{Tok::end, {}, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() {
    if (peek().kind == Tok::end) throw ParseError("empty input", peek().line, peek().column);
    Formula f = iff();
    if (peek().kind != Tok::end) {
      if (peek().kind == Tok::rparen)
        fail("unbalanced ')'");
      fail(std::string("expected end of input, found ") + describe(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, peek().line, peek().column);
  }

  Formula iff() {
    Formula a = impl();
    if (accept(Tok::iff)) return Formula::iff(std::move(a), impl());
    return a;
  }

  Formula impl() {
    Formula a = disj();
    if (accept(Tok::arrow)) return Formula::implies(std::move(a), impl());
    return a;
  }

  Formula disj() {
    Formula a = conj();
    while (accept(Tok::bar)) a = Formula::disj(std::move(a), conj());
    return a;
  }

  Formula conj() {
    Formula a = unary();
    while (accept(Tok::amp)) a = Formula::conj(std::move(a), unary());
    return a;
  }

  Formula unary() {
    if (accept(Tok::bang)) return Formula::negation(unary());
    if (accept(Tok::box)) return Formula::know(unary());
    if (accept(Tok::dotbox)) return Formula::attain(unary());
    return atom();
  }

  Formula atom() {
    if (peek().kind == Tok::ident) return Formula::atom(take().text);
    if (peek().kind == Tok::lparen) {
      Token open = take();
      Formula f = iff();
      if (!accept(Tok::rparen)) {
        if (peek().kind == Tok::end)
          throw ParseError("unbalanced '(' opened here", open.line, open.column);
        fail(std::string("expected ')', found ") + describe(peek().kind));
      }
      return f;
    }
    fail(std::string("expected identifier, '(' or unary operator, found ") + describe(peek().kind));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).formula(); }

}  // namespace evlogic
