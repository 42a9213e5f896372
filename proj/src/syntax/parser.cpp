// Recursive-descent parser for the surface syntax.
//
//   type  ::= prod ('->' type)?
//   prod  ::= mon (('*' | '×') mon)*
//   mon   ::= ('S' | 'T') mon | '1' | ident | '(' type ')'
//
//   term  ::= ('\' | 'λ') binder ':' type '.' term
//           | ('do_S' | 'do_T') binder '<-' term ';' term
//           | app
//   app   ::= head arg* (term)?            -- trailing lambda/do allowed
//   head  ::= prefix | atom
//   prefix::= ('fst' | 'snd' | 'ret_S' | 'ret_T' | 'iota') (prefix | atom)
//   atom  ::= ident | '*' | '<' term ',' term '>' | '(' term ')'

#include <cctype>

#include "csc/syntax.hpp"

namespace csc {
namespace {

enum class Tok { Ident, Star, Backslash, Dot, Colon, LParen, RParen, LAngle, RAngle, Comma, LArrow,
                 Semi, Arrow, Times, One, LBracket, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (src.substr(i, 2) == "λ") {  // two UTF-8 bytes
      out.push_back({Tok::Backslash, "\\", line, col});
      i += 2;
      ++col;
      continue;
    }
    if (src.substr(i, 2) == "×") {
      out.push_back({Tok::Times, "*", line, col});
      i += 2;
      ++col;
      continue;
    }
    if (src.substr(i, 2) == "<-") { push(Tok::LArrow, 2); continue; }
    if (src.substr(i, 2) == "->") { push(Tok::Arrow, 2); continue; }
    switch (c) {
      case '*': push(Tok::Star, 1); continue;
      case '\\': push(Tok::Backslash, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '<': push(Tok::LAngle, 1); continue;
      case '>': push(Tok::RAngle, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case '1': push(Tok::One, 1); continue;
      default: break;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    throw ParseError(line, col, {}, "character '" + std::string(1, static_cast<char>(c)) + "'");
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "do_S" || s == "do_T" || s == "ret_S" || s == "ret_T" || s == "iota" || s == "fst" ||
         s == "snd";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Type type() {
    Type lhs = prod();
    if (accept(Tok::Arrow)) return Type::arrow(lhs, type());
    return lhs;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Backslash) {
      next();
      std::string name = binder();
      expect(Tok::Colon, "':'");
      Type a = type();
      expect(Tok::Dot, "'.'");
      scope_.push_back(name);
      Term body = term();
      scope_.pop_back();
      return Term::lam(a, body, name);
    }
    if (t.kind == Tok::Ident && (t.text == "do_S" || t.text == "do_T")) {
      Flavour f = t.text == "do_S" ? Flavour::S : Flavour::T;
      next();
      std::string name = binder();
      expect(Tok::LArrow, "'<-'");
      Term bound = term();
      expect(Tok::Semi, "';'");
      scope_.push_back(name);
      Term body = term();
      scope_.pop_back();
      return Term::do_(f, bound, body, name);
    }
    return app();
  }

  Context context() {
    Context ctx;
    bool bracket = accept(Tok::LBracket);
    if (!(bracket && peek().kind == Tok::RBracket) && peek().kind != Tok::End) {
      do {
        const Token& id = expect(Tok::Ident, "identifier");
        expect(Tok::Colon, "':'");
        try {
          ctx.push(id.text, type());
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(id.line, id.col, {}, std::string("duplicate binding (") + e.what() + ")");
        }
      } while (accept(Tok::Comma));
    }
    if (bracket) expect(Tok::RBracket, "']'");
    return ctx;
  }

  void finish() {
    if (peek().kind != Tok::End) fail({"<end of input>"});
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail({what});
    return next();
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, std::move(expected), "'" + t.text + "'");
  }

  std::string binder() {
    if (accept(Tok::Star)) return "_";
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) fail({"binder name", "'*'", "'_'"});
    next();
    return t.text;
  }

  Type prod() {
    Type lhs = mon();
    while (peek().kind == Tok::Times || peek().kind == Tok::Star) {
      next();
      lhs = Type::prod(lhs, mon());
    }
    return lhs;
  }

  Type mon() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "S" || t.text == "T")) {
      next();
      return Type::monad(t.text == "S" ? Flavour::S : Flavour::T, mon());
    }
    if (t.kind == Tok::One) {
      next();
      return Type::unit();
    }
    if (t.kind == Tok::Ident) {
      next();
      return Type::ground(t.text);
    }
    if (accept(Tok::LParen)) {
      Type inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail({"'1'", "ground type", "'S'", "'T'", "'('"});
  }

  bool starts_atom() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Star:
      case Tok::LAngle:
      case Tok::LParen:
        return true;
      case Tok::Ident:
        return !(t.text == "do_S" || t.text == "do_T");
      default:
        return false;
    }
  }

  bool starts_trailing() const {
    const Token& t = peek();
    return t.kind == Tok::Backslash ||
           (t.kind == Tok::Ident && (t.text == "do_S" || t.text == "do_T"));
  }

  Term app() {
    Term f = head();
    while (true) {
      if (starts_atom()) {
        f = Term::app(f, head_arg());
      } else if (starts_trailing()) {
        return Term::app(f, term());
      } else {
        return f;
      }
    }
  }

  // An application argument: atoms only, so `f fst p` is rejected in favour of `f (fst p)`.
  Term head_arg() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && is_keyword(t.text)) fail({"atom (parenthesize prefix forms)"});
    return atom();
  }

  Term head() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && is_keyword(t.text) && t.text != "do_S" && t.text != "do_T")
      return prefix();
    if (!starts_atom()) {
      if (starts_trailing()) return term();
      fail({"term"});
    }
    return atom();
  }

  Term prefix() {
    const Token& t = next();
    Term arg = [&] {
      const Token& n = peek();
      if (n.kind == Tok::Ident && is_keyword(n.text) && n.text != "do_S" && n.text != "do_T")
        return prefix();
      if (!starts_atom()) fail({"argument of " + t.text});
      return atom();
    }();
    if (t.text == "fst") return Term::proj(1, arg);
    if (t.text == "snd") return Term::proj(2, arg);
    if (t.text == "ret_S") return Term::ret(Flavour::S, arg);
    if (t.text == "ret_T") return Term::ret(Flavour::T, arg);
    return Term::iota(arg);
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::Star) {
      next();
      return Term::star();
    }
    if (t.kind == Tok::LAngle) {
      next();
      Term a = term();
      expect(Tok::Comma, "','");
      Term b = term();
      expect(Tok::RAngle, "'>'");
      return Term::pair(a, b);
    }
    if (t.kind == Tok::LParen) {
      next();
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      next();
      for (std::size_t i = scope_.size(); i-- > 0;)
        if (scope_[i] == t.text) return Term::var(scope_.size() - 1 - i);
      return Term::free(t.text);
    }
    fail({"identifier", "'*'", "'<'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Type parse_type(std::string_view src) {
  Parser p(src);
  Type t = p.type();
  p.finish();
  return t;
}

Term parse_term(std::string_view src) {
  Parser p(src);
  Term t = p.term();
  p.finish();
  return t;
}

Context parse_context(std::string_view src) {
  Parser p(src);
  Context c = p.context();
  p.finish();
  return c;
}

}  // namespace csc
