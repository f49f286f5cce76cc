#include "permlang/parser.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "permlang/syntax.hpp"

namespace permlang {

ParseError::ParseError(int line_, int col_, const std::string& message)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) +
                         ": " + message),
      line(line_),
      col(col_) {}

namespace {

enum class Tok {
  Ident,
  Nat,
  IntLit,
  BoolLit,
  UnitLit,
  PoisonLit,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Semi,
  SemiSemi,
  Colon,
  ColonEq,
  Arrow,
  LArrow,
  Bar,
  EqTok,
  Lt,
  Le,
  Plus,
  PlusColon,
  Minus,
  Star,
  Bang,
  Underscore,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  std::uint64_t nat = 0;
  std::int64_t int_val = 0;
  bool bool_val = false;
  int line = 1;
  int col = 1;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> kw = {
      "level", "permissions", "rec",  "fun",     "let",     "if",
      "then",  "else",        "in",   "burn",    "receive", "times",
      "atomic", "fork",       "ref",  "free",    "CAS",     "XCHG",
      "FAA",   "newproph",    "resolve", "at",   "to",      "match",
      "with",  "InjL",        "InjR", "end",     "Fst",     "Snd",
  };
  return kw;
}

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool digit(char c) { return c >= '0' && c <= '9'; }

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  char peek(std::size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void advance() {
    if (pos >= src.size()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (peek() != '\n' && peek() != '\0') advance();
        continue;
      }
      break;
    }
  }

  // Digits with overflow guard against the given cap.
  std::uint64_t lex_digits(std::uint64_t cap) {
    std::uint64_t v = 0;
    if (!digit(peek())) fail("expected digits");
    while (digit(peek())) {
      std::uint64_t d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (cap - d) / 10) fail("integer literal out of range");
      v = v * 10 + d;
      advance();
    }
    return v;
  }

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t;
      t.line = line;
      t.col = col;
      char c = peek();
      if (c == '\0') {
        t.kind = Tok::Eof;
        out.push_back(t);
        return out;
      }
      if (digit(c)) {
        t.kind = Tok::Nat;
        t.nat = lex_digits(UINT64_MAX);
        out.push_back(t);
        continue;
      }
      if (ident_start(c)) {
        std::string name;
        while (ident_char(peek())) {
          name.push_back(peek());
          advance();
        }
        if (name == "_") {
          t.kind = Tok::Underscore;
        } else {
          t.kind = Tok::Ident;
          t.text = std::move(name);
        }
        out.push_back(t);
        continue;
      }
      switch (c) {
        case '(':
          advance();
          t.kind = Tok::LParen;
          break;
        case ')':
          advance();
          t.kind = Tok::RParen;
          break;
        case '[':
          advance();
          t.kind = Tok::LBrack;
          break;
        case ']':
          advance();
          t.kind = Tok::RBrack;
          break;
        case ',':
          advance();
          t.kind = Tok::Comma;
          break;
        case ';':
          advance();
          if (peek() == ';') {
            advance();
            t.kind = Tok::SemiSemi;
          } else {
            t.kind = Tok::Semi;
          }
          break;
        case ':':
          advance();
          if (peek() == '=') {
            advance();
            t.kind = Tok::ColonEq;
          } else {
            t.kind = Tok::Colon;
          }
          break;
        case '=':
          advance();
          if (peek() == '>') {
            advance();
            t.kind = Tok::Arrow;
          } else {
            t.kind = Tok::EqTok;
          }
          break;
        case '<':
          advance();
          if (peek() == '-') {
            advance();
            t.kind = Tok::LArrow;
          } else if (peek() == '=') {
            advance();
            t.kind = Tok::Le;
          } else {
            t.kind = Tok::Lt;
          }
          break;
        case '+':
          advance();
          if (peek() == ':') {
            advance();
            t.kind = Tok::PlusColon;
          } else {
            t.kind = Tok::Plus;
          }
          break;
        case '-':
          advance();
          t.kind = Tok::Minus;
          break;
        case '*':
          advance();
          t.kind = Tok::Star;
          break;
        case '!':
          advance();
          t.kind = Tok::Bang;
          break;
        case '|':
          advance();
          t.kind = Tok::Bar;
          break;
        case '#': {
          advance();
          char c2 = peek();
          if (c2 == '(') {
            if (peek(1) != ')') fail("bad literal after '#'");
            advance();
            advance();
            t.kind = Tok::UnitLit;
          } else if (c2 == '-') {
            advance();
            std::uint64_t mag = lex_digits(1ull << 63);
            t.kind = Tok::IntLit;
            t.int_val = static_cast<std::int64_t>(0ull - mag);
          } else if (digit(c2)) {
            std::uint64_t v = lex_digits((1ull << 63) - 1);
            t.kind = Tok::IntLit;
            t.int_val = static_cast<std::int64_t>(v);
          } else if (ident_start(c2)) {
            std::string word;
            while (ident_char(peek())) {
              word.push_back(peek());
              advance();
            }
            if (word == "true") {
              t.kind = Tok::BoolLit;
              t.bool_val = true;
            } else if (word == "false") {
              t.kind = Tok::BoolLit;
              t.bool_val = false;
            } else if (word == "poison") {
              t.kind = Tok::PoisonLit;
            } else {
              throw ParseError(t.line, t.col, "bad literal '#" + word + "'");
            }
          } else {
            fail("bad literal after '#'");
          }
          break;
        }
        default:
          fail(std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t idx = 0;
  std::map<std::string, Level> level_env;

  const Token& cur() const { return toks[idx]; }

  const Token& at(std::size_t off) const {
    std::size_t i = idx + off;
    return toks[i < toks.size() ? i : toks.size() - 1];
  }

  void bump() {
    if (idx + 1 < toks.size()) ++idx;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  bool is_kw(const Token& t, const char* kw) const {
    return t.kind == Tok::Ident && t.text == kw;
  }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) fail(cur(), std::string("expected ") + what);
    bump();
  }

  void expect_kw(const char* kw) {
    if (!is_kw(cur(), kw))
      fail(cur(), std::string("expected '") + kw + "'");
    bump();
  }

  std::string parse_binder() {
    if (cur().kind == Tok::Underscore) {
      bump();
      return "";
    }
    if (cur().kind != Tok::Ident) fail(cur(), "expected a binder");
    if (reserved_words().count(cur().text))
      fail(cur(), "keyword '" + cur().text + "' cannot be a binder");
    std::string name = cur().text;
    bump();
    return name;
  }

  std::string parse_plain_ident(const char* what) {
    if (cur().kind != Tok::Ident)
      fail(cur(), std::string("expected ") + what);
    if (reserved_words().count(cur().text))
      fail(cur(), "keyword '" + cur().text + "' cannot be " + what);
    std::string name = cur().text;
    bump();
    return name;
  }

  Level parse_level_name() {
    if (cur().kind != Tok::Ident) fail(cur(), "expected a level name");
    auto it = level_env.find(cur().text);
    if (it == level_env.end())
      fail(cur(), "undeclared level name '" + cur().text + "'");
    bump();
    return it->second;
  }

  // The level to mint at when the receive clause is omitted: the lowest
  // declared level strictly below cp, or level zero. A burn at level zero
  // has no valid target, so it must spell its clause out.
  Level omitted_receive_level(Level cp, const Token& where) {
    std::optional<Level> best;
    for (const auto& [name, lvl] : level_env) {
      (void)name;
      if (lvl < cp && (!best || lvl < *best)) best = lvl;
    }
    if (best) return *best;
    if (cp.value > 0) return Level{0};
    fail(where, "a burn at level 0 cannot omit its receive clause");
  }

  bool starts_operand(const Token& t) const {
    switch (t.kind) {
      case Tok::IntLit:
      case Tok::BoolLit:
      case Tok::UnitLit:
      case Tok::PoisonLit:
      case Tok::LParen:
      case Tok::Bang:
        return true;
      case Tok::Ident: {
        if (!reserved_words().count(t.text)) return true;
        static const std::set<std::string> operand_kw = {
            "Fst",  "Snd", "InjL",     "InjR",   "ref",  "free",
            "CAS",  "XCHG", "FAA",     "newproph", "atomic", "fork",
        };
        return operand_kw.count(t.text) > 0;
      }
      default:
        return false;
    }
  }

  ExprPtr parse_seq() {
    ExprPtr l = parse_stmt();
    if (cur().kind == Tok::SemiSemi) {
      bump();
      return ex::seq(std::move(l), parse_seq());
    }
    return l;
  }

  ExprPtr parse_stmt() {
    const Token& t = cur();
    if (t.kind == Tok::Ident) {
      if (t.text == "rec" && at(1).kind == Tok::Colon) {
        bump();
        bump();
        std::string self = parse_binder();
        std::string arg = parse_binder();
        expect(Tok::ColonEq, "':='");
        return ex::rec(std::move(self), std::move(arg), parse_seq());
      }
      if (t.text == "fun" && at(1).kind == Tok::Colon) {
        bump();
        bump();
        std::string arg = parse_binder();
        expect(Tok::ColonEq, "':='");
        return ex::fun(std::move(arg), parse_seq());
      }
      if (t.text == "let" && at(1).kind == Tok::Colon) {
        bump();
        bump();
        std::string binder = parse_binder();
        expect(Tok::ColonEq, "':='");
        ExprPtr bound = parse_seq();
        expect_kw("in");
        return ex::let_(std::move(binder), std::move(bound), parse_seq());
      }
      if (t.text == "if" && at(1).kind == Tok::Colon) {
        bump();
        bump();
        ExprPtr cond = parse_stmt();
        expect_kw("then");
        ExprPtr then_e = parse_stmt();
        expect_kw("else");
        return ex::if_(std::move(cond), std::move(then_e), parse_stmt());
      }
      if (t.text == "match" && at(1).kind == Tok::Colon) {
        bump();
        bump();
        ExprPtr scrut = parse_stmt();
        expect_kw("with");
        expect_kw("InjL");
        std::string lbind = parse_binder();
        expect(Tok::Arrow, "'=>'");
        ExprPtr lbody = parse_seq();
        expect(Tok::Bar, "'|'");
        expect_kw("InjR");
        std::string rbind = parse_binder();
        expect(Tok::Arrow, "'=>'");
        ExprPtr rbody = parse_seq();
        expect_kw("end");
        return ex::match_(std::move(scrut), std::move(lbind), std::move(lbody),
                          std::move(rbind), std::move(rbody));
      }
      if (t.text == "burn") {
        Token where = t;
        bump();
        Level cp = parse_level_name();
        ExprPtr count;
        Level to;
        if (is_kw(cur(), "receive")) {
          bump();
          count = parse_cmp();
          expect_kw("times");
          to = parse_level_name();
        } else {
          count = ex::int_(0);
          to = omitted_receive_level(cp, where);
        }
        expect_kw("in");
        return ex::burn(parse_seq(), cp, std::move(count), to);
      }
      if (t.text == "resolve") {
        bump();
        ExprPtr inner = parse_cmp();
        expect_kw("at");
        ExprPtr target = parse_cmp();
        expect_kw("to");
        return ex::resolve(std::move(inner), std::move(target), parse_cmp());
      }
    }
    ExprPtr l = parse_cmp();
    if (cur().kind == Tok::LArrow) {
      bump();
      return ex::store(std::move(l), parse_cmp());
    }
    return l;
  }

  ExprPtr parse_cmp() {
    ExprPtr l = parse_add();
    Tok k = cur().kind;
    if (k == Tok::EqTok || k == Tok::Lt || k == Tok::Le) {
      bump();
      BinOp op = k == Tok::EqTok ? BinOp::Eq
                 : k == Tok::Lt  ? BinOp::Lt
                                 : BinOp::Le;
      return ex::binop(op, std::move(l), parse_add());
    }
    return l;
  }

  ExprPtr parse_add() {
    ExprPtr l = parse_mul();
    for (;;) {
      Tok k = cur().kind;
      BinOp op;
      if (k == Tok::Plus)
        op = BinOp::Plus;
      else if (k == Tok::Minus)
        op = BinOp::Minus;
      else if (k == Tok::PlusColon)
        op = BinOp::Offset;
      else
        break;
      bump();
      l = ex::binop(op, std::move(l), parse_mul());
    }
    return l;
  }

  ExprPtr parse_mul() {
    ExprPtr l = parse_app();
    while (cur().kind == Tok::Star) {
      bump();
      l = ex::binop(BinOp::Mult, std::move(l), parse_app());
    }
    return l;
  }

  ExprPtr parse_app() {
    ExprPtr l = parse_prefix();
    while (starts_operand(cur())) l = ex::app(std::move(l), parse_prefix());
    return l;
  }

  ExprPtr parse_prefix() {
    const Token& t = cur();
    if (t.kind == Tok::Bang) {
      bump();
      return ex::load(parse_prefix());
    }
    if (t.kind == Tok::Minus) {
      bump();
      return ex::neg(parse_prefix());
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "Fst") {
        bump();
        return ex::fst(parse_prefix());
      }
      if (t.text == "Snd") {
        bump();
        return ex::snd(parse_prefix());
      }
      if (t.text == "InjL") {
        bump();
        return ex::injl(parse_prefix());
      }
      if (t.text == "InjR") {
        bump();
        return ex::injr(parse_prefix());
      }
    }
    return parse_atom();
  }

  ExprPtr parse_atom() {
    Token t = cur();
    switch (t.kind) {
      case Tok::IntLit:
        bump();
        return ex::int_(t.int_val);
      case Tok::BoolLit:
        bump();
        return ex::bool_(t.bool_val);
      case Tok::UnitLit:
        bump();
        return ex::unit();
      case Tok::PoisonLit:
        bump();
        return ex::poison();
      case Tok::LParen: {
        bump();
        ExprPtr e = parse_seq();
        if (cur().kind == Tok::Comma) {
          bump();
          ExprPtr second = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::pair(std::move(e), std::move(second));
        }
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Underscore:
        fail(t, "'_' cannot be used as an expression");
      case Tok::Ident: {
        if (t.text == "ref") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr count = parse_seq();
          expect(Tok::Comma, "','");
          ExprPtr init = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::alloc(std::move(count), std::move(init));
        }
        if (t.text == "free") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::free_(std::move(e));
        }
        if (t.text == "CAS") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr dst = parse_seq();
          expect(Tok::Comma, "','");
          ExprPtr expected = parse_seq();
          expect(Tok::Comma, "','");
          ExprPtr desired = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::cmpxchg(std::move(dst), std::move(expected),
                             std::move(desired));
        }
        if (t.text == "XCHG") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr dst = parse_seq();
          expect(Tok::Comma, "','");
          ExprPtr src = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::xchg(std::move(dst), std::move(src));
        }
        if (t.text == "FAA") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr dst = parse_seq();
          expect(Tok::Comma, "','");
          ExprPtr delta = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::faa(std::move(dst), std::move(delta));
        }
        if (t.text == "newproph") {
          bump();
          return ex::newproph();
        }
        if (t.text == "atomic") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::atomic(std::move(e));
        }
        if (t.text == "fork") {
          bump();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_seq();
          expect(Tok::RParen, "')'");
          return ex::fork(std::move(e));
        }
        if (reserved_words().count(t.text))
          fail(t, "unexpected keyword '" + t.text + "'");
        bump();
        return ex::var(t.text);
      }
      default:
        fail(t, "expected an expression");
    }
  }
};

}  // namespace

Program parse_program(const std::string& source) {
  Lexer lex{source};
  Parser p{lex.tokenize()};
  Program prog;
  while (p.is_kw(p.cur(), "level")) {
    p.bump();
    Token name_tok = p.cur();
    std::string name = p.parse_plain_ident("a level name");
    if (p.level_env.count(name))
      p.fail(name_tok, "duplicate level declaration '" + name + "'");
    p.expect(Tok::EqTok, "'='");
    if (p.cur().kind != Tok::Nat) p.fail(p.cur(), "expected a natural number");
    Level lvl{p.cur().nat};
    p.bump();
    p.expect(Tok::Semi, "';'");
    p.level_env[name] = lvl;
    prog.levels.push_back(LevelDecl{std::move(name), lvl});
  }
  if (p.is_kw(p.cur(), "permissions")) {
    p.bump();
    p.expect(Tok::LBrack, "'['");
    for (;;) {
      Token name_tok = p.cur();
      std::string name = p.parse_plain_ident("a level name");
      if (!p.level_env.count(name))
        p.fail(name_tok, "undeclared level name '" + name + "'");
      prog.permissions.push_back(std::move(name));
      if (p.cur().kind != Tok::Comma) break;
      p.bump();
    }
    p.expect(Tok::RBrack, "']'");
    p.expect(Tok::Semi, "';'");
  }
  Token main_start = p.cur();
  prog.main = p.parse_seq();
  if (p.cur().kind != Tok::Eof) p.fail(p.cur(), "unexpected trailing input");
  std::set<std::string> fv = free_vars(prog.main);
  if (!fv.empty())
    p.fail(main_start,
           "main expression is not closed: free variable '" + *fv.begin() +
               "'");
  return prog;
}

ExprPtr parse_expr(const std::string& source,
                   const std::vector<LevelDecl>& levels) {
  Lexer lex{source};
  Parser p{lex.tokenize()};
  for (const LevelDecl& d : levels) p.level_env[d.name] = d.level;
  ExprPtr e = p.parse_seq();
  if (p.cur().kind != Tok::Eof) p.fail(p.cur(), "unexpected trailing input");
  return e;
}

}  // namespace permlang
