#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "error.hpp"

namespace tyro {

namespace {

enum class Tok {
  Let,
  In,
  Fun,
  If,
  Then,
  Else,
  Arrow,
  Equals,
  LParen,
  RParen,
  SemiSemi,
  Int,
  Float,
  String,
  True,
  False,
  Ident,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  SourceRange range;
};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_cont(char c) {
  return std::isalnum((unsigned char)c) || c == '_';
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      SourcePos start = pos_;
      if (at_end()) {
        out.push_back({Tok::Eof, "", {start, start}});
        return out;
      }
      char c = peek();
      if (ident_start(c)) {
        std::string s;
        while (!at_end() && ident_cont(peek())) s += take();
        Tok k = Tok::Ident;
        if (s == "let") k = Tok::Let;
        else if (s == "in") k = Tok::In;
        else if (s == "fun") k = Tok::Fun;
        else if (s == "if") k = Tok::If;
        else if (s == "then") k = Tok::Then;
        else if (s == "else") k = Tok::Else;
        else if (s == "true") k = Tok::True;
        else if (s == "false") k = Tok::False;
        out.push_back({k, s, {start, pos_}});
      } else if (std::isdigit((unsigned char)c)) {
        std::string s;
        while (!at_end() && std::isdigit((unsigned char)peek())) s += take();
        Tok k = Tok::Int;
        if (!at_end() && peek() == '.') {
          s += take();
          k = Tok::Float;
          while (!at_end() && std::isdigit((unsigned char)peek())) s += take();
        }
        out.push_back({k, s, {start, pos_}});
      } else if (c == '"') {
        take();
        std::string s;
        for (;;) {
          if (at_end() || peek() == '\n')
            fail(TYRO_ERR_SYNTAX, "unterminated string literal",
                 SourceRange{start, pos_});
          char d = take();
          if (d == '"') break;
          if (d == '\\') {
            if (at_end())
              fail(TYRO_ERR_SYNTAX, "unterminated string literal",
                   SourceRange{start, pos_});
            char e = take();
            switch (e) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '\\': s += '\\'; break;
            case '"': s += '"'; break;
            default:
              fail(TYRO_ERR_SYNTAX, "unknown escape sequence",
                   SourceRange{start, pos_});
            }
          } else {
            s += d;
          }
        }
        out.push_back({Tok::String, s, {start, pos_}});
      } else if (c == '-' && peek2() == '>') {
        take();
        take();
        out.push_back({Tok::Arrow, "->", {start, pos_}});
      } else if (c == '=') {
        take();
        out.push_back({Tok::Equals, "=", {start, pos_}});
      } else if (c == '(') {
        take();
        out.push_back({Tok::LParen, "(", {start, pos_}});
      } else if (c == ')') {
        take();
        out.push_back({Tok::RParen, ")", {start, pos_}});
      } else if (c == ';' && peek2() == ';') {
        take();
        take();
        out.push_back({Tok::SemiSemi, ";;", {start, pos_}});
      } else {
        fail(TYRO_ERR_SYNTAX,
             std::string("unexpected character '") + c + "'",
             SourceRange{start, {start.line, start.col + 1}});
      }
    }
  }

private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek() const { return src_[i_]; }
  char peek2() const { return i_ + 1 < src_.size() ? src_[i_ + 1] : '\0'; }
  char take() {
    char c = src_[i_++];
    if (c == '\n') {
      pos_.line++;
      pos_.col = 0;
    } else {
      pos_.col++;
    }
    return c;
  }
  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '(' && peek2() == '*') {
        SourcePos start = pos_;
        take();
        take();
        int depth = 1;
        while (depth > 0) {
          if (at_end())
            fail(TYRO_ERR_SYNTAX, "unterminated comment",
                 SourceRange{start, pos_});
          if (peek() == '(' && peek2() == '*') {
            take();
            take();
            depth++;
          } else if (peek() == '*' && peek2() == ')') {
            take();
            take();
            depth--;
          } else {
            take();
          }
        }
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    Program p;
    while (cur().kind != Tok::Eof) {
      p.items.push_back(item());
      if (cur().kind == Tok::SemiSemi) advance();
    }
    return p;
  }

private:
  const Token &cur() const { return toks_[i_]; }
  const Token &peek(size_t k) const {
    size_t j = i_ + k;
    return toks_[j < toks_.size() ? j : toks_.size() - 1];
  }
  void advance() { i_++; }

  [[noreturn]] void err(const std::string &msg) const {
    fail(TYRO_ERR_SYNTAX,
         msg + " at " + std::to_string(cur().range.start.line) + ";" +
             std::to_string(cur().range.start.col),
         cur().range);
  }

  Token expect(Tok k, const char *what) {
    if (cur().kind != k) err(std::string("expected ") + what);
    Token t = cur();
    advance();
    return t;
  }

  TopItem item() {
    TopItem it;
    if (cur().kind == Tok::Let) {
      // Either a top-level binding or a let-expression; decided by the
      // presence of `in` after the bound expression.
      Token let_tok = cur();
      advance();
      Token name = expect(Tok::Ident, "identifier");
      expect(Tok::Equals, "'='");
      ExprPtr bound = expr();
      if (cur().kind == Tok::In) {
        advance();
        ExprPtr body = expr();
        auto e = std::make_unique<Expr>(
            ExprKind::Let, SourceRange{let_tok.range.start, body->range.end});
        e->text = name.text;
        e->children.push_back(std::move(bound));
        e->children.push_back(std::move(body));
        it.range = e->range;
        it.expr = std::move(e);
      } else {
        it.is_binding = true;
        it.name = name.text;
        it.range = {let_tok.range.start, bound->range.end};
        it.expr = std::move(bound);
      }
    } else {
      it.expr = expr();
      it.range = it.expr->range;
    }
    return it;
  }

  ExprPtr expr() {
    switch (cur().kind) {
    case Tok::Fun: {
      Token t = cur();
      advance();
      Token param = expect(Tok::Ident, "identifier");
      expect(Tok::Arrow, "'->'");
      ExprPtr body = expr();
      auto e = std::make_unique<Expr>(ExprKind::Abs,
                                      SourceRange{t.range.start, body->range.end});
      e->text = param.text;
      e->children.push_back(std::move(body));
      return e;
    }
    case Tok::If: {
      Token t = cur();
      advance();
      ExprPtr c = expr();
      expect(Tok::Then, "'then'");
      ExprPtr th = expr();
      expect(Tok::Else, "'else'");
      ExprPtr el = expr();
      auto e = std::make_unique<Expr>(ExprKind::Cond,
                                      SourceRange{t.range.start, el->range.end});
      e->children.push_back(std::move(c));
      e->children.push_back(std::move(th));
      e->children.push_back(std::move(el));
      return e;
    }
    case Tok::Let: {
      Token t = cur();
      advance();
      Token name = expect(Tok::Ident, "identifier");
      expect(Tok::Equals, "'='");
      ExprPtr bound = expr();
      expect(Tok::In, "'in'");
      ExprPtr body = expr();
      auto e = std::make_unique<Expr>(ExprKind::Let,
                                      SourceRange{t.range.start, body->range.end});
      e->text = name.text;
      e->children.push_back(std::move(bound));
      e->children.push_back(std::move(body));
      return e;
    }
    default:
      return app();
    }
  }

  bool atom_start() const {
    switch (cur().kind) {
    case Tok::Int:
    case Tok::Float:
    case Tok::String:
    case Tok::True:
    case Tok::False:
    case Tok::Ident:
    case Tok::LParen:
      return true;
    default:
      return false;
    }
  }

  ExprPtr app() {
    ExprPtr e = atom();
    while (atom_start()) {
      ExprPtr arg = atom();
      auto a = std::make_unique<Expr>(
          ExprKind::App, SourceRange{e->range.start, arg->range.end});
      a->children.push_back(std::move(e));
      a->children.push_back(std::move(arg));
      e = std::move(a);
    }
    return e;
  }

  ExprPtr atom() {
    Token t = cur();
    switch (t.kind) {
    case Tok::Int: {
      advance();
      auto e = std::make_unique<Expr>(ExprKind::IntLit, t.range);
      e->text = t.text;
      return e;
    }
    case Tok::Float: {
      advance();
      auto e = std::make_unique<Expr>(ExprKind::FloatLit, t.range);
      e->text = t.text;
      return e;
    }
    case Tok::String: {
      advance();
      auto e = std::make_unique<Expr>(ExprKind::StringLit, t.range);
      e->text = t.text;
      return e;
    }
    case Tok::True:
    case Tok::False: {
      advance();
      auto e = std::make_unique<Expr>(ExprKind::BoolLit, t.range);
      e->text = t.text;
      e->bool_value = t.kind == Tok::True;
      return e;
    }
    case Tok::Ident: {
      advance();
      auto e = std::make_unique<Expr>(ExprKind::Var, t.range);
      e->text = t.text;
      return e;
    }
    case Tok::LParen: {
      advance();
      ExprPtr e = expr();
      Token close = expect(Tok::RParen, "')'");
      // The parentheses belong to the enclosed expression's extent.
      e->range = {t.range.start, close.range.end};
      return e;
    }
    default:
      err("expected expression");
    }
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

void assign(Expr &e, int &counter) {
  if (e.kind == ExprKind::Let) {
    e.index = counter++;
    for (auto &c : e.children) assign(*c, counter);
  } else {
    for (auto &c : e.children) assign(*c, counter);
    e.index = counter++;
  }
}

void collect(const Expr &e, std::vector<std::pair<int, SourceRange>> &out) {
  out.emplace_back(e.index, e.range);
  for (const auto &c : e.children) collect(*c, out);
}

} // namespace

Program parse(std::string_view source) {
  Lexer lx(source);
  Parser ps(lx.run());
  return ps.run();
}

void assign_indices(Program &p) {
  int counter = 0;
  for (auto &it : p.items) {
    if (it.is_binding) it.index = counter++;
    assign(*it.expr, counter);
    if (!it.is_binding) it.index = it.expr->index;
  }
}

std::vector<std::pair<int, SourceRange>> node_ranges(const Program &p) {
  std::vector<std::pair<int, SourceRange>> out;
  for (const auto &it : p.items) {
    if (it.is_binding) out.emplace_back(it.index, it.range);
    collect(*it.expr, out);
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

} // namespace tyro
