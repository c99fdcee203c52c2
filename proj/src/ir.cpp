#include "ir.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace tyro {

namespace {

enum class IrTok {
  Number,
  Ident,
  TickVar,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Equals,
  Arrow,
  Semi,
  Dash,
  Comma,
  Separator, // ---
  End,
};

struct IrToken {
  IrTok kind;
  std::string text;
  long value = 0;
};

std::vector<IrToken> lex(const std::string &text) {
  std::vector<IrToken> out;
  size_t i = 0;
  auto peek = [&](size_t k) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace((unsigned char)c)) {
      i++;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') i++;
    } else if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) j++;
      std::string s = text.substr(i, j - i);
      out.push_back({IrTok::Number, s, std::stol(s)});
      i = j;
    } else if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
        j++;
      out.push_back({IrTok::Ident, text.substr(i, j - i)});
      i = j;
    } else if (c == '\'') {
      size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
        j++;
      if (j == i + 1)
        fail(TYRO_ERR_IR_SYNTAX, "expected variable name after tick");
      out.push_back({IrTok::TickVar, text.substr(i + 1, j - i - 1)});
      i = j;
    } else if (c == '-' && peek(1) == '>') {
      out.push_back({IrTok::Arrow, "->"});
      i += 2;
    } else if (c == '-' && peek(1) == '-' && peek(2) == '-') {
      out.push_back({IrTok::Separator, "---"});
      i += 3;
    } else if (c == '-') {
      out.push_back({IrTok::Dash, "-"});
      i++;
    } else {
      IrTok k;
      switch (c) {
      case '(': k = IrTok::LParen; break;
      case ')': k = IrTok::RParen; break;
      case '{': k = IrTok::LBrace; break;
      case '}': k = IrTok::RBrace; break;
      case '=': k = IrTok::Equals; break;
      case ';': k = IrTok::Semi; break;
      case ',': k = IrTok::Comma; break;
      default:
        fail(TYRO_ERR_IR_SYNTAX,
             std::string("unexpected character '") + c + "' in IR");
      }
      out.push_back({k, std::string(1, c)});
      i++;
    }
  }
  out.push_back({IrTok::End, ""});
  return out;
}

class IrParser {
public:
  explicit IrParser(std::vector<IrToken> toks) : toks_(std::move(toks)) {}

  IrDoc run() {
    IrDoc doc;
    locations(doc);
    expect(IrTok::Separator, "'---'");
    while (at(IrTok::Number)) doc.schemes.push_back(scheme());
    expect(IrTok::Separator, "'---'");
    while (at(IrTok::Number)) doc.constraints.push_back(constraint());
    expect(IrTok::End, "end of document");
    validate(doc);
    return doc;
  }

private:
  const IrToken &cur() const { return toks_[i_]; }
  const IrToken &peek(size_t k) const {
    size_t j = i_ + k;
    return toks_[j < toks_.size() ? j : toks_.size() - 1];
  }
  bool at(IrTok k) const { return cur().kind == k; }
  void advance() { i_++; }

  [[noreturn]] void err(const std::string &what) const {
    fail(TYRO_ERR_IR_SYNTAX, "IR: expected " + what + ", found '" +
                                 (cur().kind == IrTok::End ? "<end>" : cur().text) +
                                 "'");
  }

  IrToken expect(IrTok k, const char *what) {
    if (!at(k)) err(what);
    IrToken t = cur();
    advance();
    return t;
  }

  int number(const char *what) {
    return (int)expect(IrTok::Number, what).value;
  }

  void locations(IrDoc &doc) {
    while (at(IrTok::Number)) {
      LocEntry e;
      e.index = number("location index");
      e.range.start.line = number("line");
      expect(IrTok::Semi, "';'");
      e.range.start.col = number("column");
      expect(IrTok::Dash, "'-'");
      e.range.end.line = number("line");
      expect(IrTok::Semi, "';'");
      e.range.end.col = number("column");
      // An optional weight follows. Distinguish "weight" from "index of
      // the next entry" by where the next ';' falls.
      if (at(IrTok::Number)) {
        bool is_weight;
        if (peek(1).kind == IrTok::Separator || peek(1).kind == IrTok::End) {
          is_weight = true;
        } else if (peek(1).kind == IrTok::Number &&
                   peek(2).kind == IrTok::Semi) {
          is_weight = false; // next entry: index line ';' ...
        } else if (peek(1).kind == IrTok::Number &&
                   peek(2).kind == IrTok::Number &&
                   peek(3).kind == IrTok::Semi) {
          is_weight = true; // weight, then: index line ';' ...
        } else {
          err("location entry");
        }
        if (is_weight) e.weight = number("weight");
      }
      doc.locations.push_back(std::move(e));
    }
  }

  TypeScheme scheme() {
    TypeScheme s;
    s.def_loc = number("scheme location index");
    s.name = expect(IrTok::Ident, "scheme name").text;
    expect(IrTok::LParen, "'('");
    while (!at(IrTok::RParen)) {
      s.quantified.push_back(expect(IrTok::TickVar, "quantified variable").text);
      if (at(IrTok::Comma)) advance();
    }
    advance();
    expect(IrTok::LBrace, "'{'");
    while (!at(IrTok::RBrace)) s.body.push_back(constraint());
    advance();
    return s;
  }

  Constraint constraint() {
    int loc = number("constraint location index");
    if (at(IrTok::Ident) && peek(1).kind == IrTok::LParen) {
      std::string name = cur().text;
      advance();
      advance();
      std::vector<std::string> args;
      while (!at(IrTok::RParen)) {
        args.push_back(expect(IrTok::TickVar, "instantiation argument").text);
        if (at(IrTok::Comma)) advance();
      }
      advance();
      return Constraint::instantiation(loc, std::move(name), std::move(args));
    }
    TypeRef lhs = type();
    expect(IrTok::Equals, "'='");
    TypeRef rhs = type();
    return Constraint::equality(loc, std::move(lhs), std::move(rhs));
  }

  TypeRef type() {
    TypeRef t = type_atom();
    if (at(IrTok::Arrow)) {
      advance();
      return make_arrow(std::move(t), type());
    }
    return t;
  }

  TypeRef type_atom() {
    if (at(IrTok::TickVar)) {
      std::string n = cur().text;
      advance();
      return make_var(std::move(n));
    }
    if (at(IrTok::Ident)) {
      std::string n = cur().text;
      advance();
      return make_ground(std::move(n));
    }
    if (at(IrTok::LParen)) {
      advance();
      TypeRef t = type();
      expect(IrTok::RParen, "')'");
      return t;
    }
    err("type");
  }

  std::vector<IrToken> toks_;
  size_t i_ = 0;
};

void print_constraint(std::ostream &os, const Constraint &c) {
  os << c.loc << ' ';
  if (c.is_instantiation) {
    os << c.scheme << '(';
    for (size_t i = 0; i < c.args.size(); i++) {
      if (i) os << ' ';
      os << '\'' << c.args[i];
    }
    os << ')';
  } else {
    os << type_str(c.lhs) << " = " << type_str(c.rhs);
  }
  os << '\n';
}

} // namespace

std::string print_ir(const IrDoc &doc) {
  std::ostringstream os;
  for (const auto &l : doc.locations) {
    os << l.index << ' ' << l.range.str();
    if (l.weight) os << ' ' << *l.weight;
    os << '\n';
  }
  os << "---\n";
  for (const auto &s : doc.schemes) {
    os << s.def_loc << ' ' << s.name << '(';
    for (size_t i = 0; i < s.quantified.size(); i++) {
      if (i) os << ' ';
      os << '\'' << s.quantified[i];
    }
    os << ") {\n";
    for (const auto &c : s.body) {
      os << "  ";
      print_constraint(os, c);
    }
    os << "}\n";
  }
  os << "---\n";
  for (const auto &c : doc.constraints) print_constraint(os, c);
  return os.str();
}

IrDoc parse_ir(const std::string &text) {
  return IrParser(lex(text)).run();
}

TypeRef parse_type_text(const std::string &text) {
  std::vector<IrToken> toks;
  try {
    toks = lex(text);
  } catch (const Error &e) {
    fail(TYRO_ERR_INVALID_ARGUMENT, std::string("bad type: ") + e.what());
  }
  size_t i = 0;
  std::function<TypeRef()> type, atom;
  auto at = [&](IrTok k) { return toks[i].kind == k; };
  atom = [&]() -> TypeRef {
    if (at(IrTok::TickVar)) return make_var(toks[i++].text);
    if (at(IrTok::Ident)) return make_ground(toks[i++].text);
    if (at(IrTok::LParen)) {
      i++;
      TypeRef t = type();
      if (!at(IrTok::RParen))
        fail(TYRO_ERR_INVALID_ARGUMENT, "bad type: expected ')'");
      i++;
      return t;
    }
    fail(TYRO_ERR_INVALID_ARGUMENT, "bad type: expected type");
  };
  type = [&]() -> TypeRef {
    TypeRef t = atom();
    if (at(IrTok::Arrow)) {
      i++;
      return make_arrow(std::move(t), type());
    }
    return t;
  };
  TypeRef t = type();
  if (!at(IrTok::End))
    fail(TYRO_ERR_INVALID_ARGUMENT, "bad type: trailing tokens");
  return t;
}

} // namespace tyro
