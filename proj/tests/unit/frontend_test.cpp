#include "doctest.h"

#include "error.hpp"
#include "parser.hpp"

using namespace tyro;

namespace {
std::vector<std::pair<int, SourceRange>> ranges_of(const std::string &src) {
  Program p = parse(src);
  assign_indices(p);
  return node_ranges(p);
}
} // namespace

TEST_CASE("let-in with application: location table") {
  // let = 0 (before children), then post-order: "hi"=1, not=2, x=3, app=4
  auto rs = ranges_of("let x = \"hi\" in\nnot x");
  REQUIRE(rs.size() == 5);
  CHECK(rs[0] == std::pair{0, SourceRange{{1, 0}, {2, 5}}});
  CHECK(rs[1] == std::pair{1, SourceRange{{1, 8}, {1, 12}}});
  CHECK(rs[2] == std::pair{2, SourceRange{{2, 0}, {2, 3}}});
  CHECK(rs[3] == std::pair{3, SourceRange{{2, 4}, {2, 5}}});
  CHECK(rs[4] == std::pair{4, SourceRange{{2, 0}, {2, 5}}});
}

TEST_CASE("single literal") {
  auto rs = ranges_of("42");
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].second == SourceRange{{1, 0}, {1, 2}});
}

TEST_CASE("application is left-associative") {
  Program p = parse("f a b");
  REQUIRE(p.items.size() == 1);
  const Expr &e = *p.items[0].expr;
  REQUIRE(e.kind == ExprKind::App);
  CHECK(e.children[0]->kind == ExprKind::App); // (f a)
  CHECK(e.children[1]->kind == ExprKind::Var); // b
  CHECK(e.children[0]->children[0]->text == "f");
}

TEST_CASE("conditional and abstraction shapes") {
  Program p = parse("fun x -> if x then 1 else 2");
  const Expr &f = *p.items[0].expr;
  REQUIRE(f.kind == ExprKind::Abs);
  CHECK(f.text == "x");
  const Expr &c = *f.children[0];
  REQUIRE(c.kind == ExprKind::Cond);
  CHECK(c.children.size() == 3);
}

TEST_CASE("top-level binding vs bare expression") {
  Program p = parse("let f = fun x -> x;;\nf 1");
  REQUIRE(p.items.size() == 2);
  CHECK(p.items[0].is_binding);
  CHECK(p.items[0].name == "f");
  CHECK_FALSE(p.items[1].is_binding);
}

TEST_CASE("binding item claims its index before its children") {
  Program p = parse("let f = fun x -> x;;\nf 1");
  assign_indices(p);
  CHECK(p.items[0].index == 0);
  CHECK(p.items[0].expr->index > 0);
}

TEST_CASE("nested comments and string escapes") {
  Program p = parse("(* outer (* inner *) still *) \"a\\n\\\"b\\\"\"");
  REQUIRE(p.items.size() == 1);
  CHECK(p.items[0].expr->kind == ExprKind::StringLit);
}

TEST_CASE("parens extend the inner node's range") {
  auto rs = ranges_of("(1)");
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].second == SourceRange{{1, 0}, {1, 3}});
}

TEST_CASE("floats and bools lex as distinct literals") {
  Program p = parse("1.5;;\ntrue");
  CHECK(p.items[0].expr->kind == ExprKind::FloatLit);
  CHECK(p.items[1].expr->kind == ExprKind::BoolLit);
  CHECK(p.items[1].expr->bool_value);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("let = 3");
    FAIL("expected a syntax error");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_SYNTAX);
    CHECK(e.where.has_value());
  }
  CHECK_THROWS_AS(parse("if 1 then 2"), Error); // missing else
  CHECK_THROWS_AS(parse("fun -> 2"), Error);
  CHECK_THROWS_AS(parse("(1"), Error);
}

TEST_CASE("node_ranges is sorted by index and gap-free from zero") {
  auto rs = ranges_of("let y = if true then 1 else 2 in succ y");
  for (size_t i = 0; i < rs.size(); i++) CHECK(rs[i].first == (int)i);
}
