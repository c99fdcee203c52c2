#include "doctest.h"

#include "error.hpp"
#include "infer.hpp"
#include "ir.hpp"
#include "parser.hpp"

using namespace tyro;

namespace {
IrDoc ir_of(const std::string &src, const std::string &prelude = "") {
  Program p = parse(src);
  assign_indices(p);
  return make_ir(p, parse_prelude(prelude.empty() ? default_prelude()
                                                  : prelude.c_str()));
}
} // namespace

TEST_CASE("worked example: exact IR for let x = \"hi\" in not x") {
  // Hand-checked against the constraint typing rules: the let generalizes
  // x's constraints into a scheme and instantiates it at both occurrences.
  std::string expect = "0 1;0-2;5\n"
                       "1 1;8-1;12\n"
                       "2 2;0-2;3\n"
                       "3 2;4-2;5\n"
                       "4 2;0-2;5\n"
                       "---\n"
                       "0 x('x) {\n"
                       "  1 'x = string\n"
                       "}\n"
                       "---\n"
                       "0 x('x0)\n"
                       "2 'l2 = bool -> bool\n"
                       "3 x('x1)\n"
                       "4 'l2 = 'x1 -> 'l4\n";
  CHECK(print_ir(ir_of("let x = \"hi\" in\nnot x")) == expect);
}

TEST_CASE("one literal: one location, one constraint, no schemes") {
  IrDoc d = ir_of("1");
  CHECK(d.locations.size() == 1);
  CHECK(d.schemes.empty());
  REQUIRE(d.constraints.size() == 1);
  CHECK(!d.constraints[0].is_instantiation);
  CHECK(type_str(d.constraints[0].rhs) == "int");
}

TEST_CASE("conditional emits three constraints at the child locations") {
  IrDoc d = ir_of("if true then 1 else 2");
  // locs: true=0, 1=1, 2=2, if=3; constraints: literals at 0,1,2 plus
  // cond=bool @0, result='then @1, 'then='else @2
  CHECK(d.locations.size() == 4);
  int at0 = 0, at1 = 0, at2 = 0, at3 = 0;
  for (const auto &c : d.constraints) {
    if (c.loc == 0) at0++;
    if (c.loc == 1) at1++;
    if (c.loc == 2) at2++;
    if (c.loc == 3) at3++;
  }
  CHECK(at0 == 2);
  CHECK(at1 == 2);
  CHECK(at2 == 2);
  CHECK(at3 == 0);
}

TEST_CASE("abstraction constrains its own location to an arrow") {
  IrDoc d = ir_of("fun y -> y");
  bool found = false;
  for (const auto &c : d.constraints)
    if (!c.is_instantiation && c.rhs->kind == TypeKind::Arrow) found = true;
  CHECK(found);
}

TEST_CASE("unbound variable is rejected with its range") {
  try {
    ir_of("nope");
    FAIL("expected unbound-variable");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_UNBOUND);
    REQUIRE(e.where.has_value());
    CHECK(*e.where == SourceRange{{1, 0}, {1, 4}});
  }
}

TEST_CASE("top-level bindings become schemes usable downstream") {
  IrDoc d = ir_of("let id = fun z -> z;;\nid 3");
  REQUIRE(d.schemes.size() == 1);
  CHECK(d.schemes[0].name == "id");
  bool instantiated = false;
  for (const auto &c : d.constraints)
    if (c.is_instantiation && c.scheme == "id") instantiated = true;
  CHECK(instantiated);
}

TEST_CASE("let polymorphism: two instantiations at different types succeed") {
  IrDoc d = ir_of("let id = fun z -> z in (if id true then id 1 else 2)");
  int uses = 0;
  for (const auto &c : d.constraints)
    if (c.is_instantiation) uses++;
  CHECK(uses >= 2);
  validate(d); // scheme defined before use, no dangling locations
}

TEST_CASE("shadowed binder names stay unambiguous in scheme names") {
  IrDoc d = ir_of("let a = 1 in let a = true in a");
  REQUIRE(d.schemes.size() == 2);
  CHECK(d.schemes[0].name != d.schemes[1].name);
}

TEST_CASE("prelude parsing accepts arrows, parens and comments") {
  Prelude pre = parse_prelude("# built-ins\n"
                              "compose : ('a -> 'b) -> ('c -> 'a) -> 'c -> 'b\n"
                              "\n"
                              "zero : int\n");
  REQUIRE(pre.size() == 2);
  CHECK(pre[0].first == "compose");
  CHECK(type_str(pre[1].second) == "int");
  CHECK(type_str(pre[0].second) == "('a -> 'b) -> ('c -> 'a) -> 'c -> 'b");
}

TEST_CASE("fresh supply skips claimed names") {
  FreshSupply fs;
  CHECK(fs.claim("x0") == "x0");
  CHECK(fs.fresh("x") == "x1"); // x0 is taken
  CHECK(fs.fresh("x") == "x2");
}
