#include "doctest.h"

#include "error.hpp"
#include "infer.hpp"
#include "ir.hpp"
#include "parser.hpp"

using namespace tyro;

namespace {
const char *kExampleIr = "0 1;0-2;5\n"
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
} // namespace

TEST_CASE("print then parse is the identity on generated documents") {
  for (const char *src : {"let x = \"hi\" in\nnot x", "1",
                          "let id = fun z -> z;;\nid 3",
                          "if true then 1 else 2",
                          "let a = 1 in let b = a in succ b"}) {
    Program p = parse(src);
    assign_indices(p);
    IrDoc d = make_ir(p, parse_prelude("not : bool -> bool\n"
                                       "succ : int -> int\n"));
    std::string once = print_ir(d);
    CHECK(print_ir(parse_ir(once)) == once);
  }
}

TEST_CASE("parse then print is idempotent on hand-written IR") {
  std::string once = print_ir(parse_ir(kExampleIr));
  CHECK(once == kExampleIr);
  CHECK(print_ir(parse_ir(once)) == once);
}

TEST_CASE("whitespace and commas are insignificant on input") {
  std::string squashed = "0 1;0-2;5 1 1;8-1;12 2 2;0-2;3 3 2;4-2;5 4 2;0-2;5"
                         " --- 0 x('x){1 'x=string} --- 0 x('x0)"
                         " 2 'l2=bool->bool 3 x('x1) 4 'l2='x1->'l4";
  CHECK(print_ir(parse_ir(squashed)) == kExampleIr);
  std::string commas = "0 1;0-1;1\n---\n0 f('a,'b) {\n}\n---\n0 f('a,'b)\n";
  IrDoc d = parse_ir(commas);
  REQUIRE(d.schemes.size() == 1);
  CHECK(d.schemes[0].quantified == std::vector<std::string>{"a", "b"});
}

TEST_CASE("optional location weights survive a round trip") {
  std::string text = "0 1;0-1;9 5\n"
                     "1 1;2-1;4\n"
                     "2 1;6-1;8 0\n"
                     "---\n"
                     "---\n"
                     "1 'a = int\n";
  IrDoc d = parse_ir(text);
  REQUIRE(d.locations.size() == 3);
  CHECK(d.locations[0].weight == 5);
  CHECK_FALSE(d.locations[1].weight.has_value());
  CHECK(d.locations[2].weight == 0);
  CHECK(print_ir(d) == text);
}

TEST_CASE("weight vs next-index ambiguity is resolved by the ';' position") {
  // "0 1;0-1;9 7 1;2-1;4": the 7 must be the next entry's index, since a
  // weight here would leave "1;2-1;4" without an index.
  IrDoc d = parse_ir("0 1;0-1;9 7 1;2-1;4\n---\n---\n");
  REQUIRE(d.locations.size() == 2);
  CHECK_FALSE(d.locations[0].weight.has_value());
  CHECK(d.locations[1].index == 7);
}

TEST_CASE("arrow types print with minimal parentheses") {
  TypeRef t = make_arrow(make_arrow(make_var("a"), make_var("b")),
                         make_arrow(make_var("c"), make_var("d")));
  CHECK(type_str(t) == "('a -> 'b) -> 'c -> 'd");
  CHECK(type_str(parse_type_text("('a -> 'b) -> 'c -> 'd")) ==
        "('a -> 'b) -> 'c -> 'd");
}

TEST_CASE("dangling location references are rejected") {
  try {
    parse_ir("0 1;0-1;1\n---\n---\n9 'a = int\n");
    FAIL("expected dangling-location");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_DANGLING_LOC);
  }
}

TEST_CASE("unknown and out-of-order scheme references are rejected") {
  CHECK_THROWS_AS(parse_ir("0 1;0-1;1\n---\n---\n0 ghost('a)\n"), Error);
  try {
    parse_ir("0 1;0-1;1\n---\n---\n0 ghost('a)\n");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_UNKNOWN_SCHEME);
  }
}

TEST_CASE("duplicate location indices are rejected") {
  CHECK_THROWS_AS(parse_ir("0 1;0-1;1\n0 1;2-1;3\n---\n---\n"), Error);
}

TEST_CASE("malformed IR text reports ir-syntax-error") {
  for (const char *bad : {"x", "0 1;0-1;1\n---\n", "0 1;0", "0 1;0-1;1 --- ---"
                                                            " 0 'a ="}) {
    try {
      parse_ir(bad);
      FAIL("expected a parse failure for: ", bad);
    } catch (const Error &e) {
      CHECK(e.code == TYRO_ERR_IR_SYNTAX);
    }
  }
}

TEST_CASE("comments are ignored") {
  IrDoc d = parse_ir("# header\n0 1;0-1;1 # trailing\n---\n---\n0 'a = int\n");
  CHECK(d.locations.size() == 1);
}
