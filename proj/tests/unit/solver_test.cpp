#include "doctest.h"

#include "error.hpp"
#include "infer.hpp"
#include "ir.hpp"
#include "parser.hpp"
#include "solver.hpp"

using namespace tyro;

namespace {
IrDoc ir_of(const std::string &src) {
  Program p = parse(src);
  assign_indices(p);
  return make_ir(p, parse_prelude(default_prelude()));
}

SolverConfig cfg(Encoding enc = Encoding::Flat) {
  SolverConfig c;
  c.command = default_solver_command();
  c.timeout_sec = 60;
  c.encoding = enc;
  return c;
}
} // namespace

TEST_CASE("parse_result extracts verdict, objective and removed set") {
  IrDoc d = ir_of("let x = \"hi\" in\nnot x");
  LocForest f = weighted_forest(d);
  std::string raw = "sat\n(objectives\n ( 1)\n)\n"
                    "((l0 true)\n (l1 false)\n (l2 true)\n (l3 true)\n"
                    " (l4 true))\n";
  ErrorSource s = parse_result(raw, d, f);
  CHECK(s.total_weight == 1);
  CHECK(s.removed == std::set<int>{1});
  CHECK(s.per_location.at(1).second == 1);
}

TEST_CASE("parse_result failure modes") {
  IrDoc d = ir_of("1");
  LocForest f = weighted_forest(d);
  auto code_of = [&](const char *raw) {
    try {
      parse_result(raw, d, f);
      return TYRO_OK;
    } catch (const Error &e) {
      return e.code;
    }
  };
  CHECK(code_of("unsat\n") == TYRO_ERR_HARD_CONFLICT);
  CHECK(code_of("unknown\n") == TYRO_ERR_UNPARSEABLE_OUTPUT);
  CHECK(code_of("gibberish\n") == TYRO_ERR_UNPARSEABLE_OUTPUT);
  CHECK(code_of("sat\n") == TYRO_ERR_UNPARSEABLE_OUTPUT); // no objectives
  CHECK(code_of("sat\n(objectives\n ( 0)\n)\n") ==
        TYRO_ERR_UNPARSEABLE_OUTPUT); // no model
}

TEST_CASE("missing solver binary reports solver-not-found") {
  IrDoc d = ir_of("1");
  SolverConfig c = cfg();
  c.command = {"definitely-not-a-solver-zzz"};
  try {
    localize(d, c);
    FAIL("expected solver-not-found");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_SOLVER_NOT_FOUND);
  }
}

TEST_CASE("slow solver hits the timeout") {
  IrDoc d = ir_of("1");
  SolverConfig c = cfg();
  c.command = {"sleep", "30"};
  c.timeout_sec = 0.3;
  try {
    localize(d, c);
    FAIL("expected solver-timeout");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_SOLVER_TIMEOUT);
  }
}

TEST_CASE("end to end: the worked example solves to weight 1") {
  IrDoc d = ir_of("let x = \"hi\" in\nnot x");
  for (Encoding enc : {Encoding::Flat, Encoding::Deep}) {
    ErrorSource s = localize(d, cfg(enc));
    CHECK(s.total_weight == 1);
    REQUIRE(s.removed.size() == 1);
    int r = *s.removed.begin();
    CHECK((r == 1 || r == 2 || r == 3));
  }
}

TEST_CASE("end to end: well-typed program solves to weight 0") {
  ErrorSource s = localize(ir_of("not true"), cfg());
  CHECK(s.total_weight == 0);
  CHECK(s.removed.empty());
}

TEST_CASE("verify_error_source accepts real sources and rejects fakes") {
  IrDoc d = ir_of("let x = \"hi\" in\nnot x");
  SolverConfig c = cfg();
  CHECK(verify_error_source(d, c, {1}));
  CHECK(verify_error_source(d, c, {2}));
  CHECK(verify_error_source(d, c, {4}));
  CHECK_FALSE(verify_error_source(d, c, {})); // ill-typed as-is
}

TEST_CASE("all-hard conflict surfaces as hard-conflict") {
  IrDoc d = ir_of("let x = \"hi\" in\nnot x");
  SolverConfig c = cfg();
  try {
    localize(d, c, {0, 1, 2, 3, 4});
    FAIL("expected hard-conflict");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_HARD_CONFLICT);
  }
}
