#pragma once

#include <optional>

#include "ast.hpp"
#include "infer.hpp"

namespace tyro {

// Classical eager-unification inference (the "compiler blame" baseline):
// structural recursion with unification at each step; on the first failed
// unification, reports the blamed subexpression's range.
struct ClassicalResult {
  bool ok = false;
  std::optional<SourceRange> blame; // on failure
};

ClassicalResult classical_infer(const Program &p, const Prelude &builtins);

} // namespace tyro
