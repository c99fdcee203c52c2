#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "types.hpp"

namespace tyro {

// Deterministic fresh-variable supply. fresh("x") yields x0, x1, ...;
// claim() reserves an exact name (node result variables l0, l1, ...).
class FreshSupply {
public:
  std::string fresh(const std::string &hint);
  std::string claim(const std::string &name);
  bool used(const std::string &name) const { return used_.count(name) > 0; }

private:
  std::map<std::string, int> counters_;
  std::set<std::string> used_;
};

// Built-in environment: monomorphic `name : type` bindings.
using Prelude = std::vector<std::pair<std::string, TypeRef>>;

// Parses "name : type" lines; '#' starts a comment, blank lines ignored.
Prelude parse_prelude(const std::string &text);
const char *default_prelude();

struct InferOutput {
  std::vector<Constraint> constraints;
  std::vector<TypeScheme> schemes;
  std::vector<std::string> result_vars; // one per top-level item
};

// The constraint typing relation. Expects assign_indices to have run.
InferOutput infer_constraints(const Program &p, const Prelude &builtins);

// Full frontend output: locations (without weights), schemes, constraints.
IrDoc make_ir(const Program &p, const Prelude &builtins);

} // namespace tyro
