#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "source_range.hpp"

namespace tyro {

// Location-annotated AST for the ML fragment: literals, variables,
// abstraction, application, conditionals and let bindings.
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class ExprKind {
  IntLit,
  FloatLit,
  StringLit,
  BoolLit,
  Var,
  Abs,
  App,
  Cond,
  Let,
};

struct Expr {
  ExprKind kind;
  SourceRange range;
  int index = -1; // location index, assigned by assign_indices

  // IntLit/FloatLit/StringLit: literal text; BoolLit: "true"/"false";
  // Var: variable name; Abs: parameter name; Let: binder name.
  std::string text;
  bool bool_value = false;

  // Abs: {body}; App: {fn, arg}; Cond: {cond, then, else};
  // Let: {bound, body}.
  std::vector<ExprPtr> children;

  Expr(ExprKind k, SourceRange r) : kind(k), range(r) {}
};

struct TopItem {
  bool is_binding = false; // `let x = e;;` vs a bare expression
  std::string name;        // binding name when is_binding
  SourceRange range;
  int index = -1; // for bindings: the item's own location index;
                  // bare expressions use the expression's index
  ExprPtr expr;   // bound expression / bare expression
};

struct Program {
  std::vector<TopItem> items;
};

// Assigns location indices. Let expressions and top-level items claim
// their index before their children; every other node claims its index
// after its children, in the order the constraint generator emits
// constraints for them.
void assign_indices(Program &p);

// All (index, range) pairs in index order.
std::vector<std::pair<int, SourceRange>> node_ranges(const Program &p);

} // namespace tyro
