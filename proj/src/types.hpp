#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "source_range.hpp"

namespace tyro {

// Monotypes: ground types, type variables and arrows. Shared immutable
// nodes; construction goes through the make_* helpers.
struct Type;
using TypeRef = std::shared_ptr<const Type>;

enum class TypeKind { Ground, Var, Arrow };

struct Type {
  TypeKind kind;
  std::string name; // Ground: type name; Var: variable name (no tick)
  TypeRef lhs, rhs; // Arrow only

  Type(TypeKind k, std::string n) : kind(k), name(std::move(n)) {}
  Type(TypeRef l, TypeRef r)
      : kind(TypeKind::Arrow), lhs(std::move(l)), rhs(std::move(r)) {}
};

TypeRef make_ground(std::string name);
TypeRef make_var(std::string name);
TypeRef make_arrow(TypeRef domain, TypeRef codomain);

bool type_equal(const TypeRef &a, const TypeRef &b);

// Renders with a leading tick on variables and right-associative arrows:
// ('a -> 'b) -> 'c.
std::string type_str(const TypeRef &t);

void free_vars(const TypeRef &t, std::set<std::string> &out);
TypeRef substitute(const TypeRef &t,
                   const std::map<std::string, TypeRef> &subst);

// A located constraint: either an equality between monotypes or an
// instantiation of a named scheme.
struct Constraint {
  int loc = -1;
  bool is_instantiation = false;
  TypeRef lhs, rhs;                 // equality
  std::string scheme;               // instantiation: scheme name
  std::vector<std::string> args;    // instantiation: argument variables

  static Constraint equality(int loc, TypeRef l, TypeRef r) {
    Constraint c;
    c.loc = loc;
    c.lhs = std::move(l);
    c.rhs = std::move(r);
    return c;
  }
  static Constraint instantiation(int loc, std::string scheme,
                                  std::vector<std::string> args) {
    Constraint c;
    c.loc = loc;
    c.is_instantiation = true;
    c.scheme = std::move(scheme);
    c.args = std::move(args);
    return c;
  }
};

// A type scheme: quantified variables (result variable last) and the
// constraint set generated for the bound expression.
struct TypeScheme {
  std::string name;
  std::vector<std::string> quantified;
  std::vector<Constraint> body;
  int def_loc = -1;
};

struct LocEntry {
  int index = -1;
  SourceRange range;
  std::optional<int> weight; // 0 marks a hard location
};

// The three-section IR document: locations, schemes, constraints.
struct IrDoc {
  std::vector<LocEntry> locations;
  std::vector<TypeScheme> schemes;
  std::vector<Constraint> constraints;

  const LocEntry *find_loc(int index) const;
  const TypeScheme *find_scheme(const std::string &name) const;
  int equality_count() const; // including scheme bodies
};

// Checks index uniqueness, dangling location references and unknown or
// out-of-order scheme references; throws on violation.
void validate(const IrDoc &doc);

} // namespace tyro
