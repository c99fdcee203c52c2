#include "types.hpp"

#include <set>

#include "error.hpp"

namespace tyro {

TypeRef make_ground(std::string name) {
  return std::make_shared<Type>(TypeKind::Ground, std::move(name));
}

TypeRef make_var(std::string name) {
  return std::make_shared<Type>(TypeKind::Var, std::move(name));
}

TypeRef make_arrow(TypeRef domain, TypeRef codomain) {
  return std::make_shared<Type>(std::move(domain), std::move(codomain));
}

bool type_equal(const TypeRef &a, const TypeRef &b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == TypeKind::Arrow)
    return type_equal(a->lhs, b->lhs) && type_equal(a->rhs, b->rhs);
  return a->name == b->name;
}

static void type_str_rec(const TypeRef &t, std::string &out) {
  switch (t->kind) {
  case TypeKind::Ground:
    out += t->name;
    break;
  case TypeKind::Var:
    out += '\'';
    out += t->name;
    break;
  case TypeKind::Arrow:
    if (t->lhs->kind == TypeKind::Arrow) {
      out += '(';
      type_str_rec(t->lhs, out);
      out += ')';
    } else {
      type_str_rec(t->lhs, out);
    }
    out += " -> ";
    type_str_rec(t->rhs, out);
    break;
  }
}

std::string type_str(const TypeRef &t) {
  std::string out;
  type_str_rec(t, out);
  return out;
}

void free_vars(const TypeRef &t, std::set<std::string> &out) {
  switch (t->kind) {
  case TypeKind::Ground:
    break;
  case TypeKind::Var:
    out.insert(t->name);
    break;
  case TypeKind::Arrow:
    free_vars(t->lhs, out);
    free_vars(t->rhs, out);
    break;
  }
}

TypeRef substitute(const TypeRef &t,
                   const std::map<std::string, TypeRef> &subst) {
  switch (t->kind) {
  case TypeKind::Ground:
    return t;
  case TypeKind::Var: {
    auto it = subst.find(t->name);
    return it == subst.end() ? t : it->second;
  }
  case TypeKind::Arrow: {
    TypeRef l = substitute(t->lhs, subst);
    TypeRef r = substitute(t->rhs, subst);
    if (l == t->lhs && r == t->rhs) return t;
    return make_arrow(std::move(l), std::move(r));
  }
  }
  return t;
}

const LocEntry *IrDoc::find_loc(int index) const {
  for (const auto &l : locations)
    if (l.index == index) return &l;
  return nullptr;
}

const TypeScheme *IrDoc::find_scheme(const std::string &name) const {
  for (const auto &s : schemes)
    if (s.name == name) return &s;
  return nullptr;
}

int IrDoc::equality_count() const {
  int n = 0;
  for (const auto &c : constraints)
    if (!c.is_instantiation) n++;
  for (const auto &s : schemes)
    for (const auto &c : s.body)
      if (!c.is_instantiation) n++;
  return n;
}

void validate(const IrDoc &doc) {
  std::set<int> indices;
  for (const auto &l : doc.locations) {
    if (!indices.insert(l.index).second)
      fail(TYRO_ERR_IR_SYNTAX,
           "duplicate location index " + std::to_string(l.index));
  }
  auto check_loc = [&](int loc) {
    if (!indices.count(loc))
      fail(TYRO_ERR_DANGLING_LOC,
           "constraint references undeclared location " + std::to_string(loc));
  };
  // Instantiations may only refer to schemes defined earlier.
  std::set<std::string> defined;
  auto check_constraint = [&](const Constraint &c) {
    check_loc(c.loc);
    if (c.is_instantiation) {
      if (!defined.count(c.scheme))
        fail(TYRO_ERR_UNKNOWN_SCHEME,
             "instantiation of undeclared scheme '" + c.scheme + "'");
    }
  };
  for (const auto &s : doc.schemes) {
    check_loc(s.def_loc);
    for (const auto &c : s.body) check_constraint(c);
    if (!defined.insert(s.name).second)
      fail(TYRO_ERR_IR_SYNTAX, "duplicate scheme name '" + s.name + "'");
  }
  for (const auto &c : doc.constraints) check_constraint(c);
  // Argument counts must match the scheme's quantifier count.
  auto check_arity = [&](const Constraint &c) {
    if (!c.is_instantiation) return;
    const TypeScheme *s = doc.find_scheme(c.scheme);
    if (s && s->quantified.size() != c.args.size())
      fail(TYRO_ERR_IR_SYNTAX, "instantiation of '" + c.scheme + "' with " +
                                   std::to_string(c.args.size()) +
                                   " arguments, scheme quantifies " +
                                   std::to_string(s->quantified.size()));
  };
  for (const auto &s : doc.schemes)
    for (const auto &c : s.body) check_arity(c);
  for (const auto &c : doc.constraints) check_arity(c);
}

} // namespace tyro
