#include "oracle.hpp"

#include <algorithm>

#include "error.hpp"

namespace tyro {

namespace {

// Fresh names for scheme-body copies; '#' keeps them apart from every
// name the frontend can produce.
struct ExpandSupply {
  int n = 0;
  std::string fresh() { return "#" + std::to_string(n++); }
};

void expand_into(const IrDoc &doc, const ActiveSet &active,
                 const Constraint &c,
                 const std::map<std::string, std::string> &names,
                 ExpandSupply &supply, std::vector<Constraint> &out) {
  if (!active.active(c.loc)) return;
  if (!c.is_instantiation) {
    std::map<std::string, TypeRef> subst;
    for (const auto &[from, to] : names) subst[from] = make_var(to);
    out.push_back(Constraint::equality(c.loc, substitute(c.lhs, subst),
                                       substitute(c.rhs, subst)));
    return;
  }
  const TypeScheme *s = doc.find_scheme(c.scheme);
  if (!s)
    fail(TYRO_ERR_UNKNOWN_SCHEME, "unknown scheme '" + c.scheme + "'");
  // C_x[args/quantified], with every other body variable freshened.
  std::map<std::string, std::string> inner;
  for (size_t i = 0; i < s->quantified.size() && i < c.args.size(); i++) {
    auto it = names.find(c.args[i]);
    inner[s->quantified[i]] = it != names.end() ? it->second : c.args[i];
  }
  std::set<std::string> body_vars;
  for (const auto &bc : s->body) {
    if (bc.is_instantiation) {
      body_vars.insert(bc.args.begin(), bc.args.end());
    } else {
      free_vars(bc.lhs, body_vars);
      free_vars(bc.rhs, body_vars);
    }
  }
  for (const auto &v : body_vars)
    if (!inner.count(v)) inner[v] = supply.fresh();
  for (const auto &bc : s->body)
    expand_into(doc, active, bc, inner, supply, out);
}

} // namespace

std::vector<Constraint> expand(const IrDoc &doc, const ActiveSet &active) {
  std::vector<Constraint> out;
  ExpandSupply supply;
  for (const auto &c : doc.constraints)
    expand_into(doc, active, c, {}, supply, out);
  return out;
}

namespace {

TypeRef resolve(const TypeRef &t, const std::map<std::string, TypeRef> &subst) {
  TypeRef cur = t;
  while (cur->kind == TypeKind::Var) {
    auto it = subst.find(cur->name);
    if (it == subst.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs(const std::string &var, const TypeRef &t,
            const std::map<std::string, TypeRef> &subst) {
  TypeRef r = resolve(t, subst);
  switch (r->kind) {
  case TypeKind::Var:
    return r->name == var;
  case TypeKind::Arrow:
    return occurs(var, r->lhs, subst) || occurs(var, r->rhs, subst);
  default:
    return false;
  }
}

bool unify(const TypeRef &a, const TypeRef &b,
           std::map<std::string, TypeRef> &subst) {
  TypeRef x = resolve(a, subst), y = resolve(b, subst);
  if (x->kind == TypeKind::Var) {
    if (y->kind == TypeKind::Var && y->name == x->name) return true;
    if (occurs(x->name, y, subst)) return false;
    subst[x->name] = y;
    return true;
  }
  if (y->kind == TypeKind::Var) return unify(y, x, subst);
  if (x->kind != y->kind) return false;
  if (x->kind == TypeKind::Ground) return x->name == y->name;
  return unify(x->lhs, y->lhs, subst) && unify(x->rhs, y->rhs, subst);
}

} // namespace

UnifyResult satisfiable(const std::vector<Constraint> &equalities) {
  UnifyResult r;
  std::map<std::string, TypeRef> subst;
  for (const auto &c : equalities) {
    if (c.is_instantiation)
      fail(TYRO_ERR_INVALID_ARGUMENT,
           "satisfiable() expects expanded equality constraints");
    if (!unify(c.lhs, c.rhs, subst)) {
      r.ok = false;
      r.clash_loc = c.loc;
      return r;
    }
  }
  r.ok = true;
  r.witness = std::move(subst);
  return r;
}

MinSources brute_force_min_sources(const IrDoc &doc, int max_locations) {
  validate(doc);
  LocForest forest = weighted_forest(doc);
  int n = (int)forest.indices.size();
  if (n > max_locations)
    fail(TYRO_ERR_TOO_LARGE,
         std::to_string(n) + " locations exceed the enumeration guard of " +
             std::to_string(max_locations));

  struct Cand {
    int weight;
    std::vector<int> indices; // ascending
  };
  std::vector<Cand> cands;
  for (unsigned long mask = 0; mask < (1ul << n); mask++) {
    Cand c{0, {}};
    bool skip = false;
    for (int b = 0; b < n && !skip; b++) {
      if (!(mask & (1ul << b))) continue;
      int idx = forest.indices[(size_t)b];
      if (forest.is_hard(idx)) skip = true;
      c.indices.push_back(idx);
      c.weight += forest.weight.at(idx);
    }
    if (skip) continue;
    // Only ancestor-maximal (antichain) sets; {parent, child} is the
    // same removal as {parent} and must not be counted twice.
    for (size_t i = 0; i < c.indices.size() && !skip; i++)
      for (size_t j = 0; j < c.indices.size() && !skip; j++)
        if (i != j && forest.is_ancestor(c.indices[i], c.indices[j]))
          skip = true;
    if (!skip) cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.indices.size() != b.indices.size())
      return a.indices.size() < b.indices.size();
    return a.indices < b.indices;
  });

  MinSources out;
  bool found = false;
  for (const auto &c : cands) {
    if (found && c.weight > out.min_weight) break;
    ActiveSet active{&forest, {c.indices.begin(), c.indices.end()}};
    if (satisfiable(expand(doc, active)).ok) {
      if (!found) {
        found = true;
        out.min_weight = c.weight;
      }
      out.sources.emplace_back(c.indices.begin(), c.indices.end());
    }
  }
  if (!found)
    fail(TYRO_ERR_NO_ERROR_SOURCE,
         "no removal of soft locations makes the constraints satisfiable");
  return out;
}

} // namespace tyro
