#include "encode.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "error.hpp"

namespace tyro {

std::vector<int> LocForest::chain(int i) const {
  std::vector<int> out;
  for (int n = i;;) {
    out.push_back(n);
    auto it = parent.find(n);
    if (it == parent.end()) break;
    n = it->second;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool LocForest::is_ancestor(int anc, int i) const {
  for (int n = i;;) {
    auto it = parent.find(n);
    if (it == parent.end()) return false;
    if (it->second == anc) return true;
    n = it->second;
  }
}

LocForest build_forest(const std::vector<LocEntry> &locations) {
  LocForest f;
  for (const auto &a : locations) f.indices.push_back(a.index);
  std::sort(f.indices.begin(), f.indices.end());

  std::map<int, SourceRange> range;
  for (const auto &l : locations) range[l.index] = l.range;

  for (size_t i = 0; i < locations.size(); i++) {
    for (size_t j = i + 1; j < locations.size(); j++) {
      const auto &a = locations[i], &b = locations[j];
      if (a.range == b.range)
        fail(TYRO_ERR_MALFORMED_LOCATIONS,
             "locations " + std::to_string(a.index) + " and " +
                 std::to_string(b.index) + " have identical range " +
                 a.range.str());
      if (a.range.overlaps(b.range) && !a.range.contains(b.range) &&
          !b.range.contains(a.range))
        fail(TYRO_ERR_MALFORMED_LOCATIONS,
             "locations " + std::to_string(a.index) + " and " +
                 std::to_string(b.index) + " partially overlap (" +
                 a.range.str() + " vs " + b.range.str() + ")");
    }
  }

  // parent = minimal strictly containing interval
  for (const auto &l : locations) {
    const LocEntry *best = nullptr;
    for (const auto &c : locations) {
      if (c.index == l.index) continue;
      if (!c.range.strictly_contains(l.range)) continue;
      if (!best || best->range.strictly_contains(c.range)) best = &c;
    }
    if (best)
      f.parent[l.index] = best->index;
  }
  for (int i : f.indices) {
    if (!f.parent.count(i)) f.roots.push_back(i);
    f.children[i] = {};
  }
  for (const auto &[child, par] : f.parent) f.children[par].push_back(child);

  auto by_start = [&](int a, int b) {
    return range.at(a).start < range.at(b).start;
  };
  std::sort(f.roots.begin(), f.roots.end(), by_start);
  for (auto &[i, ch] : f.children) std::sort(ch.begin(), ch.end(), by_start);
  return f;
}

void assign_weights(LocForest &f, const std::map<int, int> &declared) {
  std::function<int(int)> size = [&](int i) {
    int n = 1;
    for (int c : f.children.at(i)) n += size(c);
    return n;
  };
  for (int i : f.indices) {
    auto it = declared.find(i);
    f.weight[i] = it != declared.end() ? it->second : size(i);
  }
}

LocForest weighted_forest(const IrDoc &doc, const std::vector<int> &hard) {
  LocForest f = build_forest(doc.locations);
  std::map<int, int> declared;
  for (const auto &l : doc.locations)
    if (l.weight) declared[l.index] = *l.weight;
  for (int i : hard) {
    if (!std::count(f.indices.begin(), f.indices.end(), i))
      fail(TYRO_ERR_INVALID_ARGUMENT,
           "hard location " + std::to_string(i) + " is not in the document");
    declared[i] = 0;
  }
  assign_weights(f, declared);
  return f;
}

namespace {

std::string mangle(const std::string &var) { return "-" + var; }
std::string loc_sym(int i) { return "l" + std::to_string(i); }

std::string type_term(const TypeRef &t) {
  switch (t->kind) {
  case TypeKind::Ground:
    return t->name;
  case TypeKind::Var:
    return mangle(t->name);
  case TypeKind::Arrow:
    return "(-> " + type_term(t->lhs) + " " + type_term(t->rhs) + ")";
  }
  return {};
}

std::string constraint_term(const Constraint &c) {
  if (c.is_instantiation) {
    std::string s = "(" + c.scheme;
    for (const auto &a : c.args) s += " " + mangle(a);
    return s + ")";
  }
  return "(= " + type_term(c.lhs) + " " + type_term(c.rhs) + ")";
}

std::string conj(const std::vector<std::string> &parts) {
  if (parts.size() == 1) return parts[0];
  std::string s = "(and";
  for (const auto &p : parts) s += " " + p;
  return s + ")";
}

struct Emitter {
  const IrDoc &doc;
  const LocForest &forest;
  Encoding enc;

  // Ground types in first-occurrence order: scheme section first, then the
  // constraint section, as laid out in the document.
  std::vector<std::string> ground_types() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add_type = [&](const TypeRef &t) {
      std::function<void(const TypeRef &)> walk = [&](const TypeRef &t) {
        if (t->kind == TypeKind::Ground) {
          if (seen.insert(t->name).second) out.push_back(t->name);
        } else if (t->kind == TypeKind::Arrow) {
          walk(t->lhs);
          walk(t->rhs);
        }
      };
      walk(t);
    };
    auto scan = [&](const Constraint &c) {
      if (!c.is_instantiation) {
        add_type(c.lhs);
        add_type(c.rhs);
      }
    };
    for (const auto &s : doc.schemes)
      for (const auto &c : s.body) scan(c);
    for (const auto &c : doc.constraints) scan(c);
    return out;
  }

  // Globally declared type variables: everything free at the top level
  // plus scheme-body variables that are not quantified, in first-occurrence
  // order over the document.
  std::vector<std::string> global_vars() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string &v) {
      if (seen.insert(v).second) out.push_back(v);
    };
    auto walk_type = [&](const TypeRef &t, const std::set<std::string> &skip) {
      std::function<void(const TypeRef &)> walk = [&](const TypeRef &t) {
        if (t->kind == TypeKind::Var) {
          if (!skip.count(t->name)) add(t->name);
        } else if (t->kind == TypeKind::Arrow) {
          walk(t->lhs);
          walk(t->rhs);
        }
      };
      walk(t);
    };
    for (const auto &s : doc.schemes) {
      std::set<std::string> q(s.quantified.begin(), s.quantified.end());
      for (const auto &c : s.body) {
        if (c.is_instantiation) {
          for (const auto &a : c.args)
            if (!q.count(a)) add(a);
        } else {
          walk_type(c.lhs, q);
          walk_type(c.rhs, q);
        }
      }
    }
    std::set<std::string> none;
    for (const auto &c : doc.constraints) {
      if (c.is_instantiation) {
        for (const auto &a : c.args) add(a);
      } else {
        walk_type(c.lhs, none);
        walk_type(c.rhs, none);
      }
    }
    return out;
  }

  // Nested-implication body for the constraints in `at`, rooted at `node`:
  // constraints at the same location are conjoined under one guard chain.
  std::vector<std::string>
  deep_content(int node, const std::map<int, std::vector<std::string>> &at) const {
    std::vector<std::string> parts;
    auto it = at.find(node);
    if (it != at.end())
      parts.insert(parts.end(), it->second.begin(), it->second.end());
    for (int c : forest.children.at(node)) {
      std::vector<std::string> sub = deep_content(c, at);
      if (!sub.empty())
        parts.push_back("(=> " + loc_sym(c) + " " + conj(sub) + ")");
    }
    return parts;
  }

  std::string guard_chain_flat(int from_root, int loc) const {
    std::vector<int> full = forest.chain(loc);
    std::vector<std::string> syms;
    bool seen_root = false;
    for (int n : full) {
      if (n == from_root) seen_root = true;
      if (seen_root) syms.push_back(loc_sym(n));
    }
    if (!seen_root)
      for (int n : full) syms.push_back(loc_sym(n));
    return conj(syms);
  }

  // The guarded formula for a constraint group, used by both encodings.
  // `root` is the guard chain's start: a forest root for top-level
  // constraints, the defining node for scheme bodies.
  std::vector<std::string>
  body_parts(int root, const std::vector<Constraint> &cs) const {
    std::map<int, std::vector<std::string>> at;
    std::vector<std::string> stray; // locations outside root's subtree
    for (const auto &c : cs) {
      if (c.loc == root || forest.is_ancestor(root, c.loc))
        at[c.loc].push_back(constraint_term(c));
      else
        stray.push_back("(=> " + guard_chain_flat(c.loc, c.loc) + " " +
                        constraint_term(c) + ")");
    }
    std::vector<std::string> out;
    if (enc == Encoding::Deep) {
      std::vector<std::string> inner = deep_content(root, at);
      if (!inner.empty())
        out.push_back("(=> " + loc_sym(root) + " " + conj(inner) + ")");
    } else {
      for (const auto &c : cs) {
        if (!(c.loc == root || forest.is_ancestor(root, c.loc))) continue;
        out.push_back("(=> " + guard_chain_flat(root, c.loc) + " " +
                      constraint_term(c) + ")");
      }
    }
    out.insert(out.end(), stray.begin(), stray.end());
    return out;
  }

  void declarations(std::ostream &os) const {
    std::vector<std::string> grounds = ground_types();
    std::vector<std::string> vars = global_vars();
    if (!grounds.empty() || !vars.empty() || !doc.schemes.empty()) {
      os << "(declare-datatype Type\n  (";
      if (grounds.empty()) os << "(unit) "; // well-foundedness fallback
      for (const auto &g : grounds) os << "(" << g << ") ";
      os << "(-> (->.1 Type) (->.2 Type))))\n";
    }
    for (const auto &v : vars)
      os << "(declare-const " << mangle(v) << " Type)";
    if (!vars.empty()) os << "\n";
  }

  void defined_functions(std::ostream &os) const {
    for (const auto &s : doc.schemes) {
      os << "(define-fun " << s.name << " (";
      for (size_t i = 0; i < s.quantified.size(); i++) {
        if (i) os << " ";
        os << "(" << mangle(s.quantified[i]) << " Type)";
      }
      os << ") Bool\n  ";
      std::vector<std::string> parts = body_parts(s.def_loc, s.body);
      os << (parts.empty() ? std::string("true") : conj(parts)) << ")\n";
    }
  }

  void main_assertions(std::ostream &os) const {
    for (int root : forest.roots) {
      std::vector<Constraint> cs;
      for (const auto &c : doc.constraints)
        if (c.loc == root || forest.is_ancestor(root, c.loc)) cs.push_back(c);
      std::vector<std::string> parts = body_parts(root, cs);
      for (const auto &p : parts) os << "(assert " << p << ")\n";
    }
    // Constraints whose location is in no root's subtree cannot exist once
    // the forest is built over the same location table.
  }

  std::string run_maxsmt() const {
    std::ostringstream os;
    declarations(os);
    for (int i : forest.indices) {
      os << "(declare-const " << loc_sym(i) << " Bool)";
      if (forest.is_hard(i))
        os << "(assert " << loc_sym(i) << ")\n";
      else
        os << "(assert-soft " << loc_sym(i) << " :weight "
           << forest.weight.at(i) << ")\n";
    }
    defined_functions(os);
    main_assertions(os);
    os << "(check-sat)\n(get-objectives)\n(get-value (";
    for (size_t k = 0; k < forest.indices.size(); k++) {
      if (k) os << " ";
      os << loc_sym(forest.indices[k]);
    }
    os << "))\n";
    return os.str();
  }

  std::string run_fixed(const std::vector<int> &removed) const {
    std::set<int> rem(removed.begin(), removed.end());
    std::ostringstream os;
    declarations(os);
    for (int i : forest.indices) {
      os << "(declare-const " << loc_sym(i) << " Bool)";
      if (rem.count(i))
        os << "(assert (not " << loc_sym(i) << "))\n";
      else
        os << "(assert " << loc_sym(i) << ")\n";
    }
    defined_functions(os);
    main_assertions(os);
    os << "(check-sat)\n";
    return os.str();
  }
};

} // namespace

std::string encode(const IrDoc &doc, const LocForest &forest, Encoding enc) {
  validate(doc);
  return Emitter{doc, forest, enc}.run_maxsmt();
}

std::string encode_fixed(const IrDoc &doc, const LocForest &forest,
                         Encoding enc, const std::vector<int> &removed) {
  validate(doc);
  return Emitter{doc, forest, enc}.run_fixed(removed);
}

} // namespace tyro
