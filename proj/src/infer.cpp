#include "infer.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <sstream>

#include "error.hpp"
#include "ir.hpp"
#include "parser.hpp"

namespace tyro {

std::string FreshSupply::fresh(const std::string &hint) {
  int &n = counters_[hint];
  for (;;) {
    std::string name = hint + std::to_string(n++);
    if (used_.insert(name).second) return name;
  }
}

std::string FreshSupply::claim(const std::string &name) {
  if (used_.insert(name).second) return name;
  for (int k = 2;; k++) {
    std::string alt = name + "_" + std::to_string(k);
    if (used_.insert(alt).second) return alt;
  }
}

Prelude parse_prelude(const std::string &text) {
  Prelude out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
        return std::isspace(c);
      });
      if (blank) continue;
      fail(TYRO_ERR_INVALID_ARGUMENT,
           "prelude line " + std::to_string(lineno) + ": expected 'name : type'");
    }
    std::string name = line.substr(0, colon);
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               name.end());
    if (name.empty())
      fail(TYRO_ERR_INVALID_ARGUMENT,
           "prelude line " + std::to_string(lineno) + ": empty name");
    out.emplace_back(name, parse_type_text(line.substr(colon + 1)));
  }
  return out;
}

const char *default_prelude() { return "not : bool -> bool\n"; }

namespace {

std::set<std::string> constraint_free_vars(const std::vector<Constraint> &cs) {
  std::set<std::string> fv;
  for (const auto &c : cs) {
    if (c.is_instantiation) {
      fv.insert(c.args.begin(), c.args.end());
    } else {
      free_vars(c.lhs, fv);
      free_vars(c.rhs, fv);
    }
  }
  return fv;
}

// First-occurrence order of variables over a constraint list.
std::vector<std::string> occurrence_order(const std::vector<Constraint> &cs) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  auto add = [&](const std::string &v) {
    if (seen.insert(v).second) order.push_back(v);
  };
  std::function<void(const TypeRef &)> walk = [&](const TypeRef &t) {
    if (t->kind == TypeKind::Var) add(t->name);
    else if (t->kind == TypeKind::Arrow) {
      walk(t->lhs);
      walk(t->rhs);
    }
  };
  for (const auto &c : cs) {
    if (c.is_instantiation)
      for (const auto &a : c.args) add(a);
    else {
      walk(c.lhs);
      walk(c.rhs);
    }
  }
  return order;
}

void rename_in_constraints(std::vector<Constraint> &cs,
                           const std::map<std::string, TypeRef> &subst,
                           const std::map<std::string, std::string> &names) {
  for (auto &c : cs) {
    if (c.is_instantiation) {
      for (auto &a : c.args) {
        auto it = names.find(a);
        if (it != names.end()) a = it->second;
      }
    } else {
      c.lhs = substitute(c.lhs, subst);
      c.rhs = substitute(c.rhs, subst);
    }
  }
}

class Infer {
public:
  Infer(const Prelude &builtins) {
    for (const auto &[name, ty] : builtins) {
      std::set<std::string> fv;
      free_vars(ty, fv);
      for (const auto &v : fv) supply_.claim(v);
      env_.push_back({name, ty, nullptr});
    }
  }

  InferOutput run(const Program &p) {
    // Binder names are collected up front so scheme-name disambiguation
    // never collides with a later binder.
    for (const auto &it : p.items) collect_binders(it);
    InferOutput out;
    for (const auto &it : p.items) {
      if (it.is_binding) {
        std::vector<Constraint> bound;
        std::string a1 = infer(*it.expr, bound);
        const TypeScheme &s = generalize(bound, a1, it.name, it.index);
        std::vector<std::string> args = instantiate_args(s);
        out.result_vars.push_back(args.back());
        emit(out.constraints,
             Constraint::instantiation(it.index, s.name, std::move(args)));
        env_.push_back({it.name, nullptr, &s});
        top_bindings_++;
      } else {
        out.result_vars.push_back(infer(*it.expr, out.constraints));
      }
    }
    out.schemes.assign(schemes_.begin(), schemes_.end());
    return out;
  }

private:
  struct Binding {
    std::string name;
    TypeRef mono;             // monomorphic binding, or
    const TypeScheme *scheme; // let-bound scheme
  };

  void collect_binders(const TopItem &it) {
    if (it.is_binding) binder_names_.insert(it.name);
    std::function<void(const Expr &)> walk = [&](const Expr &e) {
      if (e.kind == ExprKind::Let) binder_names_.insert(e.text);
      for (const auto &c : e.children) walk(*c);
    };
    walk(*it.expr);
  }

  static void emit(std::vector<Constraint> &out, Constraint c) {
    out.push_back(std::move(c));
  }

  std::string node_var(const Expr &e) {
    return supply_.claim("l" + std::to_string(e.index));
  }

  std::vector<std::string> instantiate_args(const TypeScheme &s) {
    std::vector<std::string> args;
    args.reserve(s.quantified.size());
    for (size_t i = 0; i < s.quantified.size(); i++)
      args.push_back(supply_.fresh(s.name));
    return args;
  }

  std::set<std::string> env_free_vars() const {
    std::set<std::string> fv;
    for (const auto &b : env_) {
      if (b.mono) {
        free_vars(b.mono, fv);
      } else {
        std::set<std::string> sfv = constraint_free_vars(b.scheme->body);
        for (const auto &q : b.scheme->quantified) sfv.erase(q);
        fv.insert(sfv.begin(), sfv.end());
      }
    }
    return fv;
  }

  const TypeScheme &generalize(std::vector<Constraint> body, std::string result,
                               const std::string &binder, int def_loc) {
    std::set<std::string> env_fv = env_free_vars();

    // Degenerate case: the result variable occurs free in the environment.
    // The scheme stays monomorphic in it through a fresh alias.
    if (env_fv.count(result)) {
      std::string alias = supply_.fresh(binder);
      body.push_back(
          Constraint::equality(def_loc, make_var(alias), make_var(result)));
      result = alias;
    }

    std::vector<std::string> quantified;
    for (const auto &v : occurrence_order(body)) {
      if (v != result && !env_fv.count(v)) quantified.push_back(v);
    }
    quantified.push_back(result);

    // The scheme is named after its binder; the result variable is renamed
    // to match, as in the IR's x('x) convention.
    std::string sname = scheme_name(binder);
    std::string rname = supply_.used(sname) ? supply_.fresh(sname)
                                            : supply_.claim(sname);
    if (rname != result) {
      rename_in_constraints(body, {{result, make_var(rname)}},
                            {{result, rname}});
      quantified.back() = rname;
    }

    schemes_.push_back(TypeScheme{sname, std::move(quantified), std::move(body),
                                  def_loc});
    return schemes_.back();
  }

  std::string scheme_name(const std::string &binder) {
    if (!scheme_names_.count(binder)) {
      scheme_names_.insert(binder);
      return binder;
    }
    for (int k = 2;; k++) {
      std::string alt = binder + "_" + std::to_string(k);
      if (!scheme_names_.count(alt) && !binder_names_.count(alt)) {
        scheme_names_.insert(alt);
        return alt;
      }
    }
  }

  std::string infer(const Expr &e, std::vector<Constraint> &out) {
    switch (e.kind) {
    case ExprKind::IntLit:
      return literal(e, "int", out);
    case ExprKind::FloatLit:
      return literal(e, "float", out);
    case ExprKind::StringLit:
      return literal(e, "string", out);
    case ExprKind::BoolLit:
      return literal(e, "bool", out);

    case ExprKind::Var: {
      for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
        if (it->name != e.text) continue;
        if (it->mono) {
          std::string g = node_var(e);
          emit(out, Constraint::equality(e.index, make_var(g), it->mono));
          return g;
        }
        // The occurrence's type is the scheme's last instantiation argument.
        std::vector<std::string> args = instantiate_args(*it->scheme);
        std::string result = args.back();
        emit(out, Constraint::instantiation(e.index, it->scheme->name,
                                            std::move(args)));
        return result;
      }
      fail(TYRO_ERR_UNBOUND, "unbound variable '" + e.text + "'", e.range);
    }

    case ExprKind::Abs: {
      std::string param = supply_.fresh(e.text);
      env_.push_back({e.text, make_var(param), nullptr});
      std::string b = infer(*e.children[0], out);
      env_.pop_back();
      std::string g = node_var(e);
      emit(out, Constraint::equality(e.index, make_var(g),
                                     make_arrow(make_var(param), make_var(b))));
      return g;
    }

    case ExprKind::App: {
      std::string a = infer(*e.children[0], out);
      std::string b = infer(*e.children[1], out);
      std::string g = node_var(e);
      emit(out, Constraint::equality(e.index, make_var(a),
                                     make_arrow(make_var(b), make_var(g))));
      return g;
    }

    case ExprKind::Cond: {
      const Expr &cond = *e.children[0];
      const Expr &then_e = *e.children[1];
      const Expr &else_e = *e.children[2];
      std::string a = infer(cond, out);
      std::string b = infer(then_e, out);
      std::string d = infer(else_e, out);
      std::string g = node_var(e);
      emit(out, Constraint::equality(cond.index, make_var(a),
                                     make_ground("bool")));
      emit(out, Constraint::equality(then_e.index, make_var(b), make_var(g)));
      emit(out, Constraint::equality(else_e.index, make_var(d), make_var(g)));
      return g;
    }

    case ExprKind::Let: {
      std::vector<Constraint> bound;
      std::string a1 = infer(*e.children[0], bound);
      const TypeScheme &s = generalize(std::move(bound), a1, e.text, e.index);
      // Consistency instantiation at the let's own location, emitted
      // before the body's constraints.
      emit(out, Constraint::instantiation(e.index, s.name,
                                          instantiate_args(s)));
      env_.push_back({e.text, nullptr, &s});
      std::string a2 = infer(*e.children[1], out);
      env_.pop_back();
      return a2;
    }
    }
    fail(TYRO_ERR_INTERNAL, "unreachable expression kind");
  }

  std::string literal(const Expr &e, const char *ground,
                      std::vector<Constraint> &out) {
    std::string g = node_var(e);
    emit(out, Constraint::equality(e.index, make_var(g), make_ground(ground)));
    return g;
  }

  FreshSupply supply_;
  std::vector<Binding> env_;
  std::deque<TypeScheme> schemes_;
  std::set<std::string> scheme_names_;
  std::set<std::string> binder_names_;
  int top_bindings_ = 0;
};

} // namespace

InferOutput infer_constraints(const Program &p, const Prelude &builtins) {
  return Infer(builtins).run(p);
}

IrDoc make_ir(const Program &p, const Prelude &builtins) {
  InferOutput inf = infer_constraints(p, builtins);
  IrDoc doc;
  for (const auto &[index, range] : node_ranges(p))
    doc.locations.push_back(LocEntry{index, range, {}});
  doc.schemes = std::move(inf.schemes);
  doc.constraints = std::move(inf.constraints);
  validate(doc);
  return doc;
}

} // namespace tyro
