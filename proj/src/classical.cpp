#include "classical.hpp"

#include <map>
#include <set>

#include "error.hpp"

namespace tyro {

namespace {

// Thrown internally to carry the blamed range to the entry point.
struct Clash {
  SourceRange where;
};

class Classical {
public:
  explicit Classical(const Prelude &builtins) {
    for (const auto &[name, ty] : builtins)
      env_.push_back({name, {}, ty});
  }

  bool run(const Program &p, std::optional<SourceRange> &blame) {
    try {
      for (const auto &it : p.items) {
        if (it.is_binding) {
          TypeRef t = infer(*it.expr);
          env_.push_back({it.name, generalize(t), t});
        } else {
          infer(*it.expr);
        }
      }
      return true;
    } catch (const Clash &c) {
      blame = c.where;
      return false;
    }
  }

private:
  struct Binding {
    std::string name;
    std::vector<std::string> quantified; // empty: monomorphic
    TypeRef type;
  };

  TypeRef fresh() { return make_var("c" + std::to_string(counter_++)); }

  TypeRef resolve(const TypeRef &t) const {
    TypeRef cur = t;
    while (cur->kind == TypeKind::Var) {
      auto it = subst_.find(cur->name);
      if (it == subst_.end()) break;
      cur = it->second;
    }
    return cur;
  }

  TypeRef walk(const TypeRef &t) const {
    TypeRef r = resolve(t);
    if (r->kind == TypeKind::Arrow)
      return make_arrow(walk(r->lhs), walk(r->rhs));
    return r;
  }

  bool occurs(const std::string &v, const TypeRef &t) const {
    TypeRef r = resolve(t);
    if (r->kind == TypeKind::Var) return r->name == v;
    if (r->kind == TypeKind::Arrow)
      return occurs(v, r->lhs) || occurs(v, r->rhs);
    return false;
  }

  bool unify(const TypeRef &a, const TypeRef &b) {
    TypeRef x = resolve(a), y = resolve(b);
    if (x->kind == TypeKind::Var) {
      if (y->kind == TypeKind::Var && y->name == x->name) return true;
      if (occurs(x->name, y)) return false;
      subst_[x->name] = y;
      return true;
    }
    if (y->kind == TypeKind::Var) return unify(y, x);
    if (x->kind != y->kind) return false;
    if (x->kind == TypeKind::Ground) return x->name == y->name;
    return unify(x->lhs, y->lhs) && unify(x->rhs, y->rhs);
  }

  void unify_at(const TypeRef &a, const TypeRef &b, const SourceRange &blame) {
    if (!unify(a, b)) throw Clash{blame};
  }

  std::vector<std::string> generalize(const TypeRef &t) const {
    std::set<std::string> fv;
    free_vars(walk(t), fv);
    std::set<std::string> env_fv;
    for (const auto &b : env_) {
      std::set<std::string> bf;
      free_vars(walk(b.type), bf);
      for (const auto &q : b.quantified) bf.erase(q);
      env_fv.insert(bf.begin(), bf.end());
    }
    std::vector<std::string> out;
    for (const auto &v : fv)
      if (!env_fv.count(v)) out.push_back(v);
    return out;
  }

  TypeRef instantiate(const Binding &b) {
    if (b.quantified.empty()) return b.type;
    std::map<std::string, TypeRef> inst;
    for (const auto &q : b.quantified) inst[q] = fresh();
    return substitute(walk(b.type), inst);
  }

  TypeRef infer(const Expr &e) {
    switch (e.kind) {
    case ExprKind::IntLit:
      return make_ground("int");
    case ExprKind::FloatLit:
      return make_ground("float");
    case ExprKind::StringLit:
      return make_ground("string");
    case ExprKind::BoolLit:
      return make_ground("bool");

    case ExprKind::Var:
      for (auto it = env_.rbegin(); it != env_.rend(); ++it)
        if (it->name == e.text) return instantiate(*it);
      fail(TYRO_ERR_UNBOUND, "unbound variable '" + e.text + "'", e.range);

    case ExprKind::Abs: {
      TypeRef param = fresh();
      env_.push_back({e.text, {}, param});
      TypeRef body = infer(*e.children[0]);
      env_.pop_back();
      return make_arrow(param, body);
    }

    case ExprKind::App: {
      const Expr &fn = *e.children[0];
      const Expr &arg = *e.children[1];
      TypeRef ft = infer(fn);
      TypeRef at = infer(arg);
      TypeRef dom = fresh(), cod = fresh();
      // A non-function head is the head's fault; a mismatched argument
      // is the argument's fault.
      unify_at(ft, make_arrow(dom, cod), fn.range);
      unify_at(dom, at, arg.range);
      return cod;
    }

    case ExprKind::Cond: {
      const Expr &c = *e.children[0];
      const Expr &t = *e.children[1];
      const Expr &f = *e.children[2];
      unify_at(infer(c), make_ground("bool"), c.range);
      TypeRef tt = infer(t);
      TypeRef ft = infer(f);
      // Later-visited branch takes the blame.
      unify_at(tt, ft, f.range);
      return tt;
    }

    case ExprKind::Let: {
      TypeRef bound = infer(*e.children[0]);
      env_.push_back({e.text, generalize(bound), bound});
      TypeRef body = infer(*e.children[1]);
      env_.pop_back();
      return body;
    }
    }
    fail(TYRO_ERR_INTERNAL, "unreachable expression kind");
  }

  std::vector<Binding> env_;
  std::map<std::string, TypeRef> subst_;
  int counter_ = 0;
};

} // namespace

ClassicalResult classical_infer(const Program &p, const Prelude &builtins) {
  ClassicalResult r;
  r.ok = Classical(builtins).run(p, r.blame);
  return r;
}

} // namespace tyro
