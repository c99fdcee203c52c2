#pragma once

// Deterministic random program generator over the ML fragment, used by
// the property suites. Two modes: unconstrained (may or may not type
// check) and type-directed (well-typed by construction).

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gen {

// Built-ins assumed by generated programs; matches gen_prelude().
inline const char *prelude_text() {
  return "not : bool -> bool\n"
         "succ : int -> int\n"
         "plus : int -> int -> int\n"
         "cat : string -> string -> string\n"
         "len : string -> int\n"
         "even : int -> bool\n";
}

struct Builtin {
  const char *name;
  std::vector<const char *> params; // ground parameter types
  const char *result;
};

inline const std::vector<Builtin> &builtins() {
  static const std::vector<Builtin> v = {
      {"not", {"bool"}, "bool"},   {"succ", {"int"}, "int"},
      {"plus", {"int", "int"}, "int"}, {"cat", {"string", "string"}, "string"},
      {"len", {"string"}, "int"},  {"even", {"int"}, "bool"},
  };
  return v;
}

class Gen {
public:
  Gen(unsigned seed, int budget, bool well_typed)
      : rng_(seed), budget_(budget), well_typed_(well_typed) {}

  std::string program() {
    std::ostringstream out;
    int items = 1 + (int)(rng_() % 2);
    for (int i = 0; i < items && budget_ > 0; i++) {
      if (i + 1 < items && budget_ > 3 && chance(2)) {
        std::string name = fresh_binder();
        std::string ty = random_ground();
        out << "let " << name << " = " << expr(ty, 0) << ";;\n";
        env_.push_back({name, ty});
      } else {
        out << expr(random_ground(), 0);
        out << (i + 1 < items ? ";;\n" : "\n");
      }
    }
    return out.str();
  }

private:
  struct Var {
    std::string name;
    std::string type; // ground type name
  };

  bool chance(int one_in) { return rng_() % (unsigned)one_in == 0; }

  std::string fresh_binder() { return "v" + std::to_string(binders_++); }

  std::string random_ground() {
    static const char *g[] = {"int", "bool", "string"};
    return g[rng_() % 3];
  }

  std::string literal(const std::string &ty) {
    // In unconstrained mode the literal may ignore the requested type.
    std::string t = well_typed_ ? ty : random_ground();
    if (t == "int") return std::to_string(rng_() % 100);
    if (t == "bool") return chance(2) ? "true" : "false";
    static const char *strs[] = {"\"hi\"", "\"a\"", "\"xyz\"", "\"\""};
    return strs[rng_() % 4];
  }

  // Expression of the requested ground type (honored only when
  // well_typed_); each grammar production costs one location.
  std::string expr(const std::string &ty, int depth) {
    budget_--;
    if (budget_ <= 0 || depth > 5) return leaf(ty);
    switch (rng_() % 8) {
    case 0:
    case 1:
      return leaf(ty);
    case 2: { // if
      if (budget_ < 3) return leaf(ty);
      std::string c = expr("bool", depth + 1);
      std::string a = expr(ty, depth + 1);
      std::string b = expr(well_typed_ ? ty : random_ground(), depth + 1);
      return "(if " + c + " then " + a + " else " + b + ")";
    }
    case 3: { // let-in
      if (budget_ < 3) return leaf(ty);
      std::string name = fresh_binder();
      std::string bty = random_ground();
      std::string bound = expr(bty, depth + 1);
      env_.push_back({name, bty});
      std::string body = expr(ty, depth + 1);
      env_.pop_back();
      return "(let " + name + " = " + bound + " in " + body + ")";
    }
    case 4: { // fun applied to an argument: (fun x -> body) arg
      if (budget_ < 3) return leaf(ty);
      std::string name = fresh_binder();
      std::string aty = random_ground();
      env_.push_back({name, aty});
      std::string body = expr(ty, depth + 1);
      env_.pop_back();
      std::string arg = expr(aty, depth + 1);
      return "((fun " + name + " -> " + body + ") " + arg + ")";
    }
    default: { // built-in application
      std::vector<const Builtin *> fit;
      for (const auto &b : builtins())
        if (!well_typed_ || b.result == ty) fit.push_back(&b);
      if (fit.empty() || budget_ < (int)fit[0]->params.size())
        return leaf(ty);
      const Builtin *b = fit[rng_() % fit.size()];
      std::string s = "(" + std::string(b->name);
      for (const auto *p : b->params) s += " " + expr(p, depth + 1);
      return s + ")";
    }
    }
  }

  std::string leaf(const std::string &ty) {
    if (!env_.empty() && chance(3)) {
      // Prefer a variable of the right type when well-typed.
      std::vector<const Var *> fit;
      for (const auto &v : env_)
        if (!well_typed_ || v.type == ty) fit.push_back(&v);
      if (!fit.empty()) return fit[rng_() % fit.size()]->name;
    }
    return literal(ty);
  }

  std::mt19937 rng_;
  int budget_;
  bool well_typed_;
  int binders_ = 0;
  std::vector<Var> env_;
};

inline std::string program(unsigned seed, int budget, bool well_typed) {
  return Gen(seed, budget, well_typed).program();
}

} // namespace gen
