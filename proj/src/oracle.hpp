#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "encode.hpp"
#include "infer.hpp"
#include "types.hpp"

namespace tyro {

// A location is active iff it and all of its ancestors are kept.
struct ActiveSet {
  const LocForest *forest = nullptr;
  std::set<int> removed;

  bool active(int loc) const {
    for (int n = loc;;) {
      if (removed.count(n)) return false;
      auto it = forest->parent.find(n);
      if (it == forest->parent.end()) return true;
      n = it->second;
    }
  }
};

// Replaces every active instantiation constraint by a freshened copy of
// its scheme's active body constraints; inactive constraints are dropped,
// including inside scheme bodies.
std::vector<Constraint> expand(const IrDoc &doc, const ActiveSet &active);

struct UnifyResult {
  bool ok = false;
  std::map<std::string, TypeRef> witness; // on success
  int clash_loc = -1;                     // on failure
};

// First-order unification with occurs check, in list order; failure
// reports the offending constraint's location.
UnifyResult satisfiable(const std::vector<Constraint> &equalities);

struct MinSources {
  int min_weight = 0;
  std::vector<std::set<int>> sources; // deterministic order
};

// Enumerates removal sets (ancestor-maximal, no hard locations) in
// nondecreasing total weight and returns every satisfying set of minimum
// weight. Guarded: throws TooLarge above `max_locations` locations.
MinSources brute_force_min_sources(const IrDoc &doc, int max_locations = 20);

} // namespace tyro
