#pragma once

#include <map>
#include <string>
#include <vector>

#include "types.hpp"

namespace tyro {

// Parent/child structure recovered from location intervals by containment.
// parent(i) is the minimal strictly containing interval; roots have no
// parent and correspond to top-level items.
struct LocForest {
  std::vector<int> indices;          // in ascending index order
  std::map<int, int> parent;         // absent for roots
  std::map<int, std::vector<int>> children; // ordered by range start
  std::map<int, int> weight;
  std::vector<int> roots;

  bool is_hard(int i) const { return weight.at(i) == 0; }
  // Ancestor chain from the root down to and including i.
  std::vector<int> chain(int i) const;
  bool is_ancestor(int anc, int i) const;
};

// Throws MalformedLocations when two ranges partially overlap or coincide.
LocForest build_forest(const std::vector<LocEntry> &locations);

// Declared weights are used verbatim (0 = hard); every other location
// gets the size of the subtree rooted at it.
void assign_weights(LocForest &f, const std::map<int, int> &declared);

// Convenience: forest with weights from the document's location entries,
// with `hard` forcing the listed indices to weight 0.
LocForest weighted_forest(const IrDoc &doc, const std::vector<int> &hard = {});

enum class Encoding { Deep, Flat };

// Translates a document into an SMT-LIB 2.6 script using the MaxSMT
// assert-soft extension. Deterministic: identical input gives identical
// output text.
std::string encode(const IrDoc &doc, const LocForest &forest, Encoding enc);

// Decision-checking variant: location Booleans are fixed (false for
// members of `removed`, true otherwise) with plain asserts and no
// objective, closing with a bare (check-sat).
std::string encode_fixed(const IrDoc &doc, const LocForest &forest,
                         Encoding enc, const std::vector<int> &removed);

} // namespace tyro
