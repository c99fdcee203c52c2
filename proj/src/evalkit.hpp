#pragma once

#include <array>
#include <string>
#include <vector>

#include "source_range.hpp"

namespace tyro {

enum class Verdict { Hit = 0, Close = 1, Miss = 2 };

const char *verdict_name(Verdict v);

// hit: the two range sets are equal; close: some reported range overlaps
// or shares an endpoint with some truth range; miss: neither. Both sets
// must be non-empty.
Verdict classify(const std::vector<SourceRange> &reported,
                 const std::vector<SourceRange> &truth);

// 3x3 outcome table; rows are tool A's verdict, columns tool B's.
struct OutcomeTable {
  std::array<std::array<int, 3>, 3> counts{};

  void add(Verdict a, Verdict b) { counts[(size_t)a][(size_t)b]++; }
  int total() const;
  std::string render(const std::string &tool_a,
                     const std::string &tool_b) const;
};

} // namespace tyro
