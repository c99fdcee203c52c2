#pragma once

#include <compare>
#include <cstdio>
#include <string>

namespace tyro {

// A half-open interval of source text. Lines are 1-based, columns 0-based;
// the end position is exclusive.
struct SourcePos {
  int line = 1;
  int col = 0;
  auto operator<=>(const SourcePos &) const = default;
};

struct SourceRange {
  SourcePos start;
  SourcePos end;

  bool operator==(const SourceRange &) const = default;

  bool contains(const SourceRange &o) const {
    return start <= o.start && o.end <= end;
  }
  bool strictly_contains(const SourceRange &o) const {
    return contains(o) && *this != o;
  }
  bool disjoint(const SourceRange &o) const {
    return end <= o.start || o.end <= start;
  }
  bool overlaps(const SourceRange &o) const {
    return start < o.end && o.start < end;
  }

  std::string str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d;%d-%d;%d", start.line, start.col,
                  end.line, end.col);
    return buf;
  }
};

} // namespace tyro
