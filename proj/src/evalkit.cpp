#include "evalkit.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace tyro {

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Hit: return "hit";
  case Verdict::Close: return "close";
  case Verdict::Miss: return "miss";
  }
  return "?";
}

namespace {

bool range_set_equal(std::vector<SourceRange> a, std::vector<SourceRange> b) {
  auto lt = [](const SourceRange &x, const SourceRange &y) {
    return std::tie(x.start, x.end) < std::tie(y.start, y.end);
  };
  std::sort(a.begin(), a.end(), lt);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end(), lt);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

bool shares_endpoint(const SourceRange &a, const SourceRange &b) {
  return a.start == b.start || a.start == b.end || a.end == b.start ||
         a.end == b.end;
}

} // namespace

Verdict classify(const std::vector<SourceRange> &reported,
                 const std::vector<SourceRange> &truth) {
  if (reported.empty() || truth.empty())
    fail(TYRO_ERR_EMPTY_INPUT, "classify() requires non-empty range sets");
  if (range_set_equal(reported, truth)) return Verdict::Hit;
  for (const auto &r : reported)
    for (const auto &t : truth)
      if (r.overlaps(t) || shares_endpoint(r, t)) return Verdict::Close;
  return Verdict::Miss;
}

int OutcomeTable::total() const {
  int n = 0;
  for (const auto &row : counts)
    for (int c : row) n += c;
  return n;
}

std::string OutcomeTable::render(const std::string &tool_a,
                                 const std::string &tool_b) const {
  std::ostringstream os;
  os << tool_a << " \\ " << tool_b << "   hit  close   miss\n";
  const char *names[3] = {"hit", "close", "miss"};
  for (size_t i = 0; i < 3; i++) {
    os << names[i];
    for (size_t p = std::string(names[i]).size(); p < 12; p++) os << ' ';
    for (size_t j = 0; j < 3; j++) {
      std::string v = std::to_string(counts[i][j]);
      for (size_t p = v.size(); p < 7; p++) os << ' ';
      os << v;
    }
    os << '\n';
  }
  return os.str();
}

} // namespace tyro
