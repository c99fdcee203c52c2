#include "doctest.h"

#include "error.hpp"
#include "evalkit.hpp"

using namespace tyro;

namespace {
SourceRange rg(int l1, int c1, int l2, int c2) {
  return {{l1, c1}, {l2, c2}};
}
} // namespace

TEST_CASE("exact range-set equality is a hit") {
  CHECK(classify({rg(3, 4, 3, 9)}, {rg(3, 4, 3, 9)}) == Verdict::Hit);
  // order and duplicates do not matter
  CHECK(classify({rg(1, 0, 1, 2), rg(2, 0, 2, 2), rg(1, 0, 1, 2)},
                 {rg(2, 0, 2, 2), rg(1, 0, 1, 2)}) == Verdict::Hit);
}

TEST_CASE("shared endpoint is close") {
  CHECK(classify({rg(3, 4, 3, 9)}, {rg(3, 9, 3, 12)}) == Verdict::Close);
  CHECK(classify({rg(3, 9, 3, 12)}, {rg(3, 4, 3, 9)}) == Verdict::Close);
}

TEST_CASE("overlap is close") {
  CHECK(classify({rg(1, 0, 1, 8)}, {rg(1, 4, 1, 12)}) == Verdict::Close);
  CHECK(classify({rg(1, 2, 1, 4)}, {rg(1, 0, 1, 10)}) == Verdict::Close);
}

TEST_CASE("subset that is not equal is close, not hit") {
  CHECK(classify({rg(1, 0, 1, 8), rg(2, 0, 2, 3)}, {rg(1, 0, 1, 8)}) ==
        Verdict::Close);
}

TEST_CASE("disjoint ranges miss") {
  CHECK(classify({rg(1, 0, 1, 3)}, {rg(2, 0, 2, 3)}) == Verdict::Miss);
  CHECK(classify({rg(1, 0, 1, 3)}, {rg(1, 4, 1, 8)}) == Verdict::Miss);
}

TEST_CASE("empty inputs are rejected") {
  try {
    classify({}, {rg(1, 0, 1, 1)});
    FAIL("expected empty-input");
  } catch (const Error &e) {
    CHECK(e.code == TYRO_ERR_EMPTY_INPUT);
  }
  CHECK_THROWS_AS(classify({rg(1, 0, 1, 1)}, {}), Error);
}

TEST_CASE("outcome table accumulates and renders a 3x3 grid") {
  OutcomeTable t;
  t.add(Verdict::Hit, Verdict::Hit);
  t.add(Verdict::Hit, Verdict::Miss);
  t.add(Verdict::Close, Verdict::Close);
  t.add(Verdict::Miss, Verdict::Hit);
  t.add(Verdict::Miss, Verdict::Hit);
  CHECK(t.total() == 5);
  CHECK(t.counts[0][2] == 1);
  CHECK(t.counts[2][0] == 2);
  std::string r = t.render("ours", "theirs");
  CHECK(r.find("ours") != std::string::npos);
  CHECK(r.find("hit") != std::string::npos);
  CHECK(r.find("close") != std::string::npos);
  CHECK(r.find("miss") != std::string::npos);
  // three body rows under the header
  CHECK(std::count(r.begin(), r.end(), '\n') == 4);
}
