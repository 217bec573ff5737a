#include "oracles.hpp"
#include "sdf/sets.hpp"

#include <doctest.h>

using namespace sdf;

TEST_CASE("square difference detection") {
  auto sq = find_square_difference(IntegerSet({1, 2}, 2));
  REQUIRE(sq);
  CHECK(sq->larger == 2);
  CHECK(sq->smaller == 1);
  CHECK(sq->root == 1);
  CHECK(is_square_difference_free(IntegerSet({0, 2, 5, 7, 10, 12, 15, 17, 20}, 20)));
  CHECK(is_square_difference_free(IntegerSet({1, 3}, 3)));
  CHECK(is_square_difference_free(IntegerSet({}, 5)));
  CHECK_FALSE(is_square_difference_free(IntegerSet({3, 12}, 12)));
}

TEST_CASE("integer sets validate their universe") {
  CHECK_THROWS_AS(IntegerSet({1, 9}, 8), Error);
  CHECK_THROWS_AS(IntegerSet({-1}, 8), Error);
  IntegerSet a({5, 1, 5, 3}, 10);
  CHECK(a.elements() == std::vector<std::int64_t>{1, 3, 5});
  CHECK(a.contains(3));
  CHECK_FALSE(a.contains(4));
}

TEST_CASE("greedy sequence") {
  CHECK(greedy_sequence(20).elements() == std::vector<std::int64_t>{0, 2, 5, 7, 10, 12, 15, 17, 20});
  CHECK(greedy_sequence(0).elements() == std::vector<std::int64_t>{0});
  CHECK(greedy_sequence(100).elements() == oracle::greedy(100));
  // Prefix stability.
  const auto long_run = greedy_sequence(3000).elements();
  const auto short_run = greedy_sequence(1000).elements();
  std::vector<std::int64_t> prefix;
  for (auto e : long_run)
    if (e <= 1000) prefix.push_back(e);
  CHECK(prefix == short_run);
  CHECK(is_square_difference_free(greedy_sequence(2000, 1)));
}

TEST_CASE("exact maximum on small X") {
  CHECK(max_sdf_exact(1).size == 1);
  CHECK(max_sdf_exact(1).witness.elements() == std::vector<std::int64_t>{1});
  CHECK(max_sdf_exact(2).witness.elements() == std::vector<std::int64_t>{1});
  CHECK(max_sdf_exact(3).witness.elements() == std::vector<std::int64_t>{1, 3});
  for (int x = 1; x <= 16; ++x) {
    const auto r = max_sdf_exact(x);
    CHECK(r.size == oracle::max_sdf_bruteforce(x));
    CHECK(static_cast<std::int64_t>(r.witness.size()) == r.size);
    CHECK(is_square_difference_free(r.witness));
  }
}

TEST_CASE("exact table is monotone and bounded") {
  const auto r = max_sdf_exact(60);
  REQUIRE(r.table.size() == 61);
  for (std::size_t n = 1; n < r.table.size(); ++n) {
    CHECK(r.table[n] >= r.table[n - 1]);
    CHECK(r.table[n] <= static_cast<std::int64_t>(n));
    CHECK(r.table[n] <= r.table[n - 1] + 1);
  }
  CHECK(r.table[60] == r.size);
  for (auto e : r.witness.elements()) CHECK((e >= 1 && e <= 60));
}

TEST_CASE("exact solver cap") {
  CHECK_THROWS_AS(max_sdf_exact(201), Error);
  CHECK_THROWS_AS(max_sdf_exact(0), Error);
  CHECK(max_sdf_exact(30, {30}).size == 10);
}

TEST_CASE("density on progressions") {
  std::vector<std::int64_t> evens;
  for (int i = 2; i <= 10; i += 2) evens.push_back(i);
  CHECK(density_on_progression(IntegerSet(evens, 10), {1, 1, 10}) == Rational(1, 2));
  const IntegerSet g({0, 2, 5, 7, 10, 12, 15, 17, 20}, 20);
  // 0, 5, 10, 15, 20 all belong to the greedy set.
  CHECK(density_on_progression(g, {0, 5, 5}) == Rational(1));
  CHECK(density_on_progression(g, {0, 1, 5}) == Rational(2, 5));
  CHECK(density_on_progression(g, {7, 3, 1}) == Rational(1));
  CHECK_THROWS_AS(density_on_progression(g, {1, 1, 0}), Error);
  CHECK_THROWS_AS(density_on_progression(g, {1, 10, 3}), Error);
}
