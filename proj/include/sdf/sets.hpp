#pragma once

#include "sdf/common.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sdf {

// A finite set of non-negative integers inside [0, universe].
class IntegerSet {
 public:
  IntegerSet() = default;
  // Sorts and deduplicates; throws OutOfUniverse on elements outside [0, universe].
  IntegerSet(std::vector<std::int64_t> elements, std::int64_t universe);

  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::int64_t universe() const { return universe_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::int64_t x) const;
  // Membership table of length universe + 1.
  std::vector<char> indicator() const;

  bool operator==(const IntegerSet&) const = default;

 private:
  std::vector<std::int64_t> elements_;
  std::int64_t universe_ = 0;
};

// {start, start + step, ..., start + (length - 1) step}.
struct Progression {
  std::int64_t start = 1;
  std::int64_t step = 1;
  std::int64_t length = 1;

  std::int64_t at(std::int64_t i) const { return start + i * step; }
  std::int64_t last() const { return start + (length - 1) * step; }
  bool contains(std::int64_t x) const;
  bool operator==(const Progression&) const = default;
};

// Throws EmptyProgression / OutOfUniverse unless P is a non-empty progression in [0, X].
void validate_progression(const Progression& p, std::int64_t universe);

struct SquareDifference {
  std::int64_t larger;
  std::int64_t smaller;
  std::int64_t root;
};

std::optional<SquareDifference> find_square_difference(const IntegerSet& a);
inline bool is_square_difference_free(const IntegerSet& a) { return !find_square_difference(a); }

// Greedy square-difference-free set scanning start, start + 1, ..., limit.
IntegerSet greedy_sequence(std::int64_t limit, std::int64_t start = 0);

struct ExactOptions {
  std::int64_t cap = 200;
};

struct ExactResult {
  std::int64_t size = 0;
  IntegerSet witness;  // lexicographically smallest maximum set
  std::vector<std::int64_t> table;  // table[n] = s(n) for 0 <= n <= X
};

// Maximum square-difference-free subset of {1, ..., X}.
ExactResult max_sdf_exact(std::int64_t x, const ExactOptions& options = {});

Rational density_on_progression(const IntegerSet& a, const Progression& p);

}  // namespace sdf
