#include "sdf/sets.hpp"

#include <algorithm>

namespace sdf {

IntegerSet::IntegerSet(std::vector<std::int64_t> elements, std::int64_t universe)
    : elements_(std::move(elements)), universe_(universe) {
  if (universe < 0) throw Error(ErrorKind::OutOfUniverse, "negative universe");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty() && (elements_.front() < 0 || elements_.back() > universe))
    throw Error(ErrorKind::OutOfUniverse, "element outside [0, " + std::to_string(universe) + "]");
}

bool IntegerSet::contains(std::int64_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::vector<char> IntegerSet::indicator() const {
  std::vector<char> out(static_cast<std::size_t>(universe_) + 1, 0);
  for (auto e : elements_) out[static_cast<std::size_t>(e)] = 1;
  return out;
}

bool Progression::contains(std::int64_t x) const {
  if (x < start || x > last()) return false;
  return (x - start) % step == 0;
}

void validate_progression(const Progression& p, std::int64_t universe) {
  if (p.length < 1) throw Error(ErrorKind::EmptyProgression, "progression has length 0");
  if (p.step < 1) throw Error(ErrorKind::InvalidArgument, "progression step must be >= 1");
  if (p.start < 0 || p.last() > universe)
    throw Error(ErrorKind::OutOfUniverse, "progression leaves [0, " + std::to_string(universe) + "]");
}

std::optional<SquareDifference> find_square_difference(const IntegerSet& a) {
  const auto& el = a.elements();
  if (el.size() < 2) return std::nullopt;
  const std::int64_t span = el.back() - el.front();
  // Dense sets: walk square offsets. Sparse sets: walk pairs.
  const auto roots = isqrt(span);
  if (static_cast<double>(el.size()) * static_cast<double>(roots) <=
      0.5 * static_cast<double>(el.size()) * static_cast<double>(el.size())) {
    for (auto y : el)
      for (std::int64_t t = 1; t <= roots; ++t)
        if (a.contains(y + t * t)) return SquareDifference{y + t * t, y, t};
    return std::nullopt;
  }
  for (std::size_t j = 1; j < el.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::int64_t d = el[j] - el[i];
      if (is_perfect_square(d)) return SquareDifference{el[j], el[i], isqrt(d)};
    }
  return std::nullopt;
}

IntegerSet greedy_sequence(std::int64_t limit, std::int64_t start) {
  if (limit < 0 || start < 0) throw Error(ErrorKind::InvalidArgument, "limit and start must be >= 0");
  std::vector<char> chosen(static_cast<std::size_t>(std::max(limit, start)) + 1, 0);
  std::vector<std::int64_t> out;
  for (std::int64_t x = start; x <= limit; ++x) {
    bool ok = true;
    for (std::int64_t t = 1; t * t <= x - start; ++t)
      if (chosen[static_cast<std::size_t>(x - t * t)]) {
        ok = false;
        break;
      }
    if (ok) {
      chosen[static_cast<std::size_t>(x)] = 1;
      out.push_back(x);
    }
  }
  return IntegerSet(std::move(out), std::max(limit, start));
}

Rational density_on_progression(const IntegerSet& a, const Progression& p) {
  validate_progression(p, a.universe());
  std::int64_t hits = 0;
  const auto& el = a.elements();
  if (static_cast<std::int64_t>(el.size()) < p.length) {
    for (auto e : el) hits += p.contains(e) ? 1 : 0;
  } else {
    for (std::int64_t i = 0; i < p.length; ++i) hits += a.contains(p.at(i)) ? 1 : 0;
  }
  return Rational(hits, p.length);
}

}  // namespace sdf
