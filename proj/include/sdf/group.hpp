#pragma once

#include "sdf/common.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace sdf {

using Complex = std::complex<double>;

// Pairwise coprime moduli, kept sorted ascending. The empty set describes
// the trivial group with one point.
class ModulusSet {
 public:
  ModulusSet() = default;
  explicit ModulusSet(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t size() const { return moduli_.size(); }
  bool empty() const { return moduli_.empty(); }
  std::int64_t operator[](std::size_t axis) const { return moduli_[axis]; }

  // |G_Q|; throws CapExceeded if the product leaves int64.
  std::int64_t order() const;
  double log_order() const;
  std::int64_t max_modulus() const;

  bool contains(std::int64_t q) const;
  // Axis of q; throws UnknownModulus.
  std::size_t axis_of(std::int64_t q) const;
  // Bitmask of the axes holding the given moduli; throws UnknownModulus.
  std::uint32_t mask_of(const std::vector<std::int64_t>& subset) const;
  std::vector<std::int64_t> subset_of(std::uint32_t mask) const;
  ModulusSet restrict_to(std::uint32_t mask) const;

  // Row-major CRT layout, last axis fastest.
  std::int64_t stride(std::size_t axis) const;
  std::vector<std::int64_t> coordinates(std::int64_t index) const;
  std::int64_t index(const std::vector<std::int64_t>& coords) const;
  // Index of pi_Q(x) for an integer x.
  std::int64_t index_of_integer(std::int64_t x) const;

  bool operator==(const ModulusSet&) const = default;

 private:
  std::vector<std::int64_t> moduli_;
};

// Frequency in the dual group: one residue per axis, zero meaning absent.
struct Frequency {
  std::vector<std::int64_t> residues;

  std::uint32_t support_mask() const;
  int weight() const;  // |xi|
};

// Dense array of values on G_Q in row-major CRT order. Dense storage is
// capped at kDenseCap points.
class GroupFunction {
 public:
  static constexpr std::int64_t kDenseCap = 10'000'000;

  GroupFunction() = default;
  GroupFunction(ModulusSet q, Eigen::VectorXcd values);
  static GroupFunction zeros(const ModulusSet& q);
  static GroupFunction constant(const ModulusSet& q, Complex value);
  static GroupFunction from_callable(const ModulusSet& q,
                                     const std::function<Complex(const std::vector<std::int64_t>&)>& fn);

  const ModulusSet& modulus_set() const { return q_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Complex operator[](Eigen::Index i) const { return values_[i]; }
  Complex at(const std::vector<std::int64_t>& coords) const { return values_[q_.index(coords)]; }

 private:
  ModulusSet q_;
  Eigen::VectorXcd values_;
};

enum class Direction { Forward, Inverse };

// Forward: f^(xi) = E_x f(x) e(-xi.x). Inverse: f(x) = sum_xi c(xi) e(xi.x).
// Coefficients share the CRT layout with one residue per axis.
Eigen::VectorXcd dft(const ModulusSet& q, const Eigen::VectorXcd& values, Direction direction);
inline Eigen::VectorXcd dft(const GroupFunction& f) {
  return dft(f.modulus_set(), f.values(), Direction::Forward);
}
GroupFunction inverse_dft(const ModulusSet& q, const Eigen::VectorXcd& coefficients);

// Support mask of every frequency, indexed like the coefficient vector.
std::vector<std::uint32_t> support_masks(const ModulusSet& q);

// (E |f|^2)^{1/2} and E |f|^p under the uniform probability measure.
double l2_norm(const GroupFunction& f);
double moment(const GroupFunction& f, double p);
Complex mean(const GroupFunction& f);

// e(t) = exp(2 pi i t) with t reduced mod 1 in long double first.
Complex unit_phase(long double t);

}  // namespace sdf
