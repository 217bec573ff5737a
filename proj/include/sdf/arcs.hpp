#pragma once

#include "sdf/circle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdf {

struct Arc {
  std::int64_t a = 0;
  std::int64_t q = 1;
};

// Union of the intervals |theta - a/q| <= tau over gcd(a, q) = 1,
// q <= C1 alpha^{-2}, with tau = C1 log(1/alpha)^2 / X.
class ArcDecomposition {
 public:
  ArcDecomposition(double alpha, std::int64_t big_x, double c1);

  double alpha() const { return alpha_; }
  std::int64_t x() const { return x_; }
  double c1() const { return c1_; }
  double tau() const { return tau_; }
  std::int64_t max_denominator() const { return q_max_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Arcs overlap once 2 tau reaches the smallest gap 1/(Q(Q-1)) between centres.
  bool overlapping() const { return overlapping_; }

  bool contains(double theta) const { return locate(theta).has_value(); }
  // Arc with the smallest denominator containing theta (mod 1).
  std::optional<Arc> locate(double theta) const;

 private:
  double alpha_;
  std::int64_t x_;
  double c1_;
  double tau_;
  std::int64_t q_max_;
  bool overlapping_;
  std::vector<Arc> arcs_;
};

inline ArcDecomposition arcs_build(double alpha, std::int64_t big_x, double c1) {
  return ArcDecomposition(alpha, big_x, c1);
}

struct MinorArcReport {
  double sup = 0;           // largest |g^| seen on the minor-arc grid
  double sup_theta = 0;
  double bound = 0;         // 2^{-9} alpha X
  double ratio = 0;         // sup / (alpha X)
  double spacing = 0;
  std::size_t samples = 0;  // minor-arc grid points evaluated
  bool overlapping = false;
  bool pass = false;
};

// Samples [0, 1/2] (g^ is even) at spacing tau / grid_density, skipping
// major arcs. grid_density must be >= 4.
MinorArcReport minor_arc_sup(double alpha, std::int64_t big_x, double c1, double grid_density = 4.0);

struct MajorArcReport {
  double value = 0;     // |g^(a/q + theta)|
  double envelope = 0;  // X q^{-1/2} e^{-sqrt|theta X|} + X^{3/4}
  double ratio = 0;
  bool in_regime = true;
  std::vector<std::string> violated;
};

MajorArcReport major_arc_bound_check(std::int64_t a, std::int64_t q, double theta, std::int64_t big_x,
                                     Regime regime = Regime::Strict);

// (X/q) Re(half transform of w at theta X times the Gauss sum): the leading
// term of g^(a/q + theta) on a major arc.
double major_arc_main_term(std::int64_t a, std::int64_t q, double theta, std::int64_t big_x);

}  // namespace sdf
