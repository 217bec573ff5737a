#pragma once

#include "sdf/group.hpp"

#include <variant>

namespace sdf {

// Fourier multipliers on G_Q. Subsets are given as moduli drawn from Q.
struct Average {
  std::vector<std::int64_t> subset;
};
struct Laplacian {
  std::vector<std::int64_t> subset;
};
struct Level {
  int d = 0;
};
struct Noise {
  double rho = 1.0;
};
using MultiplierSpec = std::variant<Average, Laplacian, Level, Noise>;

// Weight of the multiplier at a frequency with the given support mask.
double multiplier_weight(const MultiplierSpec& spec, const ModulusSet& q, std::uint32_t support);
GroupFunction apply_multiplier(const MultiplierSpec& spec, const GroupFunction& f);

// E_S computed in physical space: average over the S coordinates with the
// others held fixed.
GroupFunction average_over(const std::vector<std::int64_t>& subset, const GroupFunction& f);

// Fixes the coordinates of the axes in `subset` to `point` (ordered like the
// subset sorted ascending) and returns the function of the remaining axes.
GroupFunction specialize(const GroupFunction& f, const std::vector<std::int64_t>& subset,
                         const std::vector<std::int64_t>& point);

// D_{S,x} f = specialization of L_S f at x.
GroupFunction derivative(const std::vector<std::int64_t>& subset, const std::vector<std::int64_t>& point,
                         const GroupFunction& f);

struct GlobalnessParams {
  double r = 0;
  double gamma = 0;
};

inline constexpr double kC0 = 4096.0;

// r_d(alpha) = (d / log(1/alpha))^{1/2}, gamma_d(alpha) = (C0 log(1/alpha) / d)^{d/2} alpha.
GlobalnessParams global_params(double alpha, int d);

struct GlobalnessWitness {
  std::vector<std::int64_t> subset;
  std::vector<std::int64_t> point;
  double norm = 0;
  double bound = 0;
};

struct GlobalnessReport {
  bool global = true;
  GlobalnessWitness worst;  // the (S, x) maximizing norm - bound
  std::size_t checked = 0;
};

struct GlobalnessCaps {
  std::int64_t max_order = 10'000;
  std::size_t max_moduli = 6;
};

GlobalnessReport globalness_check(const GroupFunction& f, double r, double gamma, const GlobalnessCaps& caps = {});

// Smallest gamma making f (r, gamma)-derivative-global, for r > 0.
double fitted_gamma(const GroupFunction& f, double r, const GlobalnessCaps& caps = {});

}  // namespace sdf
