#pragma once

#include "sdf/lifting.hpp"

#include <optional>

namespace sdf {

// Functions on [X] = {1..X} are passed as vectors with f[x - 1].

// Sum over |S| = d and a mod prod_S q (no q in S divides a) of
// |sum_x f(x) e(-(a / prod_S q + offset) x)|^2, by direct summation.
double level_d_energy(const std::vector<Complex>& f, const ModulusSet& q, int d, double offset = 0.0);

// Same quantity as X^2 ||W_d Psi f||_2^2 for the lift of f e(-offset x) to G_Q.
double level_d_energy_lifted(const std::vector<Complex>& f, const ModulusSet& q, int d, double offset = 0.0);

enum class DichotomyClause { EnergyBound, DenseClass, BothFailed };
std::string_view to_string(DichotomyClause clause);

struct DenseClassWitness {
  std::vector<std::int64_t> subset;  // empty means the whole of [X]
  std::int64_t residue = 0;          // modulo prod_S q
  std::int64_t class_size = 0;
  double density = 0;                // average of |f| over the class
  double threshold = 0;              // lambda^{|S|} alpha
};

struct DichotomyOptions {
  double lambda = 2.0;
  Regime regime = Regime::Strict;
  double offset = 0.0;
};

struct DichotomyVerdict {
  DichotomyClause clause = DichotomyClause::BothFailed;
  double energy = 0;
  double bound = 0;
  std::optional<DenseClassWitness> witness;
  bool in_regime = true;
  std::vector<std::string> violated;
};

// Decides which alternative of the level-d dichotomy holds for |f| <= 1.
// The dense-class search runs over 0 <= |S| <= 2 log(1/alpha); the empty
// set stands for the mean of |f| on [X] exceeding alpha.
DichotomyVerdict level_d_dichotomy(const std::vector<Complex>& f, const ModulusSet& q, double alpha, int d,
                                   const DichotomyOptions& options = {});

// rho bound min(r^{-(p-2)/p} / p, p^{-1/2}) / (3 sqrt 2).
double rho_limit(double r, int p);

struct NoiseSchedule {
  int m = 0;
  int p = 0;
  double rho = 0;
};
// m = ceil(r^{-2}), p = 2m, rho = m^{-1/2} / 20.
NoiseSchedule standard_schedule(double r);

struct HypercontractivityReport {
  double lhs = 0;  // ||T_rho f||_p^p
  double rhs = 0;  // ||f||_2^2 gamma^{p-2}
  double rho_max = 0;
  bool pass = false;
};

// Checks globalness first (NotGlobal) and the rho condition (RhoTooLarge).
HypercontractivityReport hypercontractivity_verify(const GroupFunction& f, double r, double gamma, int p, double rho,
                                                   const GlobalnessCaps& caps = {});

}  // namespace sdf
