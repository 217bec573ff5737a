#pragma once

#include "sdf/operators.hpp"
#include "sdf/sets.hpp"

#include <string>

namespace sdf {

// Lift of f (given at the points of P in order) to G_Q: the value
// |G_Q| / |P| * f(x) sits at pi_Q(x) for x in P and zero elsewhere.
// `universe` is X with P inside [X]; requires prod Q >= X and the step
// coprime to every modulus.
GroupFunction lift(const Progression& p, std::int64_t universe, const ModulusSet& q,
                   const std::vector<Complex>& values);

// E_{x in P} f(x) e(-xi x) with xi = sum_q residues[q] / q, by direct summation.
Complex progression_coefficient(const Progression& p, const ModulusSet& q, const std::vector<Complex>& values,
                                const Frequency& xi);

// The commuting square relating lift, averaging, specialization and restriction.
struct ResidualConfig {
  Progression progression;
  std::int64_t universe = 0;
  ModulusSet moduli;
  std::vector<std::int64_t> s;      // S, a subset of Q
  std::vector<std::int64_t> t;      // T, a subset of S
  std::vector<std::int64_t> point;  // a in G_S, one residue per modulus of S in ascending order
  Regime regime = Regime::Strict;
};

struct ResidualReport {
  double eta = 0;
  double eta_bound = 0;      // X^{-1/2}
  double max_mismatch = 0;   // max |path1 - (1 + eta) path2| relative to max |path2|
  Progression restricted;    // P'
  std::string basis;         // "delta" or "random-probe"
  bool within_bound = false;
  bool in_regime = true;
  std::vector<std::string> violated;
};

ResidualReport restriction_residual(const ResidualConfig& config);

struct MomentComparison {
  double lhs = 0;    // E_Gamma |W_d g|^{2m}
  double rhs = 0;    // E_G |W_d g|^{2m} + alpha^{2m} X^{-1/4}
  double slack = 0;  // alpha^{2m} X^{-1/4}
  double alpha = 0;  // E_P |f|
  bool pass = false;
  bool in_regime = true;
  std::vector<std::string> violated;
};

MomentComparison lem32_compare(const Progression& p, std::int64_t universe, const ModulusSet& q,
                               const std::vector<Complex>& values, int d, int m, Regime regime = Regime::Strict);

}  // namespace sdf
