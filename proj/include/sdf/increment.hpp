#pragma once

#include "sdf/arcs.hpp"
#include "sdf/sets.hpp"

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace sdf {

// f_A = 1_A - alpha 1_[X] on [X] = {1..X}, alpha = |A| / X exactly.
class BalancedFunction {
 public:
  BalancedFunction(IntegerSet a, std::int64_t big_x);

  const IntegerSet& set() const { return a_; }
  std::int64_t x() const { return x_; }
  const Rational& alpha() const { return alpha_; }
  double alpha_value() const { return to_double(alpha_); }
  Rational value(std::int64_t n) const;
  Rational sum() const;
  // sum_{n in [X]} f_A(n) e(-theta n).
  std::complex<double> fourier(double theta) const;
  // S_b = sum_{n = b mod q} e(-xi n) f_A(n) for b = 0..q-1.
  std::vector<std::complex<double>> residue_sums(std::int64_t q, double xi) const;

 private:
  IntegerSet a_;
  std::int64_t x_;
  Rational alpha_;
  std::vector<char> member_;
};

inline BalancedFunction balanced_function(const IntegerSet& a, std::int64_t big_x) {
  return BalancedFunction(a, big_x);
}

// sum_{x, y in A} g_{X,square}(x - y), summed over square offsets.
double weighted_square_count(const IntegerSet& a, std::int64_t big_x);

enum class IncrementClause { Star, C1, C2, C3, C4, Unclassified };
std::string_view to_string(IncrementClause clause);

enum class FourierCondition { Single, L2 };

struct IncrementWitness {
  Progression progression;
  Rational claimed;   // density lower bound certified
  Rational measured;  // exact density of A on the progression
  IncrementClause clause = IncrementClause::Unclassified;
  std::vector<IncrementClause> satisfied;  // every clause the witness meets
  std::string route;  // "trivial", "single", "l2-class", "l2-single"
  std::int64_t q = 1;
  double xi = 0;
  double eta = 0;
};

// Clause constants; existential in theory, configuration here.
struct ClauseConstants {
  double c = 0.01;
  double big_c = 16.0;
};

// Tags a progression by the clauses (*), (2), (3), (4) it satisfies.
void classify(IncrementWitness& w, const Rational& alpha, std::int64_t big_x, const ClauseConstants& k);

// Square step, inside [X], exact density >= claimed and measured recomputed.
bool reverify(const IncrementWitness& w, const IntegerSet& a, std::int64_t big_x);

// Measured Fourier mass for the extraction preconditions.
double single_mass(const BalancedFunction& f, std::int64_t q, double xi);  // max_a |f^(a/q + xi)|
double l2_mass(const BalancedFunction& f, std::int64_t q, double xi);      // sum_a |f^(a/q + xi)|^2

// Density increment on a progression of common difference q^2 from a large
// Fourier coefficient (single) or large Fourier mass on a coset (l2).
IncrementWitness extract_increment(const BalancedFunction& f, std::int64_t q, double xi, double eta,
                                   FourierCondition condition, const ClauseConstants& k = {});

struct SmallDensityCertificate {
  Rational alpha;
  double threshold = 0;  // exp(-c F(X))
  double c = 0;
  double shape = 0;      // F(X)
};

struct FrequencySample {
  std::int64_t q = 1;
  double xi = 0;
  double single_eta = 0;  // max_a |f^| / (alpha X)
  double l2_eta = 0;      // sum_a |f^|^2 / (alpha X)^2
};

struct NoWitnessReport {
  Rational alpha;
  std::vector<FrequencySample> profile;
};

struct DriverOptions {
  ClauseConstants constants;
  double c1 = 1.0;          // major-arc constant
  int xi_steps = 2;         // offsets k tau / xi_steps for |k| <= xi_steps
  double min_eta = 1e-3;    // candidates below this are not attempted
  std::size_t max_candidates = 64;
};

using DriverOutcome = std::variant<IncrementWitness, SmallDensityCertificate, NoWitnessReport>;

DriverOutcome increment_driver(const IntegerSet& a, std::int64_t big_x, const DriverOptions& options = {});

// F(X) = (log X)^{1/4} (log(3 + log X))^{-1/2}, taking log X as input.
double shape_function(double log_x);

struct BoundPoint {
  double shape = 0;  // F(X)
  double bound = 0;  // X exp(-c0 F(X))
};
BoundPoint bound_curve(double big_x, double c0);

struct IncrementGap {
  double lhs = 0;  // F(X) - F(e^{-h} X)
  double rhs = 0;  // h (log X)^{-3/4} (log(3 + log X))^{-1/2}
  bool holds = false;
};
IncrementGap increment_gap(double log_x, double h);

}  // namespace sdf
