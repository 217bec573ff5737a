#pragma once

#include "sdf/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdf {

// Smallest s >= 2 with Legendre symbol (s | p) = -1.
std::int64_t qnr_find(std::int64_t p);

// psi_p(x) = (1 + eps)^{-1} (1 - eps cos(2 pi s x / p)) on Z/pZ.
class PrimeLocalWeight {
 public:
  PrimeLocalWeight(std::int64_t p, double eps);

  std::int64_t p() const { return p_; }
  double eps() const { return eps_; }
  std::int64_t s() const { return s_; }
  double value(std::int64_t x) const;
  double mean() const { return 1.0 / (1.0 + eps_); }
  // The three-term expansion of E_x psi_p(x) e(-r x / p).
  double fourier(std::int64_t r) const;
  // Largest deviation between fourier(r) and a direct DFT of the values.
  double dft_mismatch() const;

 private:
  std::int64_t p_;
  double eps_;
  std::int64_t s_;
};

PrimeLocalWeight psi_p_build(std::int64_t p, double eps);

struct SquareCorrelation {
  std::int64_t p = 0;
  double eps = 0;
  double direct = 0;    // E_{x,y} psi(x) psi(y) 1_sq(x - y), squares mod p with 0
  double identity = 0;  // sum_r |psi^(r)|^2 1_sq^(r)
  double bound = 0;     // (E psi)^2 (1 - eps^2 / (8 sqrt p)) / 2
  bool pass = false;
  bool in_regime = true;  // eps >= 4 p^{-1/4}
};

// Strict throws EpsilonTooSmall when eps < 4 p^{-1/4}; Relaxed reports it.
SquareCorrelation square_correlation(std::int64_t p, double eps, Regime regime = Regime::Strict);

struct LowerBoundParams {
  std::optional<double> t;  // searched for when absent
  double c = 1.0;
  Regime regime = Regime::Relaxed;
};

struct LowerBoundTrace {
  double t = 0;
  double c_constant = 0;
  double eps_raw = 0;
  Rational eps;        // dyadic, after clamping to [0, 1]
  std::int64_t m = 0;  // floor(T / 4 log T)
  std::int64_t m_used = 0;
  std::vector<std::int64_t> primes;  // all M primes found in [T, 2T]
  bool eps_clamped = false;
  bool truncated = false;
  std::vector<std::string> violated;  // hypotheses that only hold in the relaxed reading
};

class LowerBoundFunction {
 public:
  LowerBoundFunction(std::int64_t big_x, Rational alpha, Rational c, Rational eps, std::vector<std::int64_t> primes,
                     LowerBoundTrace trace);

  std::int64_t x() const { return x_; }
  std::int64_t n() const { return n_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& c() const { return c_; }
  const Rational& eps() const { return eps_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  const LowerBoundTrace& trace() const { return trace_; }
  // psi_N over one period, indexed by residue mod N.
  const std::vector<double>& psi() const { return psi_; }
  double psi_at(std::int64_t residue) const { return psi_[static_cast<std::size_t>(residue)]; }
  std::int64_t periodic_end() const { return n_ * (x_ / n_); }
  double value(std::int64_t x) const;
  std::vector<double> values() const;  // f(1..X), index 0 is f(1)
  // Mean of psi_N as (1 + eps)^{-M} in exact arithmetic.
  Rational psi_mean_exact() const;

 private:
  std::int64_t x_;
  std::int64_t n_;
  Rational alpha_;
  Rational c_;
  Rational eps_;
  std::vector<std::int64_t> primes_;
  LowerBoundTrace trace_;
  std::vector<double> psi_;
};

// Primes p = 1 mod 4 in [lo, hi], ascending.
std::vector<std::int64_t> primes_one_mod_four(std::int64_t lo, std::int64_t hi);

LowerBoundFunction build_lower_bound(std::int64_t big_x, const Rational& alpha, const LowerBoundParams& params);

struct CongruenceCheck {
  std::vector<std::int64_t> subset;
  double max_average = 0;
  double bound = 0;  // (1 + eps)^{m - M}
  bool pass = false;
};

struct WindowHit {
  std::int64_t start = 0;
  std::int64_t step = 0;
  std::int64_t length = 0;
  double density = 0;
};

struct LowerBoundReport {
  // (1) mean of f over [X]
  Rational mean_exact;
  double mean_numeric = 0;
  bool prop1 = false;
  // (2) sum of f(x) f(y) over x - y = n^2, n >= 1
  double square_count = 0;
  double square_bound = 0;  // alpha^2 X^{3/2} / 100
  double square_ratio = 0;  // count / (alpha^2 X^{3/2})
  bool prop2 = false;
  double avg_squares = 0;      // E_{x,y in Z/N} psi psi 1_sq(x - y), factored over primes
  double avg_squares_direct = -1;  // same over Z/NZ directly; -1 when N is too large
  double avg_squares_product = 0;  // 2^{-M} (E psi)^2 prod (1 - C^2 log T / (8 sqrt(pT)))
  bool avg_squares_pass = false;
  std::vector<SquareCorrelation> per_prime;
  // (3) windows of exactly L terms over every step
  std::int64_t window_length = 0;  // ceil(X exp(-log(1/alpha)^{1/3}))
  double window_max_density = 0;
  std::optional<WindowHit> violating;  // smallest-step violating window of length L
  bool prop3 = false;
  WindowHit longest;                   // longest window with density >= 2 alpha among scanned steps
  std::vector<std::int64_t> longest_steps;
  std::vector<CongruenceCheck> congruence;
  bool congruence_pass = false;
};

struct VerifyOptions {
  std::int64_t max_x = 10'000'000;
  std::int64_t direct_n_cap = 100'000;
  std::int64_t small_step_cap = 64;
};

LowerBoundReport verify_lb_properties(const LowerBoundFunction& f, const VerifyOptions& options = {});

// Longest run of consecutive terms whose mean is >= threshold (O(n)).
WindowHit longest_dense_run(const std::vector<double>& terms, double threshold);

}  // namespace sdf
