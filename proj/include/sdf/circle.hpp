#pragma once

#include "sdf/common.hpp"

#include <complex>
#include <cstdint>

namespace sdf {

// w(x) = exp(1 - 1/(1 - x^2)) on (-1, 1), zero elsewhere.
double bump_eval(double x);
// w^(t) = int w(x) e(-t x) dx.
double bump_fourier(double t);
// int_0^1 w(x) e(-t x) dx, the half-line transform met in the major-arc asymptotics.
std::complex<double> bump_half_fourier(double t);
// Real-axis quadrature only; reference route for moderate |t|.
double bump_fourier_direct(double t);

struct DecayFit {
  double slope = 0;      // d log|w^(t)| / d sqrt(t) over the upper envelope
  double intercept = 0;
  std::size_t points = 0;
};
// Samples t in [t_min, t_max] uniformly in sqrt(t), keeps the largest |w^|
// in each of `bins` bins (w^ oscillates through zeros) and fits a line.
DecayFit bump_decay_fit(double t_min, double t_max, std::size_t samples = 4000, std::size_t bins = 200);

// g_{X,square}(x) = t w(t^2 / X) if |x| = t^2, else 0.
double square_weight(std::int64_t x, std::int64_t big_x);
// 2 sum_{1 <= t <= sqrt X} t w(t^2/X) cos(2 pi theta t^2).
double square_weight_spectrum(double theta, std::int64_t big_x);
// sum_x g(x) e(-theta x) summed over all x in [-X, X].
std::complex<double> square_weight_spectrum_direct(double theta, std::int64_t big_x);

// sum_{b mod q} e(-a b^2 / q).
std::complex<double> gauss_sum(std::int64_t a, std::int64_t q);
// (1/p) sum_{x square mod p, 0 included} e(-s x / p), by direct summation.
std::complex<double> square_indicator_fourier(std::int64_t s, std::int64_t p);
// Same coefficient via (1 + gauss_sum(s, p)) / (2p) for an odd prime p.
std::complex<double> square_indicator_fourier_gauss(std::int64_t s, std::int64_t p);

struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
};
// Convergent a/q of theta mod 1 with the smallest q satisfying
// |theta - a/q| <= 1/(q qcap). theta is used exactly as the double it is.
RationalApprox rational_approx(double theta, std::int64_t qcap);
// Exact rational check of |theta - a/q| <= 1/(q qcap).
bool satisfies_dirichlet(double theta, const RationalApprox& r, std::int64_t qcap);
// ||x|| distance to the nearest integer.
double circle_distance(double x);

// |E_{x in [X]} e(theta x^2)|.
double quadratic_average(double theta, std::int64_t big_x);

struct WeylOptions {
  double c = 1.0;      // Qcap = c (delta / log X)^2 X^2
  double c_fit = 2.0;  // acceptance constant for the two reported ratios
};

struct WeylLocation {
  std::int64_t q = 1;
  std::int64_t a = 0;
  double distance = 0;           // ||q theta||
  double average = 0;            // measured |E e(theta x^2)|
  std::int64_t qcap = 1;
  double q_constant = 0;         // q delta^2 / (log X)^2
  double distance_constant = 0;  // ||q theta|| delta^2 X^2 / (log X)^2
  bool pass = false;
};

// Throws PreconditionFailed when the measured average is below delta or
// delta < X^{-1/3}.
WeylLocation weyl_locate(double theta, double delta, std::int64_t big_x, const WeylOptions& options = {});

}  // namespace sdf
