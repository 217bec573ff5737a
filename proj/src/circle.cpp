#include "sdf/circle.hpp"

#include <cmath>
#include <numbers>

namespace sdf {
namespace {

using cd = std::complex<double>;

cd phase(long double t) {
  const long double frac = t - std::floor(t);
  return std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac));
}

}  // namespace

double square_weight(std::int64_t x, std::int64_t big_x) {
  const auto ax = x < 0 ? -x : x;
  if (ax == 0 || !is_perfect_square(ax)) return 0.0;
  const auto t = isqrt(ax);
  return static_cast<double>(t) * bump_eval(static_cast<double>(ax) / static_cast<double>(big_x));
}

double square_weight_spectrum(double theta, std::int64_t big_x) {
  if (big_x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  const long double th = static_cast<long double>(theta) - std::floor(static_cast<long double>(theta));
  const auto root = isqrt(big_x);
  double acc = 0;
  for (std::int64_t t = 1; t <= root; ++t) {
    const auto t2 = t * t;
    const double w = bump_eval(static_cast<double>(t2) / static_cast<double>(big_x));
    if (w == 0.0) continue;
    const long double arg = th * static_cast<long double>(t2);
    acc += static_cast<double>(t) * w * phase(arg).real();
  }
  return 2.0 * acc;
}

std::complex<double> square_weight_spectrum_direct(double theta, std::int64_t big_x) {
  cd acc = 0;
  for (std::int64_t x = -big_x; x <= big_x; ++x) {
    const double g = square_weight(x, big_x);
    if (g != 0.0) acc += g * phase(-static_cast<long double>(theta) * x);
  }
  return acc;
}

std::complex<double> gauss_sum(std::int64_t a, std::int64_t q) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "q must be >= 1");
  cd acc = 0;
  for (std::int64_t b = 0; b < q; ++b) acc += phase(-static_cast<long double>(mul_mod(a, mul_mod(b, b, q), q)) / q);
  return acc;
}

std::complex<double> square_indicator_fourier(std::int64_t s, std::int64_t p) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "p must be >= 1");
  std::vector<char> square(static_cast<std::size_t>(p), 0);
  for (std::int64_t b = 0; b < p; ++b) square[static_cast<std::size_t>(mul_mod(b, b, p))] = 1;
  cd acc = 0;
  for (std::int64_t x = 0; x < p; ++x)
    if (square[static_cast<std::size_t>(x)]) acc += phase(-static_cast<long double>(mul_mod(s, x, p)) / p);
  return acc / static_cast<double>(p);
}

std::complex<double> square_indicator_fourier_gauss(std::int64_t s, std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  if (mod_floor(s, p) == 0) return cd(static_cast<double>(p + 1) / (2.0 * p), 0.0);
  return (1.0 + gauss_sum(s, p)) / (2.0 * static_cast<double>(p));
}

double circle_distance(double x) {
  const double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

bool satisfies_dirichlet(double theta, const RationalApprox& r, std::int64_t qcap) {
  const Rational th = exact_rational(theta);
  const Rational err = abs(th - Rational(r.a, r.q));
  return err * r.q * qcap <= 1;
}

RationalApprox rational_approx(double theta, std::int64_t qcap) {
  if (qcap < 1) throw Error(ErrorKind::InvalidArgument, "Qcap must be >= 1");
  const Rational exact = exact_rational(theta);
  const BigInt shift = numerator(exact) >= 0 ? BigInt(numerator(exact) / denominator(exact))
                                             : BigInt((numerator(exact) - denominator(exact) + 1) / denominator(exact));
  // Reduced value in [0, 1); convergents are then lifted back by `shift`.
  BigInt num = numerator(exact) - shift * denominator(exact);
  BigInt den = denominator(exact);
  BigInt p_prev = 1, q_prev = 0, p_cur = 0, q_cur = 1;  // convergents p/q
  RationalApprox best{static_cast<std::int64_t>(shift), 1};
  auto accept = [&](const BigInt& p, const BigInt& q) {
    if (q > qcap) return false;
    RationalApprox r{static_cast<std::int64_t>(p + shift * q), static_cast<std::int64_t>(q)};
    if (satisfies_dirichlet(theta, r, qcap)) {
      best = r;
      return true;
    }
    return false;
  };
  if (accept(p_cur, q_cur)) return best;
  while (num != 0) {
    const BigInt a = den / num;
    BigInt rem = den % num;
    den = num;
    num = rem;
    BigInt p_next = a * p_cur + p_prev;
    BigInt q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (q_cur > qcap) break;
    if (accept(p_cur, q_cur)) return best;
  }
  // Dirichlet guarantees the last convergent below qcap works; reaching here
  // means the bound is unattainable, which would be a bug.
  throw Error(ErrorKind::SearchExhausted, "no convergent satisfies the Dirichlet bound");
}

double quadratic_average(double theta, std::int64_t big_x) {
  if (big_x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  const long double th = static_cast<long double>(theta) - std::floor(static_cast<long double>(theta));
  cd acc = 0;
  for (std::int64_t x = 1; x <= big_x; ++x) {
    // theta x^2 mod 1 with x^2 reduced against the fractional part of theta.
    acc += phase(th * static_cast<long double>(x * x));
  }
  return std::abs(acc) / static_cast<double>(big_x);
}

WeylLocation weyl_locate(double theta, double delta, std::int64_t big_x, const WeylOptions& options) {
  if (big_x < 2) throw Error(ErrorKind::InvalidArgument, "X must be >= 2");
  WeylLocation out;
  out.average = quadratic_average(theta, big_x);
  const double x = static_cast<double>(big_x);
  if (delta < std::pow(x, -1.0 / 3.0))
    throw Error(ErrorKind::PreconditionFailed, "delta below X^{-1/3}");
  if (out.average < delta)
    throw Error(ErrorKind::PreconditionFailed,
                "|E e(theta x^2)| = " + std::to_string(out.average) + " is below delta = " + std::to_string(delta));
  const double lx = std::log(x);
  const double cap = options.c * (delta / lx) * (delta / lx) * x * x;
  out.qcap = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(cap)));
  const auto r = rational_approx(theta, out.qcap);
  out.q = r.q;
  out.a = r.a;
  out.distance = circle_distance(static_cast<double>(static_cast<long double>(theta) * r.q));
  const double scale = delta * delta / (lx * lx);
  out.q_constant = static_cast<double>(out.q) * scale;
  out.distance_constant = out.distance * scale * x * x;
  out.pass = out.q_constant <= options.c_fit && out.distance_constant <= options.c_fit;
  return out;
}

}  // namespace sdf
