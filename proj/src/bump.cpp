// The bump w and its Fourier transform.
//
// For large t the real-axis integral cancels to e^{-sqrt(2 pi t)} and loses
// all precision, so the path is deformed into the lower half plane. With w
// even, w^(t) = 2 Re int_0^1 w(x) e(-t x) dx. The segment from 0 is replaced
// by 0 -> -i inf (purely imaginary, drops out of the real part), then
// -i inf -> x* straight up the vertical line through the saddle point x*,
// then x* -> 1 along the ray 1 - s e^{i pi/4}. Near x = 1 the exponent is
// about -1/(2u) + 2 pi i t u with u = 1 - x, so x* = 1 - e^{i pi/4} / (2 sqrt(pi t)).
#include "sdf/circle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace sdf {
namespace {

using cd = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;
constexpr double kContourFrom = 2.0;

// log w(1 - u) + 2 pi i t u.
cd exponent(cd u, double t) { return 1.0 - 1.0 / (u * (2.0 - u)) + cd(0, 2 * kPi * t) * u; }

double contour_transform(double t) {
  const cd dir = std::polar(1.0, kPi / 4);
  const double s_star = 1.0 / (2.0 * std::sqrt(kPi * t));
  const cd u_star = dir * s_star;
  auto ray = [&](double s) -> cd { return s <= 0 ? cd(0) : std::exp(exponent(dir * s, t)); };
  auto down = [&](double y) -> cd { return std::exp(exponent(u_star + cd(0, y), t)); };
  const cd ray_part = dir * gauss_kronrod<double, 61>::integrate(ray, 0.0, s_star, 12, 1e-12);
  const cd down_part = cd(0, 1) * gauss_kronrod<double, 61>::integrate(down, 0.0, INFINITY, 12, 1e-12);
  // Factor e(-t) removed from the exponent, restored with an exact reduction of t.
  const long double frac = static_cast<long double>(t) - std::floor(static_cast<long double>(t));
  const cd phase = std::polar(1.0, static_cast<double>(-2.0L * std::numbers::pi_v<long double> * frac));
  return 2.0 * std::real(phase * (ray_part + down_part));
}

}  // namespace

double bump_eval(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double bump_fourier_direct(double t) {
  auto f = [&](double x) { return 2.0 * bump_eval(x) * std::cos(2 * kPi * t * x); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 12, 1e-12);
}

double bump_fourier(double t) {
  t = std::abs(t);
  return t < kContourFrom ? bump_fourier_direct(t) : contour_transform(t);
}

std::complex<double> bump_half_fourier(double t) {
  auto re = [&](double x) { return bump_eval(x) * std::cos(2 * kPi * t * x); };
  auto im = [&](double x) { return -bump_eval(x) * std::sin(2 * kPi * t * x); };
  return {gauss_kronrod<double, 61>::integrate(re, 0.0, 1.0, 12, 1e-12),
          gauss_kronrod<double, 61>::integrate(im, 0.0, 1.0, 12, 1e-12)};
}

DecayFit bump_decay_fit(double t_min, double t_max, std::size_t samples, std::size_t bins) {
  if (!(t_min > 0 && t_max > t_min) || samples < bins || bins < 2)
    throw Error(ErrorKind::InvalidArgument, "bad decay-fit range");
  const double a = std::sqrt(t_min), b = std::sqrt(t_max);
  std::vector<double> best(bins, -INFINITY), where(bins, 0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double v = std::abs(bump_fourier(r * r));
    if (v <= 0) continue;
    auto bin = std::min(bins - 1, static_cast<std::size_t>((r - a) / (b - a) * static_cast<double>(bins)));
    if (std::log(v) > best[bin]) {
      best[bin] = std::log(v);
      where[bin] = r;
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  DecayFit fit;
  for (std::size_t k = 0; k < bins; ++k) {
    if (!std::isfinite(best[k])) continue;
    ++fit.points;
    sx += where[k];
    sy += best[k];
    sxx += where[k] * where[k];
    sxy += where[k] * best[k];
  }
  const double n = static_cast<double>(fit.points);
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace sdf
