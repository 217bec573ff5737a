#include "sdf/arcs.hpp"

#include <cmath>
#include <numeric>

namespace sdf {

ArcDecomposition::ArcDecomposition(double alpha, std::int64_t big_x, double c1)
    : alpha_(alpha), x_(big_x), c1_(c1) {
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (big_x < 10) throw Error(ErrorKind::InvalidArgument, "X must be >= 10");
  if (!(c1 > 0)) throw Error(ErrorKind::InvalidArgument, "C1 must be positive");
  const double l = std::log(1.0 / alpha);
  tau_ = c1 * l * l / static_cast<double>(big_x);
  q_max_ = static_cast<std::int64_t>(std::floor(c1 / (alpha * alpha) + 1e-9));
  if (q_max_ < 1) q_max_ = 1;
  if (q_max_ > 200'000) throw Error(ErrorKind::CapExceeded, "too many major arcs");
  for (std::int64_t q = 1; q <= q_max_; ++q)
    for (std::int64_t a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) arcs_.push_back({a, q});
  const double gap = q_max_ >= 2 ? 1.0 / (static_cast<double>(q_max_) * static_cast<double>(q_max_ - 1)) : 1.0;
  overlapping_ = 2 * tau_ >= gap;
}

std::optional<Arc> ArcDecomposition::locate(double theta) const {
  const long double th = static_cast<long double>(theta) - std::floor(static_cast<long double>(theta));
  for (std::int64_t q = 1; q <= q_max_; ++q) {
    const auto a = static_cast<std::int64_t>(std::llround(th * q));
    if (std::abs(th - static_cast<long double>(a) / q) <= tau_ && std::gcd(a % q, q) == 1) return Arc{a % q, q};
  }
  return std::nullopt;
}

MinorArcReport minor_arc_sup(double alpha, std::int64_t big_x, double c1, double grid_density) {
  if (grid_density < 4) throw Error(ErrorKind::InvalidArgument, "grid resolution must be at most tau/4");
  const ArcDecomposition arcs(alpha, big_x, c1);
  MinorArcReport rep;
  rep.spacing = arcs.tau() / grid_density;
  rep.overlapping = arcs.overlapping();
  const auto steps = static_cast<std::int64_t>(std::ceil(0.5 / rep.spacing));
  for (std::int64_t i = 0; i <= steps; ++i) {
    const double theta = std::min(0.5, static_cast<double>(i) * rep.spacing);
    if (arcs.contains(theta)) continue;
    ++rep.samples;
    const double v = std::abs(square_weight_spectrum(theta, big_x));
    if (v > rep.sup) {
      rep.sup = v;
      rep.sup_theta = theta;
    }
  }
  rep.bound = alpha * static_cast<double>(big_x) / 512.0;
  rep.ratio = rep.sup / (alpha * static_cast<double>(big_x));
  rep.pass = rep.sup <= rep.bound;
  return rep;
}

MajorArcReport major_arc_bound_check(std::int64_t a, std::int64_t q, double theta, std::int64_t big_x, Regime regime) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "q must be >= 1");
  MajorArcReport rep;
  const double x = static_cast<double>(big_x);
  if (static_cast<double>(q) > std::pow(x, 0.125)) rep.violated.push_back("q <= X^{1/8}");
  if (std::gcd(mod_floor(a, q), q) != 1) rep.violated.push_back("gcd(a, q) = 1");
  if (std::abs(theta) > std::pow(x, -0.875)) rep.violated.push_back("|theta| <= X^{-7/8}");
  rep.in_regime = rep.violated.empty();
  if (regime == Regime::Strict && !rep.in_regime) {
    std::string msg;
    for (const auto& v : rep.violated) msg += (msg.empty() ? "" : "; ") + v;
    throw Error(ErrorKind::HypothesisViolated, msg);
  }
  const long double centre = static_cast<long double>(mod_floor(a, q)) / q;
  rep.value = std::abs(square_weight_spectrum(static_cast<double>(centre + theta), big_x));
  rep.envelope = x / std::sqrt(static_cast<double>(q)) * std::exp(-std::sqrt(std::abs(theta * x))) + std::pow(x, 0.75);
  rep.ratio = rep.value / rep.envelope;
  return rep;
}

double major_arc_main_term(std::int64_t a, std::int64_t q, double theta, std::int64_t big_x) {
  const double x = static_cast<double>(big_x);
  return x / static_cast<double>(q) * std::real(bump_half_fourier(theta * x) * gauss_sum(a, q));
}

}  // namespace sdf
