#include "sdf/level_d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace sdf {
namespace {

std::vector<std::uint32_t> masks_of_size(std::size_t n, int d) {
  std::vector<std::uint32_t> out;
  if (d < 0 || static_cast<std::size_t>(d) > n) return out;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == d) out.push_back(m);
  return out;
}

std::int64_t product(const std::vector<std::int64_t>& v) {
  std::int64_t p = 1;
  for (auto x : v) p *= x;
  return p;
}

}  // namespace

double level_d_energy(const std::vector<Complex>& f, const ModulusSet& q, int d, double offset) {
  const auto x_max = static_cast<std::int64_t>(f.size());
  double total = 0;
  for (auto mask : masks_of_size(q.size(), d)) {
    const auto s = q.subset_of(mask);
    const auto n = product(s);
    for (std::int64_t a = 0; a < n; ++a) {
      if (std::any_of(s.begin(), s.end(), [&](std::int64_t m) { return a % m == 0; })) continue;
      Complex acc = 0;
      for (std::int64_t x = 1; x <= x_max; ++x) {
        const long double phase = static_cast<long double>(mul_mod(a, x, n)) / n + static_cast<long double>(offset) * x;
        acc += f[static_cast<std::size_t>(x - 1)] * unit_phase(-phase);
      }
      total += std::norm(acc);
    }
  }
  return total;
}

double level_d_energy_lifted(const std::vector<Complex>& f, const ModulusSet& q, int d, double offset) {
  const auto x_max = static_cast<std::int64_t>(f.size());
  std::vector<Complex> twisted(f.size());
  for (std::int64_t x = 1; x <= x_max; ++x)
    twisted[static_cast<std::size_t>(x - 1)] = f[static_cast<std::size_t>(x - 1)] * unit_phase(-static_cast<long double>(offset) * x);
  const auto g = apply_multiplier(Level{d}, lift(Progression{1, 1, x_max}, x_max, q, twisted));
  const double n2 = l2_norm(g);
  return static_cast<double>(x_max) * static_cast<double>(x_max) * n2 * n2;
}

std::string_view to_string(DichotomyClause clause) {
  switch (clause) {
    case DichotomyClause::EnergyBound: return "energy-bound";
    case DichotomyClause::DenseClass: return "dense-class";
    case DichotomyClause::BothFailed: return "both-failed";
  }
  return "unknown";
}

DichotomyVerdict level_d_dichotomy(const std::vector<Complex>& f, const ModulusSet& q, double alpha, int d,
                                   const DichotomyOptions& options) {
  const auto x_max = static_cast<std::int64_t>(f.size());
  if (x_max < 1) throw Error(ErrorKind::InvalidArgument, "f must be defined on [X] with X >= 1");
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "d must be >= 0");
  for (auto v : f)
    if (!(std::abs(v) <= 1.0 + 1e-12)) throw Error(ErrorKind::InvalidArgument, "f must satisfy |f| <= 1");

  DichotomyVerdict out;
  const double l = std::log(1.0 / alpha);
  const double lx = std::log(static_cast<double>(x_max));
  if (!(alpha < 0.5)) out.violated.push_back("alpha < 1/2");
  if (!(alpha > 2.0 / std::sqrt(static_cast<double>(x_max)))) out.violated.push_back("alpha > 2 X^{-1/2}");
  if (std::log(static_cast<double>(q.max_modulus())) > lx / (32 * l) + 1e-12)
    out.violated.push_back("(i) max Q <= X^{1/(32 log(1/alpha))}");
  if (q.log_order() < 2 * lx - 1e-12) out.violated.push_back("(ii) prod Q >= X^2");
  if (d > l / 128) out.violated.push_back("d <= 2^{-7} log(1/alpha)");
  out.in_regime = out.violated.empty();
  if (options.regime == Regime::Strict && !out.in_regime) {
    std::ostringstream os;
    for (std::size_t i = 0; i < out.violated.size(); ++i) os << (i ? "; " : "") << out.violated[i];
    throw Error(ErrorKind::HypothesisViolated, os.str());
  }

  out.energy = level_d_energy(f, q, d, options.offset);
  out.bound = alpha * alpha * static_cast<double>(x_max) * static_cast<double>(x_max) *
              (d == 0 ? 1.0 : std::pow(kC0 * l / d, d));
  // At d = 0 with alpha = E|f| the two sides agree exactly; allow rounding.
  if (out.energy <= out.bound * (1 + 1e-12)) {
    out.clause = DichotomyClause::EnergyBound;
    return out;
  }

  // Strongest dense class, measured by density / threshold.
  const int max_size = static_cast<int>(std::floor(2 * l));
  double best_ratio = 1.0;
  for (int k = 0; k <= std::min<int>(max_size, static_cast<int>(q.size())); ++k) {
    const double threshold = std::pow(options.lambda, k) * alpha;
    for (auto mask : masks_of_size(q.size(), k)) {
      const auto s = q.subset_of(mask);
      const auto n = product(s);
      std::map<std::int64_t, std::pair<double, std::int64_t>> classes;
      for (std::int64_t x = 1; x <= x_max; ++x) {
        auto& c = classes[x % n];
        c.first += std::abs(f[static_cast<std::size_t>(x - 1)]);
        c.second += 1;
      }
      for (const auto& [r, c] : classes) {
        const double density = c.first / static_cast<double>(c.second);
        if (density > threshold && density / threshold > best_ratio) {
          best_ratio = density / threshold;
          out.witness = DenseClassWitness{s, r, c.second, density, threshold};
        }
      }
    }
  }
  out.clause = out.witness ? DichotomyClause::DenseClass : DichotomyClause::BothFailed;
  return out;
}

double rho_limit(double r, int p) {
  const double pd = p;
  const double first = r > 0 ? std::pow(r, -(pd - 2) / pd) / pd : INFINITY;
  return std::min(first, 1.0 / std::sqrt(pd)) / (3.0 * std::sqrt(2.0));
}

NoiseSchedule standard_schedule(double r) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  NoiseSchedule s;
  s.m = static_cast<int>(std::ceil(1.0 / (r * r) - 1e-12));
  s.p = 2 * s.m;
  s.rho = 1.0 / (20.0 * std::sqrt(static_cast<double>(s.m)));
  return s;
}

HypercontractivityReport hypercontractivity_verify(const GroupFunction& f, double r, double gamma, int p, double rho,
                                                   const GlobalnessCaps& caps) {
  if (p < 2 || p % 2 != 0) throw Error(ErrorKind::InvalidArgument, "p must be an even integer >= 2");
  HypercontractivityReport rep;
  rep.rho_max = rho_limit(r, p);
  if (rho > rep.rho_max)
    throw Error(ErrorKind::RhoTooLarge, "rho = " + std::to_string(rho) + " exceeds " + std::to_string(rep.rho_max));
  const auto g = globalness_check(f, r, gamma, caps);
  if (!g.global)
    throw Error(ErrorKind::NotGlobal, "derivative norm " + std::to_string(g.worst.norm) + " exceeds bound " +
                                          std::to_string(g.worst.bound));
  rep.lhs = moment(apply_multiplier(Noise{rho}, f), p);
  const double n2 = l2_norm(f);
  rep.rhs = n2 * n2 * std::pow(gamma, p - 2);
  rep.pass = rep.lhs <= rep.rhs * (1 + 1e-9);
  return rep;
}

}  // namespace sdf
