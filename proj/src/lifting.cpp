#include "sdf/lifting.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace sdf {
namespace {

void check_lift_inputs(const Progression& p, std::int64_t universe, const ModulusSet& q, std::size_t count) {
  validate_progression(p, universe);
  if (static_cast<std::int64_t>(count) != p.length)
    throw Error(ErrorKind::InvalidArgument, "function length differs from |P|");
  if (q.log_order() < std::log(static_cast<double>(universe)) + 1e-9 && q.order() < universe)
    throw Error(ErrorKind::NotInjective, "prod Q < X, so pi_Q is not injective on [X]");
  for (auto m : q.moduli())
    if (gcd64(p.step, m) != 1)
      throw Error(ErrorKind::StepNotCoprime, "step " + std::to_string(p.step) + " shares a factor with " + std::to_string(m));
}

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "; " : "") << parts[i];
  return os.str();
}

}  // namespace

GroupFunction lift(const Progression& p, std::int64_t universe, const ModulusSet& q,
                   const std::vector<Complex>& values) {
  check_lift_inputs(p, universe, q, values.size());
  auto g = GroupFunction::zeros(q);
  const double scale = static_cast<double>(q.order()) / static_cast<double>(p.length);
  for (std::int64_t i = 0; i < p.length; ++i)
    g.values()[q.index_of_integer(p.at(i))] = scale * values[static_cast<std::size_t>(i)];
  return g;
}

Complex progression_coefficient(const Progression& p, const ModulusSet& q, const std::vector<Complex>& values,
                                const Frequency& xi) {
  if (xi.residues.size() != q.size()) throw Error(ErrorKind::InvalidArgument, "frequency has wrong number of axes");
  Complex acc = 0;
  for (std::int64_t i = 0; i < p.length; ++i) {
    const auto x = p.at(i);
    long double phase = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
      phase += static_cast<long double>(mul_mod(xi.residues[k], x, q[k])) / q[k];
    acc += values[static_cast<std::size_t>(i)] * unit_phase(-phase);
  }
  return acc / static_cast<double>(p.length);
}

ResidualReport restriction_residual(const ResidualConfig& c) {
  const auto& q = c.moduli;
  const auto x = c.universe;
  validate_progression(c.progression, x);
  const auto s_mask = q.mask_of(c.s);
  const auto t_mask = q.mask_of(c.t);
  if ((t_mask & ~s_mask) != 0) throw Error(ErrorKind::InvalidArgument, "T must be a subset of S");
  const auto s_list = q.subset_of(s_mask);
  if (c.point.size() != s_list.size()) throw Error(ErrorKind::InvalidArgument, "a must have one residue per modulus of S");

  ResidualReport rep;
  const double lx = std::log(static_cast<double>(x));
  const auto& p = c.progression;
  if (std::log(static_cast<double>(p.length)) < 0.75 * lx) rep.violated.push_back("|P| >= X^{3/4}");
  if (q.log_order() < 1.25 * lx) rep.violated.push_back("prod Q >= X^{5/4}");
  if (static_cast<double>(s_list.size()) * std::log(static_cast<double>(q.max_modulus())) > 0.25 * lx + 1e-12)
    rep.violated.push_back("(max Q)^{|S|} <= X^{1/4}");
  rep.in_regime = rep.violated.empty();
  if (c.regime == Regime::Strict && !rep.in_regime) throw Error(ErrorKind::HypothesisViolated, join(rep.violated));

  const std::uint32_t all = q.size() ? (1u << q.size()) - 1 : 0u;
  const auto rest = q.restrict_to(all & ~s_mask);
  // P' = {x in P : x = a mod q for q in S \ T}.
  std::int64_t modulus = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> congruences;
  for (std::size_t i = 0; i < s_list.size(); ++i)
    if (!(t_mask & (1u << q.axis_of(s_list[i])))) {
      congruences.emplace_back(s_list[i], mod_floor(c.point[i], s_list[i]));
      modulus *= s_list[i];
    }
  auto matches = [&](std::int64_t v) {
    for (auto [m, r] : congruences)
      if (mod_floor(v, m) != r) return false;
    return true;
  };
  std::int64_t first = -1;
  for (std::int64_t i = 0; i < std::min<std::int64_t>(p.length, modulus); ++i)
    if (matches(p.at(i))) {
      first = i;
      break;
    }
  if (first < 0) throw Error(ErrorKind::PreconditionFailed, "the restricted progression P' is empty");
  rep.restricted = {p.at(first), p.step * modulus, (p.length - 1 - first) / modulus + 1};
  check_lift_inputs(rep.restricted, x, rest, static_cast<std::size_t>(rep.restricted.length));

  const auto t_list = q.subset_of(t_mask);
  auto path1 = [&](const std::vector<Complex>& f) {
    return specialize(average_over(t_list, lift(p, x, q, f)), c.s, c.point);
  };
  auto path2 = [&](const std::vector<Complex>& f) {
    std::vector<Complex> sub;
    for (std::int64_t i = first; i < p.length; i += modulus) sub.push_back(f[static_cast<std::size_t>(i)]);
    return lift(rep.restricted, x, rest, sub);
  };

  std::vector<std::vector<Complex>> probes;
  if (static_cast<double>(p.length) * static_cast<double>(q.order()) <= 5e7) {
    rep.basis = "delta";
    for (std::int64_t b = 0; b < p.length; ++b) {
      std::vector<Complex> f(static_cast<std::size_t>(p.length), 0.0);
      f[static_cast<std::size_t>(b)] = 1.0;
      probes.push_back(std::move(f));
    }
  } else {
    // The square is linear, so generic random inputs detect any disagreement.
    rep.basis = "random-probe";
    std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(p.start * 1315423911LL + p.length));
    std::normal_distribution<double> gauss;
    for (int k = 0; k < 3; ++k) {
      std::vector<Complex> f(static_cast<std::size_t>(p.length));
      for (auto& v : f) v = {gauss(rng), gauss(rng)};
      probes.push_back(std::move(f));
    }
  }

  bool have_eta = false;
  double mismatch = 0, scale = 0;
  for (const auto& f : probes) {
    const auto a = path1(f);
    const auto b = path2(f);
    Eigen::Index arg = 0;
    const double peak = b.values().cwiseAbs().maxCoeff(&arg);
    if (peak == 0.0) {
      mismatch = std::max(mismatch, a.values().cwiseAbs().maxCoeff());
      continue;
    }
    if (!have_eta) {
      rep.eta = (a[arg] / b[arg]).real() - 1.0;
      have_eta = true;
    }
    scale = std::max(scale, peak);
    mismatch = std::max(mismatch, (a.values() - (1.0 + rep.eta) * b.values()).cwiseAbs().maxCoeff());
  }
  rep.max_mismatch = scale > 0 ? mismatch / scale : mismatch;
  rep.eta_bound = 1.0 / std::sqrt(static_cast<double>(x));
  rep.within_bound = std::abs(rep.eta) <= rep.eta_bound;
  return rep;
}

MomentComparison lem32_compare(const Progression& p, std::int64_t universe, const ModulusSet& q,
                               const std::vector<Complex>& values, int d, int m, Regime regime) {
  if (d < 0 || m < 1) throw Error(ErrorKind::InvalidArgument, "need d >= 0 and m >= 1");
  check_lift_inputs(p, universe, q, values.size());
  MomentComparison out;
  const double lx = std::log(static_cast<double>(universe));
  if (static_cast<double>(d) * m * std::log(static_cast<double>(q.max_modulus())) > lx / 16 + 1e-12)
    out.violated.push_back("(max Q)^{dm} <= X^{1/16}");
  if (std::log(static_cast<double>(p.length)) < 0.75 * lx) out.violated.push_back("|P| >= X^{3/4}");
  out.in_regime = out.violated.empty();
  if (regime == Regime::Strict && !out.in_regime) throw Error(ErrorKind::HypothesisViolated, join(out.violated));

  double abs_sum = 0;
  for (auto v : values) abs_sum += std::abs(v);
  out.alpha = abs_sum / static_cast<double>(p.length);
  const auto w = apply_multiplier(Level{d}, lift(p, universe, q, values));
  const double power = 2.0 * m;
  double on_gamma = 0;
  for (std::int64_t i = 0; i < p.length; ++i) on_gamma += std::pow(std::abs(w[q.index_of_integer(p.at(i))]), power);
  out.lhs = on_gamma / static_cast<double>(p.length);
  out.slack = std::pow(out.alpha, power) * std::pow(static_cast<double>(universe), -0.25);
  out.rhs = moment(w, power) + out.slack;
  out.pass = out.lhs <= out.rhs * (1 + 1e-12);
  return out;
}

}  // namespace sdf
