#include "sdf/operators.hpp"

#include <bit>
#include <cmath>
#include <functional>

namespace sdf {
namespace {

// For every point, the row-major index of its coordinates on the axes in `keep`.
std::vector<std::int64_t> projected_indices(const ModulusSet& q, std::uint32_t keep) {
  const auto n = q.order();
  std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
  for (std::size_t axis = 0; axis < q.size(); ++axis) {
    if (!(keep >> axis & 1u)) continue;
    const auto m = q[axis];
    const auto s = q.stride(axis);
    for (std::int64_t i = 0; i < n; ++i) {
      auto& v = out[static_cast<std::size_t>(i)];
      v = v * m + (i / s) % m;
    }
  }
  return out;
}

// Sum of |g|^2 over each fibre of the projection onto `keep`.
std::vector<double> fibre_energy(const ModulusSet& q, std::uint32_t keep, const Eigen::VectorXcd& g) {
  const auto idx = projected_indices(q, keep);
  std::vector<double> out(static_cast<std::size_t>(q.restrict_to(keep).order()), 0.0);
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<std::size_t>(idx[i])] += std::norm(g[static_cast<Eigen::Index>(i)]);
  return out;
}

std::uint32_t full_mask(const ModulusSet& q) { return q.size() == 0 ? 0u : (1u << q.size()) - 1; }

}  // namespace

double multiplier_weight(const MultiplierSpec& spec, const ModulusSet& q, std::uint32_t support) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Average>) {
          return (support & q.mask_of(s.subset)) == 0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, Laplacian>) {
          const auto m = q.mask_of(s.subset);
          return (support & m) == m ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, Level>) {
          return std::popcount(support) == s.d ? 1.0 : 0.0;
        } else {
          return std::pow(s.rho, std::popcount(support));
        }
      },
      spec);
}

GroupFunction apply_multiplier(const MultiplierSpec& spec, const GroupFunction& f) {
  const auto& q = f.modulus_set();
  if (const auto* n = std::get_if<Noise>(&spec); n && !(n->rho >= 0.0 && n->rho <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "noise rate must lie in [0, 1]");
  std::vector<double> table(std::size_t{1} << q.size());
  for (std::uint32_t m = 0; m < table.size(); ++m) table[m] = multiplier_weight(spec, q, m);
  auto coeffs = dft(f);
  const auto masks = support_masks(q);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= table[masks[static_cast<std::size_t>(i)]];
  return inverse_dft(q, coeffs);
}

GroupFunction average_over(const std::vector<std::int64_t>& subset, const GroupFunction& f) {
  const auto& q = f.modulus_set();
  const auto keep = full_mask(q) & ~q.mask_of(subset);
  const auto idx = projected_indices(q, keep);
  const auto buckets = q.restrict_to(keep).order();
  std::vector<Complex> sums(static_cast<std::size_t>(buckets), 0.0);
  for (std::size_t i = 0; i < idx.size(); ++i) sums[static_cast<std::size_t>(idx[i])] += f[static_cast<Eigen::Index>(i)];
  const double fibre = static_cast<double>(f.size() / buckets);
  auto out = GroupFunction::zeros(q);
  for (std::size_t i = 0; i < idx.size(); ++i) out.values()[static_cast<Eigen::Index>(i)] = sums[static_cast<std::size_t>(idx[i])] / fibre;
  return out;
}

GroupFunction specialize(const GroupFunction& f, const std::vector<std::int64_t>& subset,
                         const std::vector<std::int64_t>& point) {
  const auto& q = f.modulus_set();
  const auto fixed = q.mask_of(subset);
  const auto sub = q.subset_of(fixed);
  if (point.size() != sub.size()) throw Error(ErrorKind::InvalidArgument, "point has wrong number of coordinates");
  const auto rest = q.restrict_to(full_mask(q) & ~fixed);
  auto out = GroupFunction::zeros(rest);
  std::vector<std::int64_t> coords(q.size());
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const auto y = rest.coordinates(j);
    std::size_t a = 0, b = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
      coords[k] = (fixed >> k & 1u) ? mod_floor(point[a++], q[k]) : y[b++];
    out.values()[j] = f.at(coords);
  }
  return out;
}

GroupFunction derivative(const std::vector<std::int64_t>& subset, const std::vector<std::int64_t>& point,
                         const GroupFunction& f) {
  return specialize(apply_multiplier(Laplacian{subset}, f), subset, point);
}

GlobalnessParams global_params(double alpha, int d) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "d must be >= 0");
  if (d == 0) return {0.0, alpha};
  const double l = std::log(1.0 / alpha);
  return {std::sqrt(d / l), std::pow(kC0 * l / d, d / 2.0) * alpha};
}

namespace {

// Calls visit(mask, fibre norms) for every S, where the norms are ||D_{S,x} f||_2 indexed by x.
void for_each_derivative_norm(const GroupFunction& f, const GlobalnessCaps& caps,
                              const std::function<void(std::uint32_t, const std::vector<double>&)>& visit) {
  const auto& q = f.modulus_set();
  if (q.order() > caps.max_order || q.size() > caps.max_moduli)
    throw Error(ErrorKind::CapExceeded, "globalness enumeration limited to |G_Q| <= " + std::to_string(caps.max_order) +
                                            " and |Q| <= " + std::to_string(caps.max_moduli));
  const auto coeffs = dft(f);
  const auto masks = support_masks(q);
  for (std::uint32_t s = 0; s <= full_mask(q); ++s) {
    Eigen::VectorXcd c = coeffs;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if ((masks[static_cast<std::size_t>(i)] & s) != s) c[i] = 0;
    const auto g = dft(q, c, Direction::Inverse);
    auto energy = fibre_energy(q, s, g);
    const double rest = static_cast<double>(f.size()) / static_cast<double>(energy.size());
    for (auto& e : energy) e = std::sqrt(e / rest);
    visit(s, energy);
  }
}

}  // namespace

GlobalnessReport globalness_check(const GroupFunction& f, double r, double gamma, const GlobalnessCaps& caps) {
  if (r < 0 || gamma < 0) throw Error(ErrorKind::InvalidArgument, "r and gamma must be >= 0");
  const auto& q = f.modulus_set();
  const double slack = 1e-12 * std::max(l2_norm(f), 1e-300);
  GlobalnessReport report;
  double worst_excess = -INFINITY;
  for_each_derivative_norm(f, caps, [&](std::uint32_t s, const std::vector<double>& norms) {
    const int k = std::popcount(s);
    const double bound = (k == 0 ? 1.0 : std::pow(r, k)) * gamma;
    const auto sub = q.restrict_to(s);
    for (std::size_t x = 0; x < norms.size(); ++x) {
      ++report.checked;
      if (norms[x] > bound * (1 + 1e-12) + slack) report.global = false;
      if (norms[x] - bound > worst_excess) {
        worst_excess = norms[x] - bound;
        report.worst = {q.subset_of(s), sub.coordinates(static_cast<std::int64_t>(x)), norms[x], bound};
      }
    }
  });
  return report;
}

double fitted_gamma(const GroupFunction& f, double r, const GlobalnessCaps& caps) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "fitted gamma needs r > 0");
  double gamma = 0;
  for_each_derivative_norm(f, caps, [&](std::uint32_t s, const std::vector<double>& norms) {
    const double scale = std::pow(r, std::popcount(s));
    for (auto n : norms) gamma = std::max(gamma, n / scale);
  });
  return gamma;
}

}  // namespace sdf
