#include "sdf/group.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace sdf {

ModulusSet::ModulusSet(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  std::sort(moduli_.begin(), moduli_.end());
  if (moduli_.size() > 31) throw Error(ErrorKind::CapExceeded, "at most 31 moduli supported");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) throw Error(ErrorKind::InvalidArgument, "moduli must be >= 2");
    for (std::size_t j = 0; j < i; ++j)
      if (gcd64(moduli_[i], moduli_[j]) != 1)
        throw Error(ErrorKind::InvalidArgument, "moduli " + std::to_string(moduli_[j]) + " and " +
                                                    std::to_string(moduli_[i]) + " are not coprime");
  }
}

std::int64_t ModulusSet::order() const {
  __int128 prod = 1;
  for (auto q : moduli_) {
    prod *= q;
    if (prod > INT64_MAX) throw Error(ErrorKind::CapExceeded, "group order overflows int64");
  }
  return static_cast<std::int64_t>(prod);
}

double ModulusSet::log_order() const {
  double s = 0;
  for (auto q : moduli_) s += std::log(static_cast<double>(q));
  return s;
}

std::int64_t ModulusSet::max_modulus() const { return moduli_.empty() ? 1 : moduli_.back(); }

bool ModulusSet::contains(std::int64_t q) const {
  return std::binary_search(moduli_.begin(), moduli_.end(), q);
}

std::size_t ModulusSet::axis_of(std::int64_t q) const {
  auto it = std::lower_bound(moduli_.begin(), moduli_.end(), q);
  if (it == moduli_.end() || *it != q) throw Error(ErrorKind::UnknownModulus, std::to_string(q) + " not in Q");
  return static_cast<std::size_t>(it - moduli_.begin());
}

std::uint32_t ModulusSet::mask_of(const std::vector<std::int64_t>& subset) const {
  std::uint32_t mask = 0;
  for (auto q : subset) mask |= 1u << axis_of(q);
  return mask;
}

std::vector<std::int64_t> ModulusSet::subset_of(std::uint32_t mask) const {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < moduli_.size(); ++k)
    if (mask >> k & 1u) out.push_back(moduli_[k]);
  return out;
}

ModulusSet ModulusSet::restrict_to(std::uint32_t mask) const { return ModulusSet(subset_of(mask)); }

std::int64_t ModulusSet::stride(std::size_t axis) const {
  std::int64_t s = 1;
  for (std::size_t k = axis + 1; k < moduli_.size(); ++k) s *= moduli_[k];
  return s;
}

std::vector<std::int64_t> ModulusSet::coordinates(std::int64_t index) const {
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t k = moduli_.size(); k-- > 0;) {
    c[k] = index % moduli_[k];
    index /= moduli_[k];
  }
  return c;
}

std::int64_t ModulusSet::index(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != moduli_.size()) throw Error(ErrorKind::InvalidArgument, "coordinate count mismatch");
  std::int64_t idx = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) idx = idx * moduli_[k] + mod_floor(coords[k], moduli_[k]);
  return idx;
}

std::int64_t ModulusSet::index_of_integer(std::int64_t x) const {
  std::int64_t idx = 0;
  for (auto q : moduli_) idx = idx * q + mod_floor(x, q);
  return idx;
}

std::uint32_t Frequency::support_mask() const {
  std::uint32_t m = 0;
  for (std::size_t k = 0; k < residues.size(); ++k)
    if (residues[k] != 0) m |= 1u << k;
  return m;
}

int Frequency::weight() const { return std::popcount(support_mask()); }

GroupFunction::GroupFunction(ModulusSet q, Eigen::VectorXcd values) : q_(std::move(q)), values_(std::move(values)) {
  const auto n = q_.order();
  if (n > kDenseCap) throw Error(ErrorKind::CapExceeded, "|G_Q| = " + std::to_string(n) + " exceeds dense cap");
  if (values_.size() != n) throw Error(ErrorKind::InvalidArgument, "value array length differs from |G_Q|");
  if (!values_.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite value");
}

GroupFunction GroupFunction::zeros(const ModulusSet& q) {
  return constant(q, Complex(0.0));
}

GroupFunction GroupFunction::constant(const ModulusSet& q, Complex value) {
  const auto n = q.order();
  if (n > kDenseCap) throw Error(ErrorKind::CapExceeded, "|G_Q| exceeds dense cap");
  return GroupFunction(q, Eigen::VectorXcd::Constant(n, value));
}

GroupFunction GroupFunction::from_callable(const ModulusSet& q,
                                           const std::function<Complex(const std::vector<std::int64_t>&)>& fn) {
  auto f = zeros(q);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.values()[i] = fn(q.coordinates(i));
  return f;
}

Complex unit_phase(long double t) {
  long double frac = t - std::floor(t);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * frac;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Eigen::VectorXcd dft(const ModulusSet& q, const Eigen::VectorXcd& values, Direction direction) {
  const auto n = q.order();
  if (values.size() != n) throw Error(ErrorKind::InvalidArgument, "value array length differs from |G_Q|");
  Eigen::VectorXcd cur = values;
  Eigen::VectorXcd next(n);
  const double sign = direction == Direction::Forward ? -1.0 : 1.0;
  for (std::size_t axis = 0; axis < q.size(); ++axis) {
    const auto m = q[axis];
    const auto s = q.stride(axis);
    std::vector<Complex> twiddle(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) twiddle[static_cast<std::size_t>(k)] = unit_phase(sign * static_cast<long double>(k) / m);
    const double scale = direction == Direction::Forward ? 1.0 / static_cast<double>(m) : 1.0;
    const auto block = m * s;
    for (std::int64_t base = 0; base < n; base += block)
      for (std::int64_t j = 0; j < s; ++j)
        for (std::int64_t a = 0; a < m; ++a) {
          Complex acc = 0;
          for (std::int64_t b = 0; b < m; ++b)
            acc += cur[base + b * s + j] * twiddle[static_cast<std::size_t>((a * b) % m)];
          next[base + a * s + j] = acc * scale;
        }
    cur.swap(next);
  }
  return cur;
}

GroupFunction inverse_dft(const ModulusSet& q, const Eigen::VectorXcd& coefficients) {
  return GroupFunction(q, dft(q, coefficients, Direction::Inverse));
}

std::vector<std::uint32_t> support_masks(const ModulusSet& q) {
  const auto n = q.order();
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
  for (std::size_t axis = 0; axis < q.size(); ++axis) {
    const auto m = q[axis];
    const auto s = q.stride(axis);
    for (std::int64_t i = 0; i < n; ++i)
      if ((i / s) % m != 0) masks[static_cast<std::size_t>(i)] |= 1u << axis;
  }
  return masks;
}

double l2_norm(const GroupFunction& f) {
  return std::sqrt(f.values().squaredNorm() / static_cast<double>(f.size()));
}

double moment(const GroupFunction& f, double p) {
  return f.values().cwiseAbs().array().pow(p).mean();
}

Complex mean(const GroupFunction& f) { return f.values().mean(); }

}  // namespace sdf
