#include "oracles.hpp"
#include "sdf/operators.hpp"

#include <doctest.h>

#include <random>

using namespace sdf;

namespace {

GroupFunction random_function(const ModulusSet& q, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(q.order());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(n(rng), n(rng));
  return GroupFunction(q, v);
}

double max_diff(const GroupFunction& a, const GroupFunction& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

// Conditional mean over the S coordinates, written with explicit coordinates.
GroupFunction average_oracle(const std::vector<std::int64_t>& s, const GroupFunction& f) {
  const auto& q = f.modulus_set();
  return GroupFunction::from_callable(q, [&](const std::vector<std::int64_t>& x) {
    Complex acc = 0;
    std::int64_t count = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      const auto y = q.coordinates(i);
      bool same = true;
      for (std::size_t k = 0; k < q.size(); ++k)
        if (std::find(s.begin(), s.end(), q[k]) == s.end() && y[k] != x[k]) same = false;
      if (same) {
        acc += f[i];
        ++count;
      }
    }
    return acc / static_cast<double>(count);
  });
}

}  // namespace

TEST_CASE("modulus sets") {
  CHECK_THROWS_AS(ModulusSet({4, 6}), Error);
  CHECK_THROWS_AS(ModulusSet({1, 5}), Error);
  const ModulusSet q({7, 3, 5});
  CHECK(q.moduli() == std::vector<std::int64_t>{3, 5, 7});
  CHECK(q.order() == 105);
  CHECK(q.axis_of(5) == 1);
  CHECK_THROWS_AS(q.axis_of(11), Error);
  for (std::int64_t x = 0; x < 105; ++x) {
    const auto c = q.coordinates(q.index_of_integer(x));
    CHECK(c == std::vector<std::int64_t>{x % 3, x % 5, x % 7});
  }
  CHECK(ModulusSet().order() == 1);
}

TEST_CASE("frequency weight and support") {
  Frequency xi{{0, 2, 1}};
  CHECK(xi.weight() == 2);
  CHECK(xi.support_mask() == 0b110u);
}

TEST_CASE("dft against a naive transform") {
  std::mt19937_64 rng(1);
  for (const auto& moduli : {std::vector<std::int64_t>{6}, {2, 3}, {3, 4, 5}, {5, 7}}) {
    const ModulusSet q(moduli);
    const auto f = random_function(q, rng);
    std::vector<Complex> raw(f.values().data(), f.values().data() + f.size());
    const auto expect = oracle::naive_dft(q.moduli(), raw);
    const auto got = dft(f);
    for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(std::abs(got(i) - expect[static_cast<std::size_t>(i)]) < 1e-12);
    const auto back = inverse_dft(q, got);
    CHECK(max_diff(back, f) < 1e-12 * f.values().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("dft examples") {
  const ModulusSet q({2, 3});
  const auto one = dft(GroupFunction::constant(q, 1.0));
  CHECK(std::abs(one(0) - 1.0) < 1e-15);
  for (Eigen::Index i = 1; i < 6; ++i) CHECK(std::abs(one(i)) < 1e-15);
  auto delta = GroupFunction::zeros(q);
  delta.values()(0) = 1.0;
  const auto hat = dft(delta);
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(std::abs(hat(i) - 1.0 / 6) < 1e-15);
}

TEST_CASE("parseval") {
  std::mt19937_64 rng(2);
  const ModulusSet q({3, 4, 5, 7});
  const auto f = random_function(q, rng);
  const double lhs = dft(f).squaredNorm();
  const double rhs = l2_norm(f) * l2_norm(f);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
}

TEST_CASE("multiplier examples") {
  std::mt19937_64 rng(3);
  const ModulusSet q({2, 3});
  const auto f = random_function(q, rng);
  const auto w0 = apply_multiplier(Level{0}, f);
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(std::abs(w0[i] - mean(f)) < 1e-12);
  CHECK(max_diff(apply_multiplier(Noise{1.0}, f), f) < 1e-12);
  auto delta = GroupFunction::zeros(q);
  delta.values()(0) = 1.0;
  CHECK(std::abs(apply_multiplier(Level{1}, delta)[0] - 0.5) < 1e-12);
  CHECK(apply_multiplier(Level{-1}, f).values().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(apply_multiplier(Average{{5}}, f), Error);
}

TEST_CASE("levels decompose the identity") {
  std::mt19937_64 rng(4);
  const ModulusSet q({3, 4, 5});
  const auto f = random_function(q, rng);
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(f.size());
  for (int d = 0; d <= 3; ++d) total += apply_multiplier(Level{d}, f).values();
  CHECK((total - f.values()).cwiseAbs().maxCoeff() < 1e-12);
  const auto w1w2 = apply_multiplier(Level{1}, apply_multiplier(Level{2}, f));
  CHECK(w1w2.values().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("averages are conditional means") {
  std::mt19937_64 rng(5);
  const ModulusSet q({3, 4, 5});
  const auto f = random_function(q, rng);
  for (const auto& s : {std::vector<std::int64_t>{}, {3}, {4, 5}, {3, 4, 5}}) {
    const auto expect = average_oracle(s, f);
    CHECK(max_diff(average_over(s, f), expect) < 1e-12);
    CHECK(max_diff(apply_multiplier(Average{s}, f), expect) < 1e-12);
  }
}

TEST_CASE("derivative examples") {
  const ModulusSet q({2, 3});
  const auto c = GroupFunction::constant(q, 2.5);
  CHECK(derivative({3}, {1}, c).values().cwiseAbs().maxCoeff() < 1e-14);
  std::mt19937_64 rng(6);
  const auto f = random_function(q, rng);
  CHECK(max_diff(derivative({}, {}, f), f) < 1e-14);
  // A character e(xi.x) with xi = (1, 2): D_{{3}, x} keeps e(x_2 / 2) times e(2 x / 3).
  const auto chi = GroupFunction::from_callable(q, [](const std::vector<std::int64_t>& x) {
    return oracle::e(x[0] / 2.0 + 2.0 * x[1] / 3.0);
  });
  for (std::int64_t x = 0; x < 3; ++x) {
    const auto d = derivative({3}, {x}, chi);
    REQUIRE(d.size() == 2);
    for (std::int64_t y = 0; y < 2; ++y) CHECK(std::abs(d[y] - oracle::e(y / 2.0 + 2.0 * x / 3.0)) < 1e-12);
  }
}

TEST_CASE("global parameters") {
  const auto p0 = global_params(0.1, 0);
  CHECK(p0.r == 0.0);
  CHECK(p0.gamma == doctest::Approx(0.1));
  const auto p1 = global_params(std::exp(-1.0), 1);
  CHECK(p1.r == doctest::Approx(1.0));
  CHECK(p1.gamma == doctest::Approx(64.0 * std::exp(-1.0)));
  for (double alpha : {1e-3, 1e-6, 1e-12}) {
    const int dmax = static_cast<int>(std::log(1 / alpha) / 128);
    for (int d = 0; d <= dmax; ++d) CHECK(global_params(alpha, d).gamma >= alpha);
  }
}

TEST_CASE("globalness examples") {
  const ModulusSet q({2, 3});
  CHECK(globalness_check(GroupFunction::constant(q, 0.3), 0.0, 0.3).global);
  CHECK(globalness_check(GroupFunction::constant(q, 0.3), 5.0, 0.3).global);
  auto delta = GroupFunction::zeros(q);
  delta.values()(0) = 1.0;
  const auto rep = globalness_check(delta, 1.0, 0.01);
  CHECK_FALSE(rep.global);
  CHECK(rep.worst.norm > rep.worst.bound);
  // S = {} already violates: ||delta||_2 = 6^{-1/2} > gamma.
  CHECK(l2_norm(delta) == doctest::Approx(1 / std::sqrt(6.0)));
  CHECK_FALSE(globalness_check(delta, 0.0, 0.01).global);
  std::mt19937_64 rng(7);
  const auto f = random_function(q, rng);
  CHECK(globalness_check(f, 100.0, l2_norm(f)).global);
  const double g = fitted_gamma(f, 0.7);
  CHECK(globalness_check(f, 0.7, g * (1 + 1e-9)).global);
  CHECK_FALSE(globalness_check(f, 0.7, g * (1 - 1e-6)).global);
  CHECK_THROWS_AS(globalness_check(GroupFunction::zeros(ModulusSet({101, 103})), 1, 1), Error);
}
