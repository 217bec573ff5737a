#include "oracles.hpp"
#include "sdf/level_d.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace sdf;

namespace {

std::vector<Complex> random_values(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(d(rng), d(rng));
  return v;
}

}  // namespace

TEST_CASE("lift normalization") {
  const ModulusSet q({5, 7});
  const Progression p{1, 1, 20};
  const auto one = lift(p, 20, q, std::vector<Complex>(20, 1.0));
  CHECK(std::abs(mean(one) - 1.0) < 1e-14);
  std::vector<Complex> delta(20, 0.0);
  delta[12] = 1.0;  // the point 13
  const auto l = lift(p, 20, q, delta);
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    const double expect = i == q.index_of_integer(13) ? 35.0 / 20.0 : 0.0;
    CHECK(std::abs(l[i] - expect) < 1e-14);
  }
}

TEST_CASE("lift preconditions") {
  CHECK_THROWS_AS(lift({1, 1, 40}, 40, ModulusSet({5, 7}), std::vector<Complex>(40, 1.0)), Error);
  CHECK_THROWS_AS(lift({1, 5, 4}, 20, ModulusSet({5, 7}), std::vector<Complex>(4, 1.0)), Error);
  CHECK_NOTHROW(lift({2, 3, 6}, 20, ModulusSet({5, 7}), std::vector<Complex>(6, 1.0)));
}

TEST_CASE("lifted coefficients are exponential sums on the progression") {
  std::mt19937_64 rng(11);
  const ModulusSet q({5, 7});
  for (const Progression& p : {Progression{1, 1, 20}, Progression{3, 2, 9}}) {
    const auto values = random_values(static_cast<std::size_t>(p.length), rng);
    const auto hat = dft(lift(p, 20, q, values));
    double worst = 0, scale = 0;
    for (Eigen::Index i = 0; i < hat.size(); ++i) {
      const auto c = q.coordinates(i);
      // E_{x in P} f(x) e(-(c0/5 + c1/7) x), summed here directly.
      Complex direct = 0;
      for (std::int64_t k = 0; k < p.length; ++k) {
        const auto x = p.at(k);
        direct += values[static_cast<std::size_t>(k)] * oracle::e(-(c[0] * x / 5.0 + c[1] * x / 7.0));
      }
      direct /= static_cast<double>(p.length);
      worst = std::max(worst, std::abs(hat(i) - direct));
      scale = std::max(scale, std::abs(direct));
      CHECK(std::abs(progression_coefficient(p, q, values, Frequency{{c[0], c[1]}}) - direct) < 1e-12 * (1 + scale));
    }
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("restriction residual") {
  // eta = |G_Q| |P'| / (|P| |G_T| |G_{Q \ S}|) - 1, counted here directly.
  auto expected_eta = [](std::int64_t x, std::int64_t g_q, std::int64_t g_t, std::int64_t g_rest,
                         const std::function<bool(std::int64_t)>& in_p_prime) {
    std::int64_t count = 0;
    for (std::int64_t v = 1; v <= x; ++v) count += in_p_prime(v);
    return static_cast<double>(g_q * count) / static_cast<double>(x * g_t * g_rest) - 1.0;
  };
  ResidualConfig c;
  c.progression = {1, 1, 100};
  c.universe = 100;
  c.moduli = ModulusSet({3, 5, 7, 11});
  c.regime = Regime::Relaxed;
  const auto empty = restriction_residual(c);
  CHECK(empty.eta == 0.0);
  CHECK(empty.max_mismatch < 1e-12);

  c.s = {3};
  c.t = {3};
  c.point = {1};
  const auto same = restriction_residual(c);
  CHECK(same.restricted == c.progression);
  CHECK(std::abs(same.eta) < 1e-12);
  CHECK(same.max_mismatch < 1e-12);

  c.t = {};
  const auto r = restriction_residual(c);
  CHECK(r.restricted.length == 34);
  CHECK(r.eta == doctest::Approx(expected_eta(100, 1155, 1, 385, [](std::int64_t v) { return v % 3 == 1; })));
  CHECK(r.max_mismatch < 1e-12);
  CHECK(r.basis == "delta");

  c.progression = {1, 1, 70};
  c.universe = 70;
  c.s = {3, 5};
  c.t = {5};
  c.point = {1, 2};
  const auto r2 = restriction_residual(c);
  CHECK(r2.eta == doctest::Approx(expected_eta(70, 1155, 5, 77, [](std::int64_t v) { return v % 3 == 1; })));
  CHECK(r2.max_mismatch < 1e-12);

  c.regime = Regime::Strict;
  CHECK_THROWS_AS(restriction_residual(c), Error);
}

TEST_CASE("moment comparison") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Complex> f(50);
  for (auto& v : f) v = sign(rng) ? 1.0 : -1.0;
  const auto r = lem32_compare({1, 1, 50}, 50, ModulusSet({3, 5, 7}), f, 1, 1, Regime::Relaxed);
  CHECK(r.pass);
  CHECK(r.lhs <= r.rhs);
  const auto r0 = lem32_compare({1, 1, 50}, 50, ModulusSet({3, 5, 7}), f, 0, 1, Regime::Relaxed);
  CHECK(std::abs(r0.lhs - (r0.rhs - r0.slack)) <= 1e-12 * (1 + r0.lhs));
}
