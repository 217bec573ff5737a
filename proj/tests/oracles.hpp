#pragma once

// Reference implementations written independently of the library, used
// as oracles by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline bool is_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// Greedy rule: add n when no chosen element differs from it by a positive square.
inline std::vector<std::int64_t> greedy(std::int64_t limit) {
  std::vector<std::int64_t> chosen;
  std::vector<char> in(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t n = 0; n <= limit; ++n) {
    bool ok = true;
    for (std::int64_t t = 1; t * t <= n && ok; ++t) ok = !in[static_cast<std::size_t>(n - t * t)];
    if (ok) {
      in[static_cast<std::size_t>(n)] = 1;
      chosen.push_back(n);
    }
  }
  return chosen;
}

// s(X) by enumerating all 2^X subsets of {1..X}.
inline int max_sdf_bruteforce(int x) {
  std::vector<std::uint32_t> bad;  // pair masks at square distance
  for (int a = 1; a <= x; ++a)
    for (int b = a + 1; b <= x; ++b)
      if (is_square(b - a)) bad.push_back((1u << (a - 1)) | (1u << (b - 1)));
  int best = 0;
  for (std::uint32_t m = 0; m < (1u << x); ++m) {
    const int pc = __builtin_popcount(m);
    if (pc <= best) continue;
    bool ok = true;
    for (auto e : bad)
      if ((m & e) == e) {
        ok = false;
        break;
      }
    if (ok) best = pc;
  }
  return best;
}

// Naive DFT on Z/q1 x ... x Z/qk, row-major with the last axis fastest.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::int64_t>& q,
                                                   const std::vector<std::complex<double>>& f) {
  const std::size_t n = f.size();
  auto coords = [&](std::size_t idx) {
    std::vector<std::int64_t> c(q.size());
    for (std::size_t k = q.size(); k-- > 0;) {
      c[k] = static_cast<std::int64_t>(idx) % q[k];
      idx /= static_cast<std::size_t>(q[k]);
    }
    return c;
  };
  std::vector<std::complex<double>> out(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    const auto cxi = coords(xi);
    std::complex<double> acc = 0;
    for (std::size_t x = 0; x < n; ++x) {
      const auto cx = coords(x);
      double t = 0;
      for (std::size_t k = 0; k < q.size(); ++k)
        t += static_cast<double>((cxi[k] * cx[k]) % q[k]) / static_cast<double>(q[k]);
      acc += f[x] * std::polar(1.0, -2 * std::numbers::pi * t);
    }
    out[xi] = acc / static_cast<double>(n);
  }
  return out;
}

inline std::complex<double> e(double t) { return std::polar(1.0, 2 * std::numbers::pi * (t - std::floor(t))); }

}  // namespace oracle
