#include "sdf/lower_bound.hpp"

#include "sdf/circle.hpp"
#include "sdf/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sdf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t legendre(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, base = mod_floor(a, p), e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result == 1 ? 1 : (result == 0 ? 0 : -1);
}

Rational pow_rational(const Rational& base, std::int64_t e) {
  Rational r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

struct Candidate {
  double eps_raw;
  double eps;
  std::int64_t m;
};

Candidate parameters_at(double t, double c, Regime regime) {
  const double eps_raw = c * std::sqrt(std::log(t)) * std::pow(t, -0.25);
  const double eps = regime == Regime::Relaxed ? std::min(1.0, eps_raw) : eps_raw;
  return {eps_raw, eps, static_cast<std::int64_t>(std::floor(t / (4.0 * std::log(t))))};
}

bool alpha_window(double alpha, const Candidate& k) {
  const double mean = std::pow(1.0 + k.eps, -static_cast<double>(k.m));
  return alpha <= mean && mean <= 2 * alpha;
}

}  // namespace

std::int64_t qnr_find(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  for (std::int64_t s = 2;; ++s)
    if (legendre(s, p) == -1) return s;
}

PrimeLocalWeight::PrimeLocalWeight(std::int64_t p, double eps) : p_(p), eps_(eps) {
  if (!is_prime(p) || p % 4 != 1) throw Error(ErrorKind::BadPrimeClass, std::to_string(p) + " is not a prime = 1 mod 4");
  if (!(eps >= 0 && eps <= 1)) throw Error(ErrorKind::InvalidArgument, "eps must lie in [0, 1]");
  s_ = qnr_find(p);
}

double PrimeLocalWeight::value(std::int64_t x) const {
  const auto r = mul_mod(s_, mod_floor(x, p_), p_);
  return (1.0 - eps_ * std::cos(kTwoPi * static_cast<double>(r) / static_cast<double>(p_))) / (1.0 + eps_);
}

double PrimeLocalWeight::fourier(std::int64_t r) const {
  const auto rr = mod_floor(r, p_);
  double v = 0;
  if (rr == 0) v += 1;
  if (rr == s_) v -= eps_ / 2;
  if (rr == p_ - s_) v -= eps_ / 2;
  return v / (1.0 + eps_);
}

double PrimeLocalWeight::dft_mismatch() const {
  Eigen::VectorXcd values(p_);
  for (std::int64_t x = 0; x < p_; ++x) values(x) = value(x);
  const Eigen::VectorXcd hat = dft(ModulusSet({p_}), values, Direction::Forward);
  double worst = 0;
  for (std::int64_t r = 0; r < p_; ++r) worst = std::max(worst, std::abs(hat(r) - fourier(r)));
  return worst;
}

PrimeLocalWeight psi_p_build(std::int64_t p, double eps) { return PrimeLocalWeight(p, eps); }

SquareCorrelation square_correlation(std::int64_t p, double eps, Regime regime) {
  const PrimeLocalWeight w(p, eps);
  SquareCorrelation out;
  out.p = p;
  out.eps = eps;
  out.in_regime = eps >= 4.0 * std::pow(static_cast<double>(p), -0.25);
  if (!out.in_regime && regime == Regime::Strict)
    throw Error(ErrorKind::EpsilonTooSmall, "eps < 4 p^{-1/4} for p = " + std::to_string(p));

  std::vector<double> psi(static_cast<std::size_t>(p));
  std::vector<char> square(static_cast<std::size_t>(p), 0);
  for (std::int64_t x = 0; x < p; ++x) {
    psi[static_cast<std::size_t>(x)] = w.value(x);
    square[static_cast<std::size_t>(mul_mod(x, x, p))] = 1;
  }
  // Sum over d of 1_sq(d) times the autocorrelation of psi at d.
  long double total = 0;
  for (std::int64_t d = 0; d < p; ++d) {
    if (!square[static_cast<std::size_t>(d)]) continue;
    long double corr = 0;
    for (std::int64_t x = 0; x < p; ++x)
      corr += psi[static_cast<std::size_t>(x)] * psi[static_cast<std::size_t>((x - d + p) % p)];
    total += corr;
  }
  out.direct = static_cast<double>(total / (static_cast<long double>(p) * p));

  long double ident = 0;
  for (std::int64_t r = 0; r < p; ++r) {
    const double h = w.fourier(r);
    if (h != 0) ident += static_cast<long double>(h) * h * square_indicator_fourier(r, p).real();
  }
  out.identity = static_cast<double>(ident);
  out.bound = w.mean() * w.mean() * 0.5 * (1.0 - eps * eps / (8.0 * std::sqrt(static_cast<double>(p))));
  out.pass = out.direct <= out.bound * (1 + 1e-12);
  return out;
}

std::vector<std::int64_t> primes_one_mod_four(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  if (hi < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(hi) + 1, 0);
  for (std::int64_t i = 2; i * i <= hi; ++i)
    if (!composite[static_cast<std::size_t>(i)])
      for (std::int64_t j = i * i; j <= hi; j += i) composite[static_cast<std::size_t>(j)] = 1;
  for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n)
    if (!composite[static_cast<std::size_t>(n)] && n % 4 == 1) out.push_back(n);
  return out;
}

LowerBoundFunction::LowerBoundFunction(std::int64_t big_x, Rational alpha, Rational c, Rational eps,
                                       std::vector<std::int64_t> primes, LowerBoundTrace trace)
    : x_(big_x), n_(1), alpha_(std::move(alpha)), c_(std::move(c)), eps_(std::move(eps)), primes_(std::move(primes)),
      trace_(std::move(trace)) {
  for (auto p : primes_) n_ *= p;
  if (n_ > x_) throw Error(ErrorKind::Infeasible, "N exceeds X");
  const double e = to_double(eps_);
  std::vector<PrimeLocalWeight> local;
  for (auto p : primes_) local.emplace_back(p, e);
  psi_.assign(static_cast<std::size_t>(n_), 1.0);
  for (const auto& w : local) {
    std::vector<double> table(static_cast<std::size_t>(w.p()));
    for (std::int64_t r = 0; r < w.p(); ++r) table[static_cast<std::size_t>(r)] = w.value(r);
    for (std::int64_t x = 0; x < n_; ++x) psi_[static_cast<std::size_t>(x)] *= table[static_cast<std::size_t>(x % w.p())];
  }
}

double LowerBoundFunction::value(std::int64_t x) const {
  if (x < 1 || x > x_) throw Error(ErrorKind::OutOfUniverse, "x outside [1, X]");
  if (x <= periodic_end()) return to_double(c_) * psi_at(x % n_);
  return to_double(alpha_);
}

std::vector<double> LowerBoundFunction::values() const {
  std::vector<double> out(static_cast<std::size_t>(x_));
  const double c = to_double(c_), a = to_double(alpha_);
  const auto end = periodic_end();
  for (std::int64_t x = 1; x <= x_; ++x)
    out[static_cast<std::size_t>(x - 1)] = x <= end ? c * psi_[static_cast<std::size_t>(x % n_)] : a;
  return out;
}

Rational LowerBoundFunction::psi_mean_exact() const {
  return Rational(1) / pow_rational(Rational(1) + eps_, static_cast<std::int64_t>(primes_.size()));
}

LowerBoundFunction build_lower_bound(std::int64_t big_x, const Rational& alpha, const LowerBoundParams& params) {
  if (big_x < 2) throw Error(ErrorKind::InvalidArgument, "X must be >= 2");
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (!(params.c > 0)) throw Error(ErrorKind::InvalidArgument, "C must be positive");
  const bool strict = params.regime == Regime::Strict;
  const double a = to_double(alpha);
  LowerBoundTrace trace;
  trace.c_constant = params.c;

  double t = 0;
  if (params.t) {
    t = *params.t;
    if (!(t >= 3)) throw Error(ErrorKind::InvalidArgument, "T must be >= 3");
  } else {
    for (double cand = 3; cand <= 1e6 && t == 0; cand += 1) {
      const auto k = parameters_at(cand, params.c, params.regime);
      if (k.m >= 1 && k.eps <= 1 && alpha_window(a, k)) t = cand;
    }
    if (t == 0) throw Error(ErrorKind::Infeasible, "no T with alpha <= (1 + eps)^{-M} <= 2 alpha");
  }
  const auto k = parameters_at(t, params.c, params.regime);
  trace.t = t;
  trace.eps_raw = k.eps_raw;
  trace.m = k.m;
  trace.eps_clamped = k.eps_raw > 1;
  if (k.m < 1) throw Error(ErrorKind::Infeasible, "M = floor(T / 4 log T) is zero");
  if (k.eps > 1) throw Error(ErrorKind::Infeasible, "eps = " + std::to_string(k.eps) + " exceeds 1");
  auto note = [&](const std::string& what) {
    if (strict) throw Error(ErrorKind::Infeasible, what);
    trace.violated.push_back(what);
  };
  if (t < std::pow(params.c, 4)) note("T >= C^4");
  if (!alpha_window(a, k)) note("alpha <= (1 + eps)^{-M} <= 2 alpha");
  if (trace.eps_clamped) trace.violated.push_back("eps clamped to 1");

  const auto window = primes_one_mod_four(static_cast<std::int64_t>(std::ceil(t)), static_cast<std::int64_t>(std::floor(2 * t)));
  trace.primes.assign(window.begin(), window.begin() + std::min<std::size_t>(window.size(), static_cast<std::size_t>(k.m)));
  if (static_cast<std::int64_t>(trace.primes.size()) < k.m) {
    if (strict || trace.primes.empty())
      throw Error(ErrorKind::Infeasible, "fewer than M primes = 1 mod 4 in [T, 2T]");
    trace.violated.push_back("M primes = 1 mod 4 in [T, 2T]");
  }

  // N < X^{1/10}; the relaxed reading keeps the longest prefix with N <= X.
  std::vector<std::int64_t> used;
  std::int64_t n = 1;
  for (auto p : trace.primes) {
    if (static_cast<double>(n) * static_cast<double>(p) > static_cast<double>(big_x)) break;
    n *= p;
    used.push_back(p);
  }
  const bool n_small = used.size() == trace.primes.size() &&
                       std::log(static_cast<double>(n)) < 0.1 * std::log(static_cast<double>(big_x));
  if (!n_small) {
    if (strict) throw Error(ErrorKind::Infeasible, "N < X^{1/10}");
    if (used.empty()) throw Error(ErrorKind::Infeasible, "smallest prime exceeds X");
    trace.violated.push_back("N < X^{1/10}");
  }
  trace.truncated = used.size() < trace.primes.size();
  trace.m_used = static_cast<std::int64_t>(used.size());

  constexpr std::int64_t kDyadic = 1 << 20;
  trace.eps = Rational(static_cast<std::int64_t>(std::llround(k.eps * kDyadic)), kDyadic);
  const Rational c = alpha * pow_rational(Rational(1) + trace.eps, trace.m_used);
  if (c > 1) throw Error(ErrorKind::Infeasible, "c = alpha (1 + eps)^M exceeds 1");
  if (c < Rational(1, 2)) note("c in [1/2, 1]");
  return LowerBoundFunction(big_x, alpha, c, trace.eps, used, std::move(trace));
}

WindowHit longest_dense_run(const std::vector<double>& terms, double threshold) {
  const std::size_t n = terms.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (terms[i] - threshold);
  std::vector<double> left_min(n + 1), right_max(n + 1);
  left_min[0] = prefix[0];
  for (std::size_t i = 1; i <= n; ++i) left_min[i] = std::min(left_min[i - 1], prefix[i]);
  right_max[n] = prefix[n];
  for (std::size_t i = n; i-- > 0;) right_max[i] = std::max(right_max[i + 1], prefix[i]);
  const double tol = 1e-12 * static_cast<double>(n + 1);
  WindowHit best;
  std::size_t i = 0, j = 0;
  while (i <= n && j <= n) {
    if (right_max[j] - left_min[i] >= -tol) {
      if (j > i && j - i > static_cast<std::size_t>(best.length)) {
        best.start = static_cast<std::int64_t>(i);
        best.length = static_cast<std::int64_t>(j - i);
      }
      ++j;
    } else {
      ++i;
    }
  }
  if (best.length > 0) {
    // left_min/right_max give the optimal length; locate the earliest start attaining it.
    const auto len = static_cast<std::size_t>(best.length);
    for (std::size_t s = 0; s + len <= n; ++s)
      if (prefix[s + len] - prefix[s] >= -tol) {
        best.start = static_cast<std::int64_t>(s);
        best.density = (prefix[s + len] - prefix[s]) / static_cast<double>(len) + threshold;
        break;
      }
  }
  return best;
}

LowerBoundReport verify_lb_properties(const LowerBoundFunction& f, const VerifyOptions& options) {
  const auto big_x = f.x();
  if (big_x > options.max_x) throw Error(ErrorKind::CapExceeded, "X above the enumeration cap");
  LowerBoundReport r;
  const auto v = f.values();
  const double alpha = to_double(f.alpha());
  const double x = static_cast<double>(big_x);
  const auto n = f.n();
  const auto k = big_x / n;
  const auto m = static_cast<std::int64_t>(f.primes().size());
  const double eps = to_double(f.eps());

  r.mean_exact = (f.c() * f.psi_mean_exact() * Rational(k * n) + f.alpha() * Rational(big_x - k * n)) / Rational(big_x);
  long double sum = 0;
  for (auto value : v) sum += value;
  r.mean_numeric = static_cast<double>(sum / big_x);
  r.prop1 = r.mean_exact == f.alpha() && std::abs(r.mean_numeric - alpha) <= 1e-12 * alpha;

  long double count = 0;
  for (std::int64_t t = 1; t * t < big_x; ++t) {
    const auto d = static_cast<std::size_t>(t * t);
    for (std::size_t y = 0; y + d < v.size(); ++y) count += v[y] * v[y + d];
  }
  r.square_count = static_cast<double>(count);
  r.square_ratio = r.square_count / (alpha * alpha * std::pow(x, 1.5));
  r.square_bound = alpha * alpha * std::pow(x, 1.5) / 100.0;
  r.prop2 = r.square_count <= r.square_bound;

  const double mean_psi = to_double(f.psi_mean_exact());
  r.avg_squares = 1;
  r.avg_squares_product = std::pow(0.5, static_cast<double>(m)) * mean_psi * mean_psi;
  for (auto p : f.primes()) {
    r.per_prime.push_back(square_correlation(p, eps, Regime::Relaxed));
    r.avg_squares *= r.per_prime.back().direct;
    r.avg_squares_product *= 1.0 - eps * eps / (8.0 * std::sqrt(static_cast<double>(p)));
  }
  r.avg_squares_pass = r.avg_squares <= r.avg_squares_product * (1 + 1e-12);
  if (n <= options.direct_n_cap) {
    std::vector<char> square(static_cast<std::size_t>(n), 0);
    for (std::int64_t t = 0; t < n; ++t) square[static_cast<std::size_t>(mul_mod(t, t, n))] = 1;
    const auto& psi = f.psi();
    long double total = 0;
    for (std::int64_t d = 0; d < n; ++d) {
      if (!square[static_cast<std::size_t>(d)]) continue;
      long double corr = 0;
      for (std::int64_t y = 0; y < n; ++y)
        corr += psi[static_cast<std::size_t>(y)] * psi[static_cast<std::size_t>((y + d) % n)];
      total += corr;
    }
    r.avg_squares_direct = static_cast<double>(total / (static_cast<long double>(n) * n));
  }

  const double target = 2 * alpha;
  r.window_length = static_cast<std::int64_t>(std::ceil(x * std::exp(-std::cbrt(std::log(1.0 / alpha)))));
  const auto len = r.window_length;
  for (std::int64_t d = 1; len == 1 ? d <= 1 : d * (len - 1) <= big_x - 1; ++d) {
    for (std::int64_t start = 1; start <= d && start + d * (len - 1) <= big_x; ++start) {
      long double acc = 0;
      std::int64_t terms = 0, first = start;
      for (std::int64_t y = start; y <= big_x; y += d) {
        acc += v[static_cast<std::size_t>(y - 1)];
        if (++terms > len) {
          acc -= v[static_cast<std::size_t>(first - 1)];
          first += d;
          --terms;
        }
        if (terms == len) {
          const double dens = static_cast<double>(acc / len);
          r.window_max_density = std::max(r.window_max_density, dens);
          if (dens >= target && !r.violating) r.violating = WindowHit{first, d, len, dens};
        }
      }
    }
  }
  r.prop3 = !r.violating;

  // Longest dense window over small steps and every step built from the primes.
  std::vector<std::int64_t> steps;
  for (std::int64_t d = 1; d <= std::min(options.small_step_cap, big_x); ++d) steps.push_back(d);
  for (std::int64_t mask = 1; mask < (std::int64_t{1} << m) && m <= 16; ++mask) {
    std::int64_t d = 1;
    for (std::int64_t i = 0; i < m; ++i)
      if (mask >> i & 1) d *= f.primes()[static_cast<std::size_t>(i)];
    steps.push_back(d);
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  r.longest_steps = steps;
  for (auto d : steps) {
    for (std::int64_t start = 1; start <= std::min(d, big_x); ++start) {
      std::vector<double> terms;
      for (std::int64_t y = start; y <= big_x; y += d) terms.push_back(v[static_cast<std::size_t>(y - 1)]);
      if (static_cast<std::int64_t>(terms.size()) <= r.longest.length) continue;
      auto hit = longest_dense_run(terms, target);
      if (hit.length > r.longest.length) r.longest = {start + hit.start * d, d, hit.length, hit.density};
    }
  }

  // Class averages of psi_N modulo every product of the primes.
  r.congruence_pass = true;
  const auto& psi = f.psi();
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << m) && m <= 16; ++mask) {
    CongruenceCheck c;
    std::int64_t q = 1;
    for (std::int64_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        c.subset.push_back(f.primes()[static_cast<std::size_t>(i)]);
        q *= f.primes()[static_cast<std::size_t>(i)];
      }
    std::vector<long double> sums(static_cast<std::size_t>(q), 0);
    for (std::int64_t y = 0; y < n; ++y) sums[static_cast<std::size_t>(y % q)] += psi[static_cast<std::size_t>(y)];
    for (auto s : sums) c.max_average = std::max(c.max_average, static_cast<double>(s * q / n));
    c.bound = std::pow(1.0 + eps, static_cast<double>(static_cast<std::int64_t>(c.subset.size()) - m));
    c.pass = c.max_average <= c.bound * (1 + 1e-9);
    r.congruence_pass = r.congruence_pass && c.pass;
    r.congruence.push_back(std::move(c));
  }
  return r;
}

}  // namespace sdf
