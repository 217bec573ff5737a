#include "sdf/increment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sdf {
namespace {

using cd = std::complex<double>;

cd phase(long double t) {
  const long double frac = t - std::floor(t);
  return std::polar(1.0, static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac));
}

void require_inside(const IntegerSet& a, std::int64_t big_x) {
  if (big_x < 1) throw Error(ErrorKind::InvalidArgument, "X must be >= 1");
  if (!a.empty() && (a.elements().front() < 1 || a.elements().back() > big_x))
    throw Error(ErrorKind::OutOfUniverse, "A must lie in [1, " + std::to_string(big_x) + "]");
}

// Fourier coefficients f^(a/q + xi), a = 0..q-1, from the residue sums.
std::vector<cd> coset_coefficients(const BalancedFunction& f, std::int64_t q, double xi) {
  const auto s = f.residue_sums(q, xi);
  std::vector<cd> out(static_cast<std::size_t>(q));
  for (std::int64_t a = 0; a < q; ++a) {
    cd acc = 0;
    for (std::int64_t b = 0; b < q; ++b) acc += s[static_cast<std::size_t>(b)] * phase(-static_cast<long double>((a * b) % q) / q);
    out[static_cast<std::size_t>(a)] = acc;
  }
  return out;
}

Rational density_of(const std::vector<char>& member, std::int64_t start, std::int64_t step, std::int64_t length) {
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < length; ++i) hits += member[static_cast<std::size_t>(start + i * step)];
  return Rational(hits, length);
}

int clause_rank(IncrementClause c) {
  switch (c) {
    case IncrementClause::C2: return 0;
    case IncrementClause::C4: return 1;
    case IncrementClause::C3: return 2;
    case IncrementClause::Star: return 3;
    case IncrementClause::C1: return 4;
    case IncrementClause::Unclassified: return 5;
  }
  return 6;
}

}  // namespace

BalancedFunction::BalancedFunction(IntegerSet a, std::int64_t big_x) : x_(big_x) {
  require_inside(a, big_x);
  a_ = IntegerSet(a.elements(), big_x);
  alpha_ = Rational(static_cast<std::int64_t>(a_.size()), big_x);
  member_.assign(static_cast<std::size_t>(big_x) + 1, 0);
  for (auto e : a_.elements()) member_[static_cast<std::size_t>(e)] = 1;
}

Rational BalancedFunction::value(std::int64_t n) const {
  if (n < 1 || n > x_) return Rational(0);
  return Rational(member_[static_cast<std::size_t>(n)]) - alpha_;
}

Rational BalancedFunction::sum() const {
  Rational s = 0;
  for (std::int64_t n = 1; n <= x_; ++n) s += value(n);
  return s;
}

std::complex<double> BalancedFunction::fourier(double theta) const {
  const double alpha = alpha_value();
  cd acc = 0;
  for (std::int64_t n = 1; n <= x_; ++n)
    acc += (member_[static_cast<std::size_t>(n)] - alpha) * phase(-static_cast<long double>(theta) * n);
  return acc;
}

std::vector<std::complex<double>> BalancedFunction::residue_sums(std::int64_t q, double xi) const {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "q must be >= 1");
  const double alpha = alpha_value();
  std::vector<cd> s(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t n = 1; n <= x_; ++n)
    s[static_cast<std::size_t>(n % q)] += (member_[static_cast<std::size_t>(n)] - alpha) * phase(-static_cast<long double>(xi) * n);
  return s;
}

double weighted_square_count(const IntegerSet& a, std::int64_t big_x) {
  require_inside(a, big_x);
  const auto member = a.indicator();
  double total = 0;
  for (auto y : a.elements())
    for (std::int64_t t = 1; y + t * t <= a.universe(); ++t)
      if (member[static_cast<std::size_t>(y + t * t)]) total += 2.0 * square_weight(t * t, big_x);
  return total;
}

std::string_view to_string(IncrementClause clause) {
  switch (clause) {
    case IncrementClause::Star: return "*";
    case IncrementClause::C1: return "1";
    case IncrementClause::C2: return "2";
    case IncrementClause::C3: return "3";
    case IncrementClause::C4: return "4";
    case IncrementClause::Unclassified: return "unclassified";
  }
  return "unknown";
}

void classify(IncrementWitness& w, const Rational& alpha_r, std::int64_t big_x, const ClauseConstants& k) {
  const double alpha = to_double(alpha_r);
  const double x = static_cast<double>(big_x);
  const double len = static_cast<double>(w.progression.length);
  const double dens = to_double(w.measured);
  const double l = std::log(1.0 / alpha);
  w.satisfied.clear();
  if (alpha <= 0) {
    w.clause = IncrementClause::Unclassified;
    return;
  }
  const bool square_step = is_perfect_square(w.progression.step);
  // Largest k with density >= 2^k alpha; both length conditions weaken as k grows.
  int kmax = 0;
  while (w.measured >= alpha_r * Rational(BigInt(1) << (kmax + 1))) ++kmax;
  if (square_step) {
    if (kmax >= 1 && std::log(len) >= std::log(x) - k.big_c * kmax * l * l * l) w.satisfied.push_back(IncrementClause::C2);
    if (kmax >= 1 && std::log(len) >= std::log(x) - 2.0 * kmax * std::log(3.0 * std::log(x)))
      w.satisfied.push_back(IncrementClause::C4);
    if (std::log(len) >= std::log(x) - k.big_c * std::log(l) && dens >= alpha * (1 + k.c / (l * l)))
      w.satisfied.push_back(IncrementClause::C3);
    if (std::log(len) >= k.big_c * std::log(alpha) + std::log(x) && dens >= alpha + std::pow(alpha, k.big_c) &&
        w.measured > alpha_r)
      w.satisfied.push_back(IncrementClause::Star);
  }
  w.clause = w.satisfied.empty() ? IncrementClause::Unclassified : w.satisfied.front();
}

bool reverify(const IncrementWitness& w, const IntegerSet& a, std::int64_t big_x) {
  const auto& p = w.progression;
  if (p.length < 1 || p.step < 1 || !is_perfect_square(p.step)) return false;
  if (p.start < 1 || p.last() > big_x) return false;
  const auto d = density_on_progression(IntegerSet(a.elements(), std::max(a.universe(), big_x)), p);
  return d == w.measured && d >= w.claimed;
}

double single_mass(const BalancedFunction& f, std::int64_t q, double xi) {
  double best = 0;
  for (auto v : coset_coefficients(f, q, xi)) best = std::max(best, std::abs(v));
  return best;
}

double l2_mass(const BalancedFunction& f, std::int64_t q, double xi) {
  double total = 0;
  for (auto v : coset_coefficients(f, q, xi)) total += std::norm(v);
  return total;
}

IncrementWitness extract_increment(const BalancedFunction& f, std::int64_t q, double xi, double eta,
                                   FourierCondition condition, const ClauseConstants& k) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "q must be >= 1");
  if (!(eta > 0 && eta <= 1)) throw Error(ErrorKind::InvalidArgument, "eta must lie in (0, 1]");
  const auto big_x = f.x();
  const double x = static_cast<double>(big_x);
  const double alpha = f.alpha_value();
  if (f.set().empty()) throw Error(ErrorKind::PreconditionFailed, "A is empty");

  // Spectra are approximate: accept masses within a 1e-6 relative band.
  const double mass = condition == FourierCondition::Single ? single_mass(f, q, xi) : l2_mass(f, q, xi);
  const double need = condition == FourierCondition::Single ? eta * alpha * x : eta * alpha * alpha * x * x;
  if (mass < need * (1 - 1e-6))
    throw Error(ErrorKind::PreconditionFailed,
                "measured Fourier mass " + std::to_string(mass) + " below required " + std::to_string(need));

  IncrementWitness w;
  w.q = q;
  w.xi = xi;
  w.eta = eta;
  const Rational eta_r = exact_rational(eta);
  const Rational floor_claim = (Rational(1) + eta_r / 20) * f.alpha();
  const double big_t = std::max(1.0, std::abs(xi) * x);
  const auto q2 = q * q;
  std::vector<char> member(static_cast<std::size_t>(big_x) + 1, 0);
  for (auto e : f.set().elements()) member[static_cast<std::size_t>(e)] = 1;

  auto finish = [&](Progression p, Rational claimed, std::string route) {
    w.progression = p;
    w.measured = density_on_progression(f.set(), p);
    w.claimed = std::move(claimed);
    w.route = std::move(route);
    classify(w, f.alpha(), big_x, k);
    return w;
  };

  if (static_cast<double>(q2) * big_t > eta * x / 1024.0)
    return finish({f.set().elements().front(), q2, 1}, floor_claim, "trivial");

  double eta_single = eta;
  std::string route = "single";
  if (condition == FourierCondition::L2) {
    const auto s = f.residue_sums(q, xi);
    for (std::int64_t b = 0; b < q; ++b) {
      if (std::abs(s[static_cast<std::size_t>(b)]) < 5.0 * alpha * x / static_cast<double>(q)) continue;
      // The class b mod q has density >= 2 alpha; so does one of its classes mod q^2.
      Progression best{};
      Rational best_d = -1;
      for (std::int64_t j = 0; j < q; ++j) {
        auto r = (b + j * q) % q2;
        auto start = r == 0 ? q2 : r;
        if (start > big_x) continue;
        Progression p{start, q2, (big_x - start) / q2 + 1};
        auto d = density_of(member, p.start, p.step, p.length);
        if (d > best_d) {
          best_d = d;
          best = p;
        }
      }
      if (best_d >= 2 * f.alpha()) return finish(best, 2 * f.alpha(), "l2-class");
    }
    eta_single = eta / 5;
    route = "l2-single";
  }

  // Near-equal blocks of length at most D = floor(eta X / (32 T)), each split
  // into its residue classes mod q^2; the earliest qualifying cell wins.
  const auto diameter = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(eta_single * x / (32.0 * big_t))));
  const auto blocks = (big_x + diameter - 1) / diameter;
  const Rational strong = (Rational(1) + exact_rational(eta_single) / 4) * f.alpha();
  for (const auto& target : {strong, floor_claim}) {
    for (std::int64_t i = 0; i < blocks; ++i) {
      const auto lo = 1 + i * big_x / blocks;
      const auto hi = (i + 1) * big_x / blocks;
      for (std::int64_t o = 0; o < q2 && lo + o <= hi; ++o) {
        const auto start = lo + o;
        const auto len = (hi - start) / q2 + 1;
        if (density_of(member, start, q2, len) >= target) return finish({start, q2, len}, target, route);
      }
    }
  }
  throw Error(ErrorKind::SearchExhausted, "no cell reaches density (1 + eta/20) alpha");
}

double shape_function(double log_x) {
  if (!(log_x >= 0)) throw Error(ErrorKind::InvalidArgument, "need X >= 1");
  return std::pow(log_x, 0.25) / std::sqrt(std::log(3.0 + log_x));
}

BoundPoint bound_curve(double big_x, double c0) {
  if (!(big_x >= 10)) throw Error(ErrorKind::InvalidArgument, "X must be >= 10");
  BoundPoint b;
  b.shape = shape_function(std::log(big_x));
  b.bound = big_x * std::exp(-c0 * b.shape);
  return b;
}

IncrementGap increment_gap(double log_x, double h) {
  if (!(h >= 0 && h <= log_x)) throw Error(ErrorKind::InvalidArgument, "need 0 <= h <= log X");
  IncrementGap g;
  g.lhs = shape_function(log_x) - shape_function(log_x - h);
  g.rhs = h * std::pow(log_x, -0.75) / std::sqrt(std::log(3.0 + log_x));
  g.holds = g.lhs <= g.rhs * (1 + 1e-12) + 1e-15;
  return g;
}

DriverOutcome increment_driver(const IntegerSet& a, std::int64_t big_x, const DriverOptions& options) {
  if (big_x < 10) throw Error(ErrorKind::InvalidArgument, "X must be >= 10");
  require_inside(a, big_x);
  if (auto sq = find_square_difference(a))
    throw Error(ErrorKind::NotSquareDifferenceFree, std::to_string(sq->larger) + " - " + std::to_string(sq->smaller) +
                                                        " = " + std::to_string(sq->root) + "^2");
  const BalancedFunction f(a, big_x);
  const double alpha = f.alpha_value();
  const double shape = shape_function(std::log(static_cast<double>(big_x)));
  const double threshold = std::exp(-options.constants.c * shape);
  if (alpha <= threshold) return SmallDensityCertificate{f.alpha(), threshold, options.constants.c, shape};

  // Steps q^2 beyond X only give single points, which q = 1 already covers.
  const ArcDecomposition arcs(alpha, big_x, options.c1);
  const auto q_max = std::min<std::int64_t>(arcs.max_denominator(), std::max<std::int64_t>(1, isqrt(big_x)));
  NoWitnessReport none{f.alpha(), {}};
  struct Candidate {
    std::int64_t q;
    double xi;
    double eta;
    FourierCondition condition;
  };
  std::vector<Candidate> candidates;
  for (std::int64_t q = 1; q <= q_max; ++q)
    for (int s = -options.xi_steps; s <= options.xi_steps; ++s) {
      const double xi = options.xi_steps ? arcs.tau() * s / options.xi_steps : 0.0;
      FrequencySample sample{q, xi, single_mass(f, q, xi) / (alpha * big_x),
                             l2_mass(f, q, xi) / (alpha * alpha * big_x * static_cast<double>(big_x))};
      none.profile.push_back(sample);
      if (sample.single_eta >= options.min_eta)
        candidates.push_back({q, xi, std::min(1.0, sample.single_eta), FourierCondition::Single});
      if (sample.l2_eta >= options.min_eta)
        candidates.push_back({q, xi, std::min(1.0, sample.l2_eta), FourierCondition::L2});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& l, const Candidate& r) { return l.eta > r.eta; });
  if (candidates.size() > options.max_candidates) candidates.resize(options.max_candidates);

  std::optional<IncrementWitness> best;
  auto better = [](const IncrementWitness& l, const IncrementWitness& r) {
    if (clause_rank(l.clause) != clause_rank(r.clause)) return clause_rank(l.clause) < clause_rank(r.clause);
    if (l.progression.length != r.progression.length) return l.progression.length > r.progression.length;
    return l.measured > r.measured;
  };
  for (const auto& c : candidates) {
    try {
      auto w = extract_increment(f, c.q, c.xi, c.eta, c.condition, options.constants);
      if (!reverify(w, a, big_x)) continue;
      if (!best || better(w, *best)) best = std::move(w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SearchExhausted && e.kind() != ErrorKind::PreconditionFailed) throw;
    }
  }
  if (best) return *best;
  return none;
}

}  // namespace sdf
