#include "sdf/common.hpp"

#include <cmath>
#include <numeric>

namespace sdf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EmptyProgression: return "EmptyProgression";
    case ErrorKind::UnknownModulus: return "UnknownModulus";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::StepNotCoprime: return "StepNotCoprime";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::RhoTooLarge: return "RhoTooLarge";
    case ErrorKind::NotGlobal: return "NotGlobal";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::OutOfUniverse: return "OutOfUniverse";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotSquareDifferenceFree: return "NotSquareDifferenceFree";
    case ErrorKind::NoWitnessFound: return "NoWitnessFound";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::BadPrimeClass: return "BadPrimeClass";
    case ErrorKind::EpsilonTooSmall: return "EpsilonTooSmall";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = m;
  BigInt den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    return Rational(num, den);
  }
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_point) throw Error(ErrorKind::InvalidArgument, "bad number: " + s);
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) --scale;
    } else {
      throw Error(ErrorKind::InvalidArgument, "bad number: " + s);
    }
  }
  if (digits.empty()) throw Error(ErrorKind::InvalidArgument, "bad number: " + s);
  if (pos < s.size()) scale += std::stol(s.substr(pos + 1));
  Rational value{BigInt(digits)};
  BigInt ten = 10;
  BigInt factor = boost::multiprecision::pow(ten, static_cast<unsigned>(std::labs(scale)));
  value = scale >= 0 ? value * factor : value / factor;
  return neg ? -value : value;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod_floor(a, m)) * mod_floor(b, m) % m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  std::int64_t r = isqrt(n);
  return r * r == n;
}

}  // namespace sdf
