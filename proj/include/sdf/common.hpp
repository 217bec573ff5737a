#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdf {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

enum class ErrorKind {
  CapExceeded,
  EmptyProgression,
  UnknownModulus,
  NotInjective,
  StepNotCoprime,
  HypothesisViolated,
  RhoTooLarge,
  NotGlobal,
  PreconditionFailed,
  OutOfUniverse,
  SearchExhausted,
  NotSquareDifferenceFree,
  NoWitnessFound,
  NotPrime,
  BadPrimeClass,
  EpsilonTooSmall,
  Infeasible,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Strict enforces every size hypothesis of a statement. Relaxed evaluates
// anyway and reports which hypotheses failed.
enum class Regime { Strict, Relaxed };

double to_double(const Rational& r);
// Exact value of a finite double.
Rational exact_rational(double x);
// Parses "3", "-2/7", "0.125", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
bool is_prime(std::int64_t n);
bool is_perfect_square(std::int64_t n);
std::int64_t isqrt(std::int64_t n);

}  // namespace sdf
