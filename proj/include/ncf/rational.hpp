#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncf {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Error raised when a point or parameter falls outside the domain an
/// operation is defined on (x outside Omega, a cap that is required but
/// missing, a divergent mass).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Error raised for malformed system configurations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline BigInt to_bigint(std::int64_t v) { return BigInt(static_cast<long>(v)); }

/// Largest integer not exceeding r.
BigInt floor(const Rational& r);

/// Converts to int64, throwing std::overflow_error if it does not fit.
std::int64_t to_int64(const BigInt& v);

/// "num/den" in lowest terms; integers are rendered as "n/1".
std::string to_string(const Rational& r);

std::string to_string(const BigInt& v);

/// Parses "p/q", an integer, or a finite decimal ("1.25") exactly.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational exact(double v);

/// Nearest double (GMP alone truncates toward zero).
double to_double(const Rational& r);

}  // namespace ncf
