#pragma once

// Alternating N-continued-fraction systems: the interval layout, the map
// T(x) = N_j/x - floor(N_j/x) + a_k, its digit cylinders and orbits.
//
// Interval indices are 0-based in the API. I_i = [a_i, a_i + 1) and T maps
// I_i into I_{(i+1) mod m}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ncf/rational.hpp"

namespace ncf {

class SystemConfig {
 public:
  /// Throws ConfigError unless m >= 1, the left endpoints are distinct and
  /// non-negative, and every numerator is >= 1.
  SystemConfig(std::vector<std::int64_t> lefts, std::vector<std::int64_t> numerators);

  std::size_t size() const noexcept { return lefts_.size(); }
  std::int64_t left(std::size_t i) const { return lefts_.at(i); }
  std::int64_t numerator(std::size_t i) const { return numerators_.at(i); }
  const std::vector<std::int64_t>& lefts() const noexcept { return lefts_; }
  const std::vector<std::int64_t>& numerators() const noexcept { return numerators_; }

  std::size_t successor(std::size_t i) const noexcept { return (i + 1) % size(); }
  std::size_t predecessor(std::size_t i) const noexcept { return (i + size() - 1) % size(); }

  /// max Omega, i.e. max_i (a_i + 1).
  std::int64_t max_omega() const noexcept;
  bool has_zero_interval() const noexcept;

  std::optional<std::size_t> interval_of(double x) const noexcept;
  std::optional<std::size_t> interval_of(const Rational& x) const;

  bool operator==(const SystemConfig&) const = default;

 private:
  std::vector<std::int64_t> lefts_;
  std::vector<std::int64_t> numerators_;
};

enum class SystemClass { not_allowable, allowable, desirable, simple };

std::string_view to_string(SystemClass c) noexcept;

struct DigitWitness {
  std::size_t interval;
  std::int64_t digit;  // the (non-positive) minimal digit
};

struct DivisibilityWitness {
  std::size_t interval;
  std::int64_t divisor;  // a_i or a_i + 1
  std::int64_t numerator;
};

struct Classification {
  SystemClass tag = SystemClass::not_allowable;
  std::optional<DigitWitness> nonpositive_digit;
  std::optional<DivisibilityWitness> divisibility;
  /// Set for desirable systems whose numerators differ.
  std::optional<std::size_t> unequal_numerator;

  bool allowable() const noexcept { return tag != SystemClass::not_allowable; }
  bool desirable() const noexcept { return tag == SystemClass::desirable || tag == SystemClass::simple; }
  bool simple() const noexcept { return tag == SystemClass::simple; }
};

/// Integer-only classification. The digit floor(N_j/x) - a_k is nonincreasing
/// on I_j, so allowability reduces to floor(N_j/(a_j+1)) - a_k >= 1.
Classification classify(const SystemConfig& cfg);

/// Smallest digit occurring on I_j.
std::int64_t lowest_digit(const SystemConfig& cfg, std::size_t j);

/// Largest digit of a branch with non-empty interior on I_j; empty when
/// a_j = 0 (infinitely many branches).
std::optional<std::int64_t> highest_digit(const SystemConfig& cfg, std::size_t j);

/// A rank-1 cylinder: the set of x in I_j with digit `digit`.
struct Branch {
  std::size_t interval = 0;
  std::int64_t digit = 0;
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = false;
  /// The branch maps onto the whole successor interval.
  bool full = false;

  bool degenerate() const { return lo == hi; }
};

/// Branches of I_j in decreasing-digit (increasing-x) order. The boundary
/// digit at x = a_j is emitted as a degenerate branch when a_j | N_j.
/// For a_j = 0 only digits up to digit_cap are listed, and the cap is
/// mandatory (DomainError otherwise).
std::vector<Branch> branches(const SystemConfig& cfg, std::size_t j,
                             std::optional<std::int64_t> digit_cap = std::nullopt);

template <class S>
struct MapStep {
  S image;
  std::int64_t digit = 0;
  std::size_t from = 0;  // interval of x
  std::size_t to = 0;    // interval of T(x)
};

/// One application of T. Throws DomainError for x outside Omega. The point 0
/// (when 0 is in Omega) is fixed and reported with digit 0.
MapStep<double> map_T(const SystemConfig& cfg, double x);
MapStep<Rational> map_T(const SystemConfig& cfg, const Rational& x);

template <class S>
struct OrbitPoint {
  S x;                    // T^k(x0)
  std::int64_t digit = 0;  // d_{k+1}(x0) = d_1(T^k x0)
  std::size_t interval = 0;
};

std::vector<OrbitPoint<double>> orbit(const SystemConfig& cfg, double x0, std::size_t n);
std::vector<OrbitPoint<Rational>> orbit(const SystemConfig& cfg, const Rational& x0, std::size_t n);

/// Values N2 <= limit that are multiples of n(n+1) for some 1 <= n <= N1 - 1,
/// i.e. the numerators that make a desirable two-interval system with N1 on
/// [0, 1). Requires N1 >= 2.
std::vector<std::int64_t> desirable_partners(std::int64_t n1, std::int64_t limit);

}  // namespace ncf
