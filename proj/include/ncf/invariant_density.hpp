#pragma once

// Closed-form invariant measures for simple two-interval systems
// Omega = [a1, a1+1) u [a2, a2+1) with a common numerator N.

#include <array>
#include <cstdint>
#include <utility>

#include "ncf/rational.hpp"
#include "ncf/system.hpp"

namespace ncf {

class SimpleTwoInterval {
 public:
  /// Orders (a1, a2) increasingly. Throws ConfigError unless the config
  /// (a1, a2), (N, N) classifies as simple.
  SimpleTwoInterval(std::int64_t a1, std::int64_t a2, std::int64_t n);

  std::int64_t a1() const noexcept { return a1_; }
  std::int64_t a2() const noexcept { return a2_; }
  std::int64_t n() const noexcept { return n_; }
  SystemConfig config() const;

  /// 1-based side: 1 for [a1, a1+1), 2 for [a2, a2+1); 0 outside Omega.
  int side_of(double x) const noexcept;

 private:
  std::int64_t a1_;
  std::int64_t a2_;
  std::int64_t n_;
};

/// 1/C = 2 ln(1 + N / ((N + a1(a2+1)) (N + a2(a1+1)))).
double inverse_normalizing_constant(const SimpleTwoInterval& sys);
double normalizing_constant(const SimpleTwoInterval& sys);

/// Projected invariant density; throws DomainError outside Omega.
double density(const SimpleTwoInterval& sys, double x);

/// Invariant measure of [lo, hi] (clipped to Omega) via the antiderivative.
double interval_measure(const SimpleTwoInterval& sys, double lo, double hi);

/// C N / (N + xy)^2 on X = I1 x [a2, a2+1] u I2 x [a1, a1+1]; DomainError
/// elsewhere.
double natext_density(const SimpleTwoInterval& sys, double x, double y);

/// True if (x, y) lies in the closure-in-y natural-extension domain.
bool in_natext_domain(const SimpleTwoInterval& sys, double x, double y) noexcept;

/// The thresholds where the Doeblin-Lenstra CDF changes formula, in
/// increasing order:
///   N a1/(N + a1(a2+1)), N a1/(N + a1 a2), N(a1+1)/(N + (a1+1)(a2+1)),
///   N(a1+1)/(N + a2(a1+1)), N a2/(N + a2(a1+1)), N a2/(N + a1 a2),
///   N(a2+1)/(N + (a1+1)(a2+1)), N(a2+1)/(N + a1(a2+1)).
/// F = 0 up to the first, 1/2 between the fourth and fifth, 1 from the last.
struct DLBreakpoints {
  std::array<Rational, 8> values;

  const Rational& support_low() const { return values[0]; }
  const Rational& support_high() const { return values[7]; }
  std::pair<Rational, Rational> plateau() const { return {values[3], values[4]}; }
};

DLBreakpoints dl_breakpoints(const SimpleTwoInterval& sys);

/// F(c) = natural-extension measure of {(x, y) in X : N x / (N + x y) <= c}.
double dl_cdf(const SimpleTwoInterval& sys, double c);

/// Closed bounds on theta_n when t_n lies in I1 (side 1) or I2 (side 2) of a
/// two-interval desirable system with a1 < a2; numerator is N_n.
std::pair<Rational, Rational> theta_bounds(std::int64_t a1, std::int64_t a2, std::int64_t numerator, int side);

}  // namespace ncf
