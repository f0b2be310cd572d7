#pragma once

// Convergents p_n/q_n of an alternating N-continued fraction, built from the
// Mobius matrices B_{d,N} = [[0, N], [1, d]], plus the approximation
// coefficients theta_n and the derivative formulas for T^k.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncf/rational.hpp"
#include "ncf/system.hpp"

namespace ncf {

struct MobiusStep {
  std::int64_t digit = 1;
  std::int64_t numerator = 1;
};

/// (p_{n-1}, p_n, q_{n-1}, q_n) after n steps, starting from
/// p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1.
struct ConvergentState {
  BigInt p_prev = 1;
  BigInt p_cur = 0;
  BigInt q_prev = 0;
  BigInt q_cur = 1;
  BigInt numerator_product = 1;
  std::size_t n = 0;

  Rational value() const;
  /// p_{n-1} q_n - q_{n-1} p_n; equals (-1)^n prod N_i.
  BigInt determinant() const { return p_prev * q_cur - q_prev * p_cur; }
  bool determinant_holds() const;
};

ConvergentState advance(const ConvergentState& state, MobiusStep step);

/// x = (p_n + p_{n-1} t) / (q_n + q_{n-1} t) for tail t = T^n(x).
double reconstruct(const ConvergentState& state, double tail);
Rational reconstruct(const ConvergentState& state, const Rational& tail);

/// prod N_i * max Omega / q_n^2.
Rational error_bound_exact(const ConvergentState& state, const SystemConfig& cfg);
double error_bound(const ConvergentState& state, const SystemConfig& cfg);

template <class S>
struct ExpansionRow {
  std::size_t n = 0;
  std::int64_t digit = 0;       // d_n
  std::int64_t numerator = 0;   // N_n, numerator of the interval holding T^{n-1}x
  ConvergentState state;        // depth n
  S tail;                       // T^n(x)
};

/// Rows n = 1..depth along the orbit of x0. Stops early if the orbit reaches
/// 0, in which case x0 equals the last convergent.
std::vector<ExpansionRow<double>> expand(const SystemConfig& cfg, double x0, std::size_t depth);
std::vector<ExpansionRow<Rational>> expand(const SystemConfig& cfg, const Rational& x0, std::size_t depth);

/// Natural-extension orbit of (x, 0): t = T^n x, w = q_{n-1}/q_n, v = N_n w.
struct ThetaState {
  double t = 0;
  double v = 0;
  double w = 0;
  std::size_t n = 0;
  std::size_t interval = 0;  // interval holding t

  double theta() const { return t / (1.0 + t * w); }
};

ThetaState theta_start(const SystemConfig& cfg, double x0);
ThetaState theta_advance(const SystemConfig& cfg, const ThetaState& s);

/// theta_1..theta_n by the (t, w) recursion.
std::vector<double> theta_sequence(const SystemConfig& cfg, double x0, std::size_t n);
/// Same recursion along the exact orbit of a rational x0.
std::vector<double> theta_sequence(const SystemConfig& cfg, const Rational& x0, std::size_t n);

/// theta_k = q_k^2 / prod N_i * |x - p_k/q_k| with exact convergents of the
/// exact orbit of x0. Used to cross-check theta_sequence.
std::vector<double> theta_definitional(const SystemConfig& cfg, const Rational& x0, std::size_t n);

/// (T^k)'(x) = (-1)^k prod N_i / (p_{k-1} - q_{k-1} x)^2 for a state of depth k.
double derivative_Tk(const ConvergentState& state, double x);

/// |(T^k)''| / ((T^k)')^2 = 2 q_{k-1} |p_{k-1} - q_{k-1} x| / prod N_i.
double adler_ratio(const ConvergentState& state, double x);

}  // namespace ncf
