#pragma once

// Rectangle-union approximations X_n of the natural-extension domain,
// obtained by pushing Omega x [0, inf) forward under
//   Tbar(x, y) = (T x, N_j / (d(x) + y)).
// Every image of a rectangle restricted to one digit cylinder is again a
// rectangle, so X_n stays a finite union of rectangles. Both exact
// (Rational) and fast (double) scalars are supported.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncf/convergents.hpp"
#include "ncf/rational.hpp"
#include "ncf/system.hpp"

namespace ncf {

inline double as_double(double v) { return v; }
inline double as_double(const Rational& v) { return to_double(v); }

template <class S>
struct Rect {
  S x_lo;
  S x_hi;
  S y_lo;
  std::optional<S> y_hi;  // empty: unbounded above
  bool tail = false;      // aggregates digits above the cap

  bool unbounded() const noexcept { return !y_hi.has_value(); }
};

template <class S>
struct RectUnion {
  std::vector<std::vector<Rect<S>>> parts;  // indexed by interval

  std::size_t rect_count() const noexcept;
  bool empty() const noexcept { return rect_count() == 0; }
};

/// Omega x [0, inf).
template <class S>
RectUnion<S> full_domain(const SystemConfig& cfg);

struct IterateStats {
  std::size_t emitted = 0;  // rectangles before merging
  std::size_t pruned = 0;   // dropped for mass below the threshold
  std::size_t tails = 0;    // tail rectangles produced
};

struct IterateOptions {
  std::optional<std::int64_t> digit_cap;
  double prune_below = 1e-15;
  double merge_tolerance = 1e-12;  // floating mode only
};

/// One step X -> Tbar(X). digit_cap is mandatory when some a_i = 0; digits
/// above it are collected into a tail rectangle
/// successor x [0, N/(cap + 1 + y_lo)].
template <class S>
RectUnion<S> iterate_domain(const SystemConfig& cfg, const RectUnion<S>& x, const IterateOptions& opt,
                            IterateStats* stats = nullptr);

/// Tbar(x, y).
std::pair<double, double> natext_map(const SystemConfig& cfg, double x, double y);
std::pair<Rational, Rational> natext_map(const SystemConfig& cfg, const Rational& x, const Rational& y);

/// Integral of N/(N + x y)^2 over one rectangle, with N the numerator of its
/// interval. DomainError when the integral diverges (x_lo = 0, unbounded y).
double rect_mass(double n, double x_lo, double x_hi, double y_lo, std::optional<double> y_hi);

/// Non-normalized mass of X under N/(N + x y)^2.
template <class S>
double mass(const SystemConfig& cfg, const RectUnion<S>& x);

struct DomainReport {
  std::size_t n = 0;
  double mass = 0;
  double r = 0;  // (mass_n - mass_{n+1}) / mass_n
  std::size_t rect_count = 0;
  std::size_t pruned = 0;
};

/// Reports for X_0..X_{n_max}; X_0 is `seed` when given, else Omega x [0, inf).
/// The domains themselves are returned through `domains` when non-null.
template <class S>
std::vector<DomainReport> r_sequence(const SystemConfig& cfg, std::size_t n_max, const IterateOptions& opt,
                                     const std::optional<RectUnion<S>>& seed = std::nullopt,
                                     std::vector<RectUnion<S>>* domains = nullptr);

/// Midpoint samples of a density on Omega, `per_unit` cells per unit interval.
struct DensityGrid {
  std::size_t per_unit = 0;
  std::vector<std::size_t> interval;  // per cell
  std::vector<double> x;              // cell midpoints
  std::vector<double> f;
  double cell_width = 0;
  double normalization = 1;  // global factor applied to the raw values

  double integral() const;
};

/// Empty grid over Omega (intervals in configuration order, x increasing).
DensityGrid make_grid(const SystemConfig& cfg, std::size_t per_unit);

/// per_interval: every interval gets mass 1/m, which holds for the invariant
/// measure since T carries each I_i bijectively onto the next one.
/// global: a single constant for all of Omega.
enum class Normalization { per_interval, global };

/// Projection of N/(N + x y)^2 on X to the x-axis, sampled at the cell
/// midpoints. The normalizing constants come from the closed-form rectangle
/// masses, so the exact integral is 1 and the midpoint sum is 1 up to the
/// quadrature error of the grid.
template <class S>
DensityGrid project_density(const SystemConfig& cfg, const RectUnion<S>& x, std::size_t per_unit,
                            Normalization norm = Normalization::per_interval);

/// (p + sqrt(d)) / q with q > 0 and d >= 0.
struct QuadraticSurd {
  BigInt p;
  BigInt d;
  BigInt q;

  bool is_rational() const;
  std::optional<Rational> rational() const;
  double value() const;
  /// Rationals with denominator `den` bracketing the value.
  Rational lower_bound(const BigInt& den) const;
  Rational upper_bound(const BigInt& den) const;
  std::string str() const;
};

/// Positive fixed point of x = M x for M = B_{d_1,N_1} ... B_{d_k,N_k}.
QuadraticSurd periodic_point(const std::vector<MobiusStep>& cycle);

/// Value of the finite expansion N_1/(d_1 + N_2/(d_2 + ... + N_k/(d_k + tail))).
Rational finite_expansion(const std::vector<MobiusStep>& steps, const Rational& tail);

/// A block [a_i, a_i+1] x [lo, hi] per interval. Bounds are chained through
/// lo_k = N_j/(h_j + hi_j), hi_k = N_j/(l_j + lo_j) (k the successor of j,
/// l/h the lowest/highest digit on I_j); on a_j = 0 the highest digit is
/// unbounded so lo_k = 0. Irrational bounds are widened to rationals with
/// denominator `den`.
struct SeededBlocks {
  std::vector<std::pair<Rational, Rational>> y;  // per interval
  std::vector<std::optional<QuadraticSurd>> lo_exact;
  std::vector<std::optional<QuadraticSurd>> hi_exact;
};

SeededBlocks seeded_blocks(const SystemConfig& cfg, const BigInt& den = BigInt("1000000000000"));

template <class S>
RectUnion<S> seeded_domain(const SystemConfig& cfg, const BigInt& den = BigInt("1000000000000"));

/// Backward digit chain for one seeded bound. A periodic chain evaluates to
/// periodic_point(steps); otherwise it ends at a bound fixed at 0 and
/// evaluates to finite_expansion(steps, 0).
struct SeedChain {
  std::vector<MobiusStep> steps;
  bool periodic = false;
};

/// Chains for the lower and upper y-bound of the block on interval k.
std::pair<SeedChain, SeedChain> seed_chains(const SystemConfig& cfg, std::size_t k);

/// Hausdorff distance between two unions whose rectangles all span their
/// whole interval in x, reduced to the y-sets per interval. Infinite if either
/// side has an unbounded rectangle or an interval is empty on one side only.
/// Throws std::invalid_argument for partial-width rectangles.
template <class S>
double slab_hausdorff(const SystemConfig& cfg, const RectUnion<S>& a, const RectUnion<S>& b);

/// True if every rectangle of `inner` is covered by the union `outer`.
template <class S>
bool contains(const RectUnion<S>& outer, const RectUnion<S>& inner);

/// The natural-extension domain of a simple two-interval system,
/// I_1 x [a_2, a_2+1] u I_2 x [a_1, a_1+1], in configuration order.
template <class S>
RectUnion<S> two_interval_limit(const SystemConfig& cfg);

}  // namespace ncf
