#pragma once

// Orbit simulation: histogram estimates of the invariant density, empirical
// distribution of the approximation coefficients, and distances between
// densities sampled on a common grid.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ncf/invariant_density.hpp"
#include "ncf/natural_extension.hpp"
#include "ncf/system.hpp"

namespace ncf {

struct SimulationOptions {
  std::size_t seeds = 16;              // independent orbits
  std::uint64_t iters = 1'000'000;     // steps per orbit, burn-in included
  std::uint64_t burn_in = 1000;
  std::uint64_t segment = 1'000'000;  // fresh random start this often; 0 never
  std::size_t bins = 1000;             // per unit interval
  std::uint64_t rng_seed = 1;
  std::size_t threads = 0;             // 0: hardware concurrency
};

struct Histogram {
  std::size_t bins = 0;  // per interval
  std::vector<std::int64_t> lefts;
  std::vector<std::vector<std::uint64_t>> counts;
  std::uint64_t total = 0;
  std::uint64_t burn_in = 0;

  /// Normalized density on the make_grid layout with per_unit = bins.
  DensityGrid density() const;
};

/// Orbits start uniformly in interval (seed index mod m) and are iterated in
/// double precision; visits after the burn-in are binned. Every `segment`
/// steps the orbit restarts at a fresh uniform point of its current interval,
/// since long floating orbits end up on short periodic cycles. The result depends
/// only on the options, not on the thread count.
Histogram simulate_density(const SystemConfig& cfg, const SimulationOptions& opt);

/// The closed-form projected density at the cell midpoints.
DensityGrid sample_density(const SimpleTwoInterval& sys, std::size_t per_unit);

/// Midpoint-rule integral of |f - g|. Throws std::invalid_argument unless both
/// grids share the same layout.
double l1_distance(const DensityGrid& f, const DensityGrid& g);

/// Largest gap between the distribution functions of f and g, accumulated in
/// increasing x.
double ks_distance(const DensityGrid& f, const DensityGrid& g);

struct ComparisonReport {
  double l1 = 0;
  double ks = 0;
  std::size_t per_unit = 0;
  std::uint64_t samples_f = 0;
  std::uint64_t samples_g = 0;
};

ComparisonReport compare(const DensityGrid& f, const DensityGrid& g, std::uint64_t samples_f = 0,
                         std::uint64_t samples_g = 0);

class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator()(double c) const;
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// sup_c |F_emp(c) - cdf(c)| over the jump points (both one-sided limits).
  double sup_distance(const std::function<double(double)>& cdf) const;

 private:
  std::vector<double> values_;
};

/// Pooled theta_1..theta_depth over the given starting points.
EmpiricalCDF empirical_theta_cdf(const SystemConfig& cfg, const std::vector<double>& x_samples, std::size_t depth);

}  // namespace ncf
