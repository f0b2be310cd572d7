#include "ncf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "ncf/convergents.hpp"

namespace ncf {

DensityGrid Histogram::density() const {
  DensityGrid g;
  g.per_unit = bins;
  g.cell_width = 1.0 / static_cast<double>(bins);
  g.normalization = total ? 1.0 / (static_cast<double>(total) * g.cell_width) : 0.0;
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    for (std::size_t b = 0; b < bins; ++b) {
      g.interval.push_back(i);
      g.x.push_back(static_cast<double>(lefts[i]) + (static_cast<double>(b) + 0.5) * g.cell_width);
      g.f.push_back(static_cast<double>(counts[i][b]) * g.normalization);
    }
  }
  return g;
}

namespace {

void run_orbit(const SystemConfig& cfg, const SimulationOptions& opt, std::size_t seed_index,
               std::vector<std::vector<std::uint64_t>>& counts) {
  const std::size_t m = cfg.size();
  std::vector<double> nums(m), lefts(m);
  for (std::size_t i = 0; i < m; ++i) {
    nums[i] = static_cast<double>(cfg.numerator(i));
    lefts[i] = static_cast<double>(cfg.left(i));
  }
  std::seed_seq seq{static_cast<std::uint32_t>(opt.rng_seed), static_cast<std::uint32_t>(opt.rng_seed >> 32),
                    static_cast<std::uint32_t>(seed_index), static_cast<std::uint32_t>(seed_index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::size_t j = seed_index % m;
  double x = lefts[j] + unit(rng);
  const double bins = static_cast<double>(opt.bins);
  const std::size_t last = opt.bins - 1;
  for (std::uint64_t it = 0; it < opt.iters; ++it) {
    if (it >= opt.burn_in) {
      auto b = static_cast<std::size_t>((x - lefts[j]) * bins);
      counts[j][std::min(b, last)] += 1;
    }
    if (x == 0.0) x = unit(rng);  // stuck on the fixed point 0, restart
    if (opt.segment && it > 0 && it % opt.segment == 0) x = lefts[j] + unit(rng);
    double q = nums[j] / x;
    std::size_t k = j + 1 == m ? 0 : j + 1;
    x = q - std::floor(q) + lefts[k];
    j = k;
  }
}

}  // namespace

Histogram simulate_density(const SystemConfig& cfg, const SimulationOptions& opt) {
  if (opt.bins == 0) throw std::invalid_argument("bins must be positive");
  if (opt.iters <= opt.burn_in) throw std::invalid_argument("iters must exceed burn_in");
  if (!classify(cfg).allowable()) throw DomainError("simulate_density: system is not allowable");
  const std::size_t m = cfg.size();

  std::size_t workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(opt.seeds, 1));
  std::vector<std::vector<std::vector<std::uint64_t>>> partial(
      workers, std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(opt.bins, 0)));

  auto work = [&](std::size_t w) {
    for (std::size_t s = w; s < opt.seeds; s += workers) run_orbit(cfg, opt, s, partial[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Histogram h;
  h.bins = opt.bins;
  h.lefts = cfg.lefts();
  h.burn_in = opt.burn_in;
  h.counts.assign(m, std::vector<std::uint64_t>(opt.bins, 0));
  for (const auto& part : partial)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t b = 0; b < opt.bins; ++b) h.counts[i][b] += part[i][b];
  for (const auto& row : h.counts)
    for (auto c : row) h.total += c;
  return h;
}

DensityGrid sample_density(const SimpleTwoInterval& sys, std::size_t per_unit) {
  DensityGrid g = make_grid(sys.config(), per_unit);
  for (std::size_t c = 0; c < g.x.size(); ++c) g.f[c] = density(sys, g.x[c]);
  return g;
}

namespace {

void check_layout(const DensityGrid& f, const DensityGrid& g) {
  if (f.x.size() != g.x.size() || f.per_unit != g.per_unit || f.interval != g.interval)
    throw std::invalid_argument("density grids have different layouts");
  for (std::size_t c = 0; c < f.x.size(); ++c)
    if (std::fabs(f.x[c] - g.x[c]) > 1e-9) throw std::invalid_argument("density grids cover different domains");
}

}  // namespace

double l1_distance(const DensityGrid& f, const DensityGrid& g) {
  check_layout(f, g);
  double s = 0;
  for (std::size_t c = 0; c < f.f.size(); ++c) s += std::fabs(f.f[c] - g.f[c]);
  return s * f.cell_width;
}

double ks_distance(const DensityGrid& f, const DensityGrid& g) {
  check_layout(f, g);
  std::vector<std::size_t> order(f.x.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.x[a] < f.x[b]; });
  double cf = 0, cg = 0, worst = 0;
  for (std::size_t c : order) {
    cf += f.f[c] * f.cell_width;
    cg += g.f[c] * g.cell_width;
    worst = std::max(worst, std::fabs(cf - cg));
  }
  return std::min(worst, 1.0);
}

ComparisonReport compare(const DensityGrid& f, const DensityGrid& g, std::uint64_t samples_f,
                         std::uint64_t samples_g) {
  return {l1_distance(f, g), ks_distance(f, g), f.per_unit, samples_f, samples_g};
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("empirical CDF needs at least one value");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalCDF::operator()(double c) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), c);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCDF::sup_distance(const std::function<double(double)>& cdf) const {
  const double n = static_cast<double>(values_.size());
  double worst = 0;
  std::size_t i = 0;
  while (i < values_.size()) {
    std::size_t j = i;
    while (j < values_.size() && values_[j] == values_[i]) ++j;
    double f = cdf(values_[i]);
    worst = std::max({worst, std::fabs(static_cast<double>(i) / n - f), std::fabs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return worst;
}

EmpiricalCDF empirical_theta_cdf(const SystemConfig& cfg, const std::vector<double>& x_samples, std::size_t depth) {
  std::vector<double> pooled;
  pooled.reserve(x_samples.size() * depth);
  for (double x : x_samples) {
    auto th = theta_sequence(cfg, x, depth);
    pooled.insert(pooled.end(), th.begin(), th.end());
  }
  return EmpiricalCDF(std::move(pooled));
}

}  // namespace ncf
