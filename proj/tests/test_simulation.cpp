#include <doctest.h>

#include <cmath>
#include <random>

#include "ncf/invariant_density.hpp"
#include "ncf/simulation.hpp"

using namespace ncf;

TEST_SUITE("simulation") {

TEST_CASE("histograms are deterministic in the seed and thread count") {
  SystemConfig cfg({1, 2}, {12, 12});
  SimulationOptions opt;
  opt.seeds = 6;
  opt.iters = 20000;
  opt.bins = 50;
  opt.rng_seed = 99;
  opt.threads = 1;
  Histogram a = simulate_density(cfg, opt);
  opt.threads = 3;
  Histogram b = simulate_density(cfg, opt);
  CHECK(a.counts == b.counts);
  CHECK(a.total == 6 * (20000 - 1000));
  opt.rng_seed = 100;
  Histogram c = simulate_density(cfg, opt);
  CHECK(a.counts != c.counts);
}

TEST_CASE("histogram density integrates to one") {
  SystemConfig cfg({1, 3, 2}, {12, 12, 12});
  SimulationOptions opt;
  opt.seeds = 3;
  opt.iters = 30000;
  opt.bins = 100;
  auto g = simulate_density(cfg, opt).density();
  CHECK(g.integral() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.x.size() == 300);
}

TEST_CASE("one bin per interval gives half the mass to each side") {
  SystemConfig cfg({1, 2}, {12, 12});
  SimulationOptions opt;
  opt.seeds = 4;
  opt.iters = 100000;
  opt.bins = 1;
  auto h = simulate_density(cfg, opt);
  double share = static_cast<double>(h.counts[0][0]) / static_cast<double>(h.total);
  CHECK(share == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("invalid options") {
  SystemConfig cfg({1, 2}, {12, 12});
  SimulationOptions opt;
  opt.bins = 0;
  CHECK_THROWS_AS(simulate_density(cfg, opt), std::invalid_argument);
  opt.bins = 10;
  opt.iters = 10;
  opt.burn_in = 10;
  CHECK_THROWS_AS(simulate_density(cfg, opt), std::invalid_argument);
  CHECK_THROWS_AS(simulate_density(SystemConfig({1, 5}, {2, 2}), SimulationOptions{}), DomainError);
}

TEST_CASE("orbit histograms approach the closed-form density") {
  SimpleTwoInterval sys(1, 2, 12);
  auto theory = sample_density(sys, 100);
  std::vector<double> l1;
  for (std::uint64_t iters : {25000, 50000, 100000, 200000, 400000, 800000}) {
    SimulationOptions opt;
    opt.seeds = 4;
    opt.iters = iters;
    opt.bins = 100;
    opt.rng_seed = 5;
    l1.push_back(l1_distance(simulate_density(sys.config(), opt).density(), theory));
  }
  // noise shrinks like 1/sqrt(samples); allow one noisy doubling
  for (std::size_t i = 1; i < l1.size(); ++i) CHECK(l1[i] < 1.3 * l1[i - 1]);
  CHECK(l1.back() < 0.5 * l1.front());
}

TEST_CASE("restarted segments keep long orbits off floating-point cycles") {
  SimpleTwoInterval sys(1, 2, 12);
  auto theory = sample_density(sys, 20);
  SimulationOptions opt;
  opt.seeds = 1;
  opt.iters = 20'000'000;
  opt.bins = 20;
  opt.segment = 100'000;
  double restarted = l1_distance(simulate_density(sys.config(), opt).density(), theory);
  // 40 cells, 2e7 samples
  CHECK(restarted < 4 * 0.8 * std::sqrt(40.0 / 2e7));
  opt.segment = 0;
  CHECK_NOTHROW(simulate_density(sys.config(), opt));
}

TEST_CASE("distances") {
  SimpleTwoInterval sys(1, 2, 12);
  auto f = sample_density(sys, 200);
  CHECK(l1_distance(f, f) == 0.0);
  CHECK(ks_distance(f, f) == 0.0);
  auto g = f;
  for (std::size_t c = 0; c < g.f.size(); ++c) g.f[c] = g.interval[c] == 0 ? 0.8 : 0.2;
  CHECK(l1_distance(f, g) == doctest::Approx(l1_distance(g, f)));
  CHECK(ks_distance(f, g) == doctest::Approx(ks_distance(g, f)));
  CHECK(ks_distance(f, g) == doctest::Approx(0.3).epsilon(1e-6));
  auto r = compare(f, g, 1, 2);
  CHECK(r.l1 >= 0.0);
  CHECK(r.ks <= 1.0);
  CHECK(r.samples_g == 2);
  CHECK_THROWS_AS(l1_distance(f, sample_density(sys, 100)), std::invalid_argument);
  CHECK_THROWS_AS(ks_distance(f, sample_density(SimpleTwoInterval(1, 3, 12), 200)), std::invalid_argument);
}

TEST_CASE("empirical CDF") {
  EmpiricalCDF e({3.0, 1.0, 2.0, 2.0});
  CHECK(e.min() == 1.0);
  CHECK(e.max() == 3.0);
  CHECK(e(0.5) == 0.0);
  CHECK(e(2.0) == 0.75);
  CHECK(e(5.0) == 1.0);
  CHECK(e.sup_distance([](double c) { return std::clamp((c - 1.0) / 2.0, 0.0, 1.0); }) == doctest::Approx(0.25));
  CHECK_THROWS_AS(EmpiricalCDF({}), std::invalid_argument);
}

TEST_CASE("approximation coefficients follow the Doeblin-Lenstra law") {
  SimpleTwoInterval sys(1, 2, 12);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  std::vector<double> starts;
  for (int i = 0; i < 200; ++i) starts.push_back(u(rng));
  auto e = empirical_theta_cdf(sys.config(), starts, 1000);
  CHECK(e.size() == 200000);
  CHECK(e.min() > 0.8 - 1e-9);
  CHECK(e.max() < 2.4 + 1e-9);
  CHECK(e.sup_distance([&](double c) { return dl_cdf(sys, c); }) < 0.01);
}

TEST_CASE("approximation coefficients respect the landing-interval bounds after a short transient") {
  SimpleTwoInterval sys(1, 2, 12);
  SystemConfig cfg = sys.config();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<std::pair<double, double>, 2> b;
  for (int side : {1, 2}) {
    auto [lo, hi] = theta_bounds(1, 2, 12, side);
    b[side - 1] = {to_double(lo), to_double(hi)};
  }
  for (int trial = 0; trial < 50; ++trial) {
    ThetaState s = theta_start(cfg, 1.0 + u(rng) + (trial % 2));
    for (int n = 1; n <= 2000; ++n) {
      s = theta_advance(cfg, s);
      if (n < 40) continue;
      auto [lo, hi] = b[s.interval];
      CHECK(s.theta() >= lo - 1e-9);
      CHECK(s.theta() <= hi + 1e-9);
    }
  }
}

}  // TEST_SUITE
