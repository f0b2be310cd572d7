#pragma once

// Independent oracles and random system generators shared by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ncf/invariant_density.hpp"
#include "ncf/rational.hpp"
#include "ncf/system.hpp"

namespace oracle {

template <class F>
double integrate(F f, double a, double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

/// Integral over {x0 <= x <= x1, lo(x) <= y <= hi(x)}, nested 1-D quadrature.
/// `kinks` are x-values where lo or hi lose smoothness.
template <class F, class L, class H>
double integrate2(F f, double x0, double x1, L lo, H hi, std::vector<double> kinks = {}, double tol = 1e-11) {
  kinks.push_back(x0);
  kinks.push_back(x1);
  std::sort(kinks.begin(), kinks.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
    double a = std::max(kinks[i], x0), b = std::min(kinks[i + 1], x1);
    if (b <= a) continue;
    total += integrate(
        [&](double x) {
          double y0 = lo(x), y1 = hi(x);
          return y1 > y0 ? integrate([&](double y) { return f(x, y); }, y0, y1, tol) : 0.0;
        },
        a, b, tol);
  }
  return total;
}

/// N/(N + x y)^2 over a rectangle by quadrature.
inline double rect_mass(double n, double x0, double x1, double y0, double y1) {
  return integrate2([n](double x, double y) { return n / ((n + x * y) * (n + x * y)); }, x0, x1,
                    [y0](double) { return y0; }, [y1](double) { return y1; });
}

/// C times the mass of {N x/(N + x y) <= c} over the two-interval domain.
inline double dl_quadrature(const ncf::SimpleTwoInterval& sys, double c) {
  const double n = static_cast<double>(sys.n());
  double total = 0;
  for (auto [x0, y0] : {std::pair<double, double>{double(sys.a1()), double(sys.a2())},
                        std::pair<double, double>{double(sys.a2()), double(sys.a1())}}) {
    auto lo = [=](double x) { return std::clamp(n / c - n / x, y0, y0 + 1); };
    auto hi = [=](double) { return y0 + 1; };
    std::vector<double> kinks;
    for (double y : {y0, y0 + 1}) {
      double den = n / c - y;
      if (den > 0) kinks.push_back(n / den);
    }
    total += integrate2([n](double x, double y) { return n / ((n + x * y) * (n + x * y)); }, x0, x0 + 1, lo, hi,
                        kinks);
  }
  return ncf::normalizing_constant(sys) * total;
}

/// Digit of x by linear search on exact comparisons: the k with
/// k <= N/x < k + 1, minus a_k.
inline std::int64_t brute_digit(const ncf::SystemConfig& cfg, const ncf::Rational& x) {
  std::size_t j = *cfg.interval_of(x);
  ncf::Rational q = ncf::Rational(ncf::to_bigint(cfg.numerator(j))) / x;
  std::int64_t k = 0;
  while (ncf::make_rational(k + 1) <= q) ++k;
  return k - cfg.left(cfg.successor(j));
}

}  // namespace oracle

namespace gen {

/// Random allowable system with m in [1, 4] intervals, a_i in [0, 6], N in [1, 80].
inline ncf::SystemConfig allowable(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> m_dist(1, 4), a_dist(0, 6), n_dist(1, 80);
  for (;;) {
    std::size_t m = static_cast<std::size_t>(m_dist(rng));
    std::vector<std::int64_t> a, n;
    while (a.size() < m) {
      std::int64_t v = a_dist(rng);
      if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    }
    for (std::size_t i = 0; i < m; ++i) n.push_back(n_dist(rng));
    ncf::SystemConfig cfg(a, n);
    if (ncf::classify(cfg).allowable()) return cfg;
  }
}

struct SimplePair {
  std::int64_t a1, a2, n;
};

/// Random simple two-interval system: 1 <= a1 < a2 <= 4, N a multiple of
/// lcm(a1, a1+1, a2, a2+1) not above 200.
inline SimplePair simple_two(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> a_dist(1, 4);
  for (;;) {
    std::int64_t a1 = a_dist(rng), a2 = a_dist(rng);
    if (a1 >= a2) continue;
    std::int64_t l = std::lcm(std::lcm(a1, a1 + 1), std::lcm(a2, a2 + 1));
    if (l > 200) continue;
    std::uniform_int_distribution<std::int64_t> k_dist(1, 200 / l);
    std::int64_t n = l * k_dist(rng);
    ncf::SystemConfig cfg({a1, a2}, {n, n});
    if (ncf::classify(cfg).simple()) return {a1, a2, n};
  }
}

/// Uniform rational in [lo, lo + 1) with denominator `den`.
inline ncf::Rational rational_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> k(0, den - 1);
  return ncf::make_rational(lo * den + k(rng), den);
}

}  // namespace gen
