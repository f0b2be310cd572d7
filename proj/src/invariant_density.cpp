#include "ncf/invariant_density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ncf {

SimpleTwoInterval::SimpleTwoInterval(std::int64_t a1, std::int64_t a2, std::int64_t n)
    : a1_(std::min(a1, a2)), a2_(std::max(a1, a2)), n_(n) {
  auto cls = classify(config());
  if (!cls.simple())
    throw ConfigError("(a1, a2, N) = (" + std::to_string(a1_) + ", " + std::to_string(a2_) + ", " +
                      std::to_string(n_) + ") is " + std::string(to_string(cls.tag)) + ", not simple");
}

SystemConfig SimpleTwoInterval::config() const { return SystemConfig({a1_, a2_}, {n_, n_}); }

int SimpleTwoInterval::side_of(double x) const noexcept {
  if (!(x >= 0)) return 0;
  double f = std::floor(x);
  if (f == static_cast<double>(a1_)) return 1;
  if (f == static_cast<double>(a2_)) return 2;
  return 0;
}

double inverse_normalizing_constant(const SimpleTwoInterval& sys) {
  double n = static_cast<double>(sys.n());
  double a1 = static_cast<double>(sys.a1());
  double a2 = static_cast<double>(sys.a2());
  return 2.0 * std::log1p(n / ((n + a1 * (a2 + 1)) * (n + a2 * (a1 + 1))));
}

double normalizing_constant(const SimpleTwoInterval& sys) { return 1.0 / inverse_normalizing_constant(sys); }

namespace {

// the y-range partner of x's interval
double partner(const SimpleTwoInterval& sys, int side) {
  return static_cast<double>(side == 1 ? sys.a2() : sys.a1());
}

// ln((N + (b+1)x) / (N + b x)) = ln(1 + x / (N + b x))
double antiderivative(double n, double b, double x) { return std::log1p(x / (n + b * x)); }

}  // namespace

double density(const SimpleTwoInterval& sys, double x) {
  int side = sys.side_of(x);
  if (side == 0) throw DomainError("density: x outside Omega");
  double n = static_cast<double>(sys.n());
  double b = partner(sys, side);
  return normalizing_constant(sys) * n / ((n + (b + 1) * x) * (n + b * x));
}

double interval_measure(const SimpleTwoInterval& sys, double lo, double hi) {
  double n = static_cast<double>(sys.n());
  double total = 0;
  for (int side : {1, 2}) {
    double left = static_cast<double>(side == 1 ? sys.a1() : sys.a2());
    double u = std::max(lo, left);
    double v = std::min(hi, left + 1);
    if (v <= u) continue;
    double b = partner(sys, side);
    total += antiderivative(n, b, v) - antiderivative(n, b, u);
  }
  return normalizing_constant(sys) * total;
}

bool in_natext_domain(const SimpleTwoInterval& sys, double x, double y) noexcept {
  int side = sys.side_of(x);
  if (side == 0) return false;
  double b = partner(sys, side);
  return y >= b && y <= b + 1;
}

double natext_density(const SimpleTwoInterval& sys, double x, double y) {
  if (!in_natext_domain(sys, x, y)) throw DomainError("natext_density: point outside the domain");
  double n = static_cast<double>(sys.n());
  double s = n + x * y;
  return normalizing_constant(sys) * n / (s * s);
}

DLBreakpoints dl_breakpoints(const SimpleTwoInterval& sys) {
  const std::int64_t n = sys.n(), a1 = sys.a1(), a2 = sys.a2();
  auto q = [](std::int64_t num, std::int64_t den) { return make_rational(num, den); };
  DLBreakpoints b{{
      q(n * a1, n + a1 * (a2 + 1)),
      q(n * a1, n + a1 * a2),
      q(n * (a1 + 1), n + (a1 + 1) * (a2 + 1)),
      q(n * (a1 + 1), n + a2 * (a1 + 1)),
      q(n * a2, n + a2 * (a1 + 1)),
      q(n * a2, n + a1 * a2),
      q(n * (a2 + 1), n + (a1 + 1) * (a2 + 1)),
      q(n * (a2 + 1), n + a1 * (a2 + 1)),
  }};
  if (!std::is_sorted(b.values.begin(), b.values.end()))
    throw std::logic_error("Doeblin-Lenstra thresholds out of order");
  return b;
}

namespace {

// Mass of the sublevel set inside the rectangle [x0,x0+1] x [y0,y0+1], one
// piece per stage as the curve N x/(N + x y) = c sweeps it.
double entering(double n, double x0, double y0, double c) {
  return c * (y0 + 1 + n / x0) / n - 1 - std::log((n * c + c * x0 * (y0 + 1)) / (x0 * n));
}

double crossing(double n, double x0, double y0, double c) {
  return -std::log((n + x0 * (y0 + 1)) / (n + x0 * y0)) + c / n;
}

double leaving(double n, double x0, double y0, double c) {
  return std::log((n * c + c * (x0 + 1) * (y0 + 1)) / (n * (x0 + 1)) * (n + x0 * y0) / (n + x0 * (y0 + 1))) + 1 -
         c / (x0 + 1) - c * y0 / n;
}

}  // namespace

namespace {

double dl_cdf_raw(const SimpleTwoInterval& sys, double c) {
  const auto bp = dl_breakpoints(sys);
  std::array<double, 8> t;
  for (std::size_t i = 0; i < 8; ++i) t[i] = to_double(bp.values[i]);
  const double n = static_cast<double>(sys.n());
  const double a1 = static_cast<double>(sys.a1());
  const double a2 = static_cast<double>(sys.a2());
  const double cc = normalizing_constant(sys);

  if (c <= t[0]) return 0.0;
  if (c <= t[1]) return cc * entering(n, a1, a2, c);
  if (c <= t[2]) return cc * crossing(n, a1, a2, c);
  if (c <= t[3]) return cc * leaving(n, a1, a2, c);
  if (c <= t[4]) return 0.5;
  if (c <= t[5]) return 0.5 + cc * entering(n, a2, a1, c);
  if (c <= t[6]) return 0.5 + cc * crossing(n, a2, a1, c);
  if (c <= t[7]) return 0.5 + cc * leaving(n, a2, a1, c);
  return 1.0;
}

}  // namespace

double dl_cdf(const SimpleTwoInterval& sys, double c) { return std::clamp(dl_cdf_raw(sys, c), 0.0, 1.0); }

std::pair<Rational, Rational> theta_bounds(std::int64_t a1, std::int64_t a2, std::int64_t numerator, int side) {
  const std::int64_t n = numerator;
  if (side == 1) return {make_rational(a1 * n, n + a1 * (a2 + 1)), make_rational(n * (a1 + 1), n + a2 * (a1 + 1))};
  if (side == 2) return {make_rational(a2 * n, n + a2 * (a1 + 1)), make_rational(n * (a2 + 1), n + a1 * (a2 + 1))};
  throw std::invalid_argument("theta_bounds: side must be 1 or 2");
}

}  // namespace ncf
