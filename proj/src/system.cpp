#include "ncf/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace ncf {

SystemConfig::SystemConfig(std::vector<std::int64_t> lefts, std::vector<std::int64_t> numerators)
    : lefts_(std::move(lefts)), numerators_(std::move(numerators)) {
  if (lefts_.empty()) throw ConfigError("a system needs at least one interval");
  if (lefts_.size() != numerators_.size())
    throw ConfigError("got " + std::to_string(lefts_.size()) + " intervals but " +
                      std::to_string(numerators_.size()) + " numerators");
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < lefts_.size(); ++i) {
    if (lefts_[i] < 0) throw ConfigError("interval " + std::to_string(i + 1) + " has a negative left endpoint");
    if (!seen.insert(lefts_[i]).second)
      throw ConfigError("left endpoint " + std::to_string(lefts_[i]) + " appears twice");
    if (numerators_[i] < 1) throw ConfigError("numerator " + std::to_string(i + 1) + " must be >= 1");
  }
}

std::int64_t SystemConfig::max_omega() const noexcept {
  return *std::max_element(lefts_.begin(), lefts_.end()) + 1;
}

bool SystemConfig::has_zero_interval() const noexcept {
  return std::find(lefts_.begin(), lefts_.end(), 0) != lefts_.end();
}

std::optional<std::size_t> SystemConfig::interval_of(double x) const noexcept {
  if (!std::isfinite(x) || x < 0) return std::nullopt;
  double f = std::floor(x);
  for (std::size_t i = 0; i < lefts_.size(); ++i)
    if (static_cast<double>(lefts_[i]) == f) return i;
  return std::nullopt;
}

std::optional<std::size_t> SystemConfig::interval_of(const Rational& x) const {
  if (sgn(x) < 0) return std::nullopt;
  BigInt f = ncf::floor(x);
  if (!f.fits_slong_p()) return std::nullopt;
  long fl = f.get_si();
  for (std::size_t i = 0; i < lefts_.size(); ++i)
    if (lefts_[i] == fl) return i;
  return std::nullopt;
}

std::string_view to_string(SystemClass c) noexcept {
  switch (c) {
    case SystemClass::not_allowable: return "not-allowable";
    case SystemClass::allowable: return "allowable";
    case SystemClass::desirable: return "desirable";
    case SystemClass::simple: return "simple";
  }
  return "unknown";
}

std::int64_t lowest_digit(const SystemConfig& cfg, std::size_t j) {
  std::int64_t a = cfg.left(j);
  return cfg.numerator(j) / (a + 1) - cfg.left(cfg.successor(j));
}

std::optional<std::int64_t> highest_digit(const SystemConfig& cfg, std::size_t j) {
  std::int64_t a = cfg.left(j);
  if (a == 0) return std::nullopt;
  std::int64_t n = cfg.numerator(j);
  std::int64_t top = n / a - cfg.left(cfg.successor(j));
  // When a | N the top digit lives only on the point {a}.
  return n % a == 0 ? top - 1 : top;
}

Classification classify(const SystemConfig& cfg) {
  Classification out;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    std::int64_t d = lowest_digit(cfg, j);
    if (d < 1) {
      out.tag = SystemClass::not_allowable;
      out.nonpositive_digit = DigitWitness{j, d};
      return out;
    }
  }
  out.tag = SystemClass::allowable;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    std::int64_t a = cfg.left(i);
    std::int64_t n = cfg.numerator(i);
    if (a == 0) continue;
    if (n % a != 0) {
      out.divisibility = DivisibilityWitness{i, a, n};
      return out;
    }
    if (n % (a + 1) != 0) {
      out.divisibility = DivisibilityWitness{i, a + 1, n};
      return out;
    }
  }
  out.tag = SystemClass::desirable;
  for (std::size_t i = 1; i < cfg.size(); ++i) {
    if (cfg.numerator(i) != cfg.numerator(0)) {
      out.unequal_numerator = i;
      return out;
    }
  }
  out.tag = SystemClass::simple;
  return out;
}

std::vector<Branch> branches(const SystemConfig& cfg, std::size_t j, std::optional<std::int64_t> digit_cap) {
  if (j >= cfg.size()) throw std::out_of_range("interval index out of range");
  const std::int64_t a = cfg.left(j);
  const std::int64_t n = cfg.numerator(j);
  const std::int64_t ak = cfg.left(cfg.successor(j));
  const std::int64_t low = lowest_digit(cfg, j);

  std::int64_t top;
  if (a == 0) {
    if (!digit_cap) throw DomainError("interval [0,1) has infinitely many branches; a digit cap is required");
    top = *digit_cap;
  } else {
    top = n / a - ak;
  }

  const Rational left = make_rational(a);
  const Rational right = make_rational(a + 1);
  std::vector<Branch> out;
  for (std::int64_t d = top; d >= low; --d) {
    Rational c_lo = make_rational(n, d + ak + 1);
    Rational c_hi = make_rational(n, d + ak);
    Branch b;
    b.interval = j;
    b.digit = d;
    b.lo = std::max(left, c_lo);
    b.hi = std::min(right, c_hi);
    if (b.lo > b.hi) continue;
    if (b.lo == b.hi && b.lo != left) continue;  // only the point {a_j} can be a degenerate cylinder
    b.lo_closed = (b.lo == left && c_lo < left);
    b.hi_closed = (b.hi == c_hi && c_hi < right);
    b.full = !b.degenerate() && c_lo >= left && c_hi <= right;
    out.push_back(std::move(b));
  }
  return out;
}

MapStep<double> map_T(const SystemConfig& cfg, double x) {
  auto j = cfg.interval_of(x);
  if (!j) throw DomainError("x = " + std::to_string(x) + " is outside Omega");
  if (x == 0.0) return {0.0, 0, *j, *j};
  std::size_t k = cfg.successor(*j);
  double q = static_cast<double>(cfg.numerator(*j)) / x;
  double fl = std::floor(q);
  if (fl > 9.0e18) throw std::overflow_error("digit exceeds 64-bit range");
  std::int64_t ak = cfg.left(k);
  return {q - fl + static_cast<double>(ak), static_cast<std::int64_t>(fl) - ak, *j, k};
}

MapStep<Rational> map_T(const SystemConfig& cfg, const Rational& x) {
  auto j = cfg.interval_of(x);
  if (!j) throw DomainError("x = " + to_string(x) + " is outside Omega");
  if (sgn(x) == 0) return {Rational(0), 0, *j, *j};
  std::size_t k = cfg.successor(*j);
  Rational q = Rational(to_bigint(cfg.numerator(*j))) / x;
  BigInt fl = ncf::floor(q);
  std::int64_t ak = cfg.left(k);
  Rational image = q - Rational(fl) + Rational(to_bigint(ak));
  return {image, to_int64(fl) - ak, *j, k};
}

namespace {

template <class S>
std::vector<OrbitPoint<S>> orbit_impl(const SystemConfig& cfg, S x, std::size_t n) {
  std::vector<OrbitPoint<S>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto step = map_T(cfg, x);
    out.push_back({x, step.digit, step.from});
    x = std::move(step.image);
  }
  return out;
}

}  // namespace

std::vector<OrbitPoint<double>> orbit(const SystemConfig& cfg, double x0, std::size_t n) {
  return orbit_impl<double>(cfg, x0, n);
}

std::vector<OrbitPoint<Rational>> orbit(const SystemConfig& cfg, const Rational& x0, std::size_t n) {
  return orbit_impl<Rational>(cfg, x0, n);
}

std::vector<std::int64_t> desirable_partners(std::int64_t n1, std::int64_t limit) {
  if (n1 < 2) throw std::invalid_argument("desirable_partners needs N1 >= 2");
  std::vector<std::int64_t> out;
  if (limit < 1) return out;
  std::vector<bool> hit(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t k = 1; k <= n1 - 1; ++k) {
    std::int64_t base = k * (k + 1);
    if (base > limit) break;
    for (std::int64_t v = base; v <= limit; v += base) hit[static_cast<std::size_t>(v)] = true;
  }
  for (std::int64_t v = 1; v <= limit; ++v)
    if (hit[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

}  // namespace ncf
