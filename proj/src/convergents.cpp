#include "ncf/convergents.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ncf {

Rational ConvergentState::value() const {
  Rational r(p_cur, q_cur);
  r.canonicalize();
  return r;
}

bool ConvergentState::determinant_holds() const {
  BigInt expected = (n % 2 == 0) ? numerator_product : BigInt(-numerator_product);
  return determinant() == expected;
}

ConvergentState advance(const ConvergentState& state, MobiusStep step) {
  ConvergentState next;
  BigInt d = to_bigint(step.digit);
  BigInt nn = to_bigint(step.numerator);
  next.p_prev = state.p_cur;
  next.q_prev = state.q_cur;
  next.p_cur = d * state.p_cur + nn * state.p_prev;
  next.q_cur = d * state.q_cur + nn * state.q_prev;
  next.numerator_product = state.numerator_product * nn;
  next.n = state.n + 1;
  assert(next.determinant_holds());
  return next;
}

double reconstruct(const ConvergentState& state, double tail) {
  if (state.n == 0) return tail;
  double num = state.p_cur.get_d() + state.p_prev.get_d() * tail;
  double den = state.q_cur.get_d() + state.q_prev.get_d() * tail;
  if (den == 0.0) throw std::logic_error("reconstruct: zero denominator");
  return num / den;
}

Rational reconstruct(const ConvergentState& state, const Rational& tail) {
  if (state.n == 0) return tail;
  Rational num = Rational(state.p_cur) + Rational(state.p_prev) * tail;
  Rational den = Rational(state.q_cur) + Rational(state.q_prev) * tail;
  if (sgn(den) == 0) throw std::logic_error("reconstruct: zero denominator");
  return num / den;
}

Rational error_bound_exact(const ConvergentState& state, const SystemConfig& cfg) {
  Rational r(state.numerator_product * to_bigint(cfg.max_omega()), state.q_cur * state.q_cur);
  r.canonicalize();
  return r;
}

double error_bound(const ConvergentState& state, const SystemConfig& cfg) {
  return to_double(error_bound_exact(state, cfg));
}

namespace {

bool is_zero(double v) { return v == 0.0; }
bool is_zero(const Rational& v) { return sgn(v) == 0; }

template <class S>
std::vector<ExpansionRow<S>> expand_impl(const SystemConfig& cfg, S x, std::size_t depth) {
  std::vector<ExpansionRow<S>> rows;
  rows.reserve(depth);
  ConvergentState state;
  for (std::size_t i = 1; i <= depth; ++i) {
    if (is_zero(x)) break;
    auto step = map_T(cfg, x);
    std::int64_t nn = cfg.numerator(step.from);
    state = advance(state, {step.digit, nn});
    rows.push_back({i, step.digit, nn, state, step.image});
    x = std::move(step.image);
  }
  return rows;
}

}  // namespace

std::vector<ExpansionRow<double>> expand(const SystemConfig& cfg, double x0, std::size_t depth) {
  return expand_impl<double>(cfg, x0, depth);
}

std::vector<ExpansionRow<Rational>> expand(const SystemConfig& cfg, const Rational& x0, std::size_t depth) {
  return expand_impl<Rational>(cfg, x0, depth);
}

ThetaState theta_start(const SystemConfig& cfg, double x0) {
  auto j = cfg.interval_of(x0);
  if (!j) throw DomainError("x0 outside Omega");
  ThetaState s;
  s.t = x0;
  s.interval = *j;
  return s;
}

ThetaState theta_advance(const SystemConfig& cfg, const ThetaState& s) {
  auto step = map_T(cfg, s.t);
  double nn = static_cast<double>(cfg.numerator(step.from));
  ThetaState out;
  out.w = 1.0 / (static_cast<double>(step.digit) + nn * s.w);
  out.v = nn * out.w;
  out.t = step.image;
  out.n = s.n + 1;
  out.interval = step.to;
  return out;
}

std::vector<double> theta_sequence(const SystemConfig& cfg, double x0, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  ThetaState s = theta_start(cfg, x0);
  for (std::size_t i = 0; i < n && s.t != 0.0; ++i) {
    s = theta_advance(cfg, s);
    out.push_back(s.theta());
  }
  return out;
}

std::vector<double> theta_sequence(const SystemConfig& cfg, const Rational& x0, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  double w = 0;
  for (const auto& row : expand(cfg, x0, n)) {
    w = 1.0 / (static_cast<double>(row.digit) + static_cast<double>(row.numerator) * w);
    double t = to_double(row.tail);
    out.push_back(t / (1.0 + t * w));
  }
  return out;
}

std::vector<double> theta_definitional(const SystemConfig& cfg, const Rational& x0, std::size_t n) {
  std::vector<double> out;
  for (const auto& row : expand(cfg, x0, n)) {
    const auto& st = row.state;
    Rational diff = x0 - st.value();
    Rational theta = abs(diff) * Rational(st.q_cur * st.q_cur) / Rational(st.numerator_product);
    out.push_back(to_double(theta));
  }
  return out;
}

double derivative_Tk(const ConvergentState& state, double x) {
  if (state.n == 0) return 1.0;
  Rational gap = Rational(state.p_prev) - Rational(state.q_prev) * exact(x);
  if (sgn(gap) == 0) throw DomainError("derivative_Tk: x is a pole of T^k");
  double v = to_double(Rational(state.numerator_product) / (gap * gap));
  return state.n % 2 == 0 ? v : -v;
}

double adler_ratio(const ConvergentState& state, double x) {
  Rational gap = abs(Rational(state.p_prev) - Rational(state.q_prev) * exact(x));
  return to_double(2 * Rational(state.q_prev) * gap / Rational(state.numerator_product));
}

}  // namespace ncf
