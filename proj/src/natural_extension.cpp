#include "ncf/natural_extension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncf {

namespace {

template <class S>
S from_rational(const Rational& r);
template <>
double from_rational<double>(const Rational& r) {
  return to_double(r);
}
template <>
Rational from_rational<Rational>(const Rational& r) {
  return r;
}

template <class S>
S from_int(std::int64_t v) {
  return from_rational<S>(make_rational(v));
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)); }
bool near(const Rational& a, const Rational& b, double) { return a == b; }

bool touches(double lo, double hi, double tol) { return lo <= hi + tol * std::max(1.0, std::fabs(hi)); }
bool touches(const Rational& lo, const Rational& hi, double) { return lo <= hi; }

template <class S>
double rect_mass_of(double n, const Rect<S>& r) {
  std::optional<double> hi;
  if (r.y_hi) hi = as_double(*r.y_hi);
  return rect_mass(n, as_double(r.x_lo), as_double(r.x_hi), as_double(r.y_lo), hi);
}

template <class S>
bool degenerate(const Rect<S>& r) {
  if (!(r.x_lo < r.x_hi)) return true;
  return r.y_hi && !(r.y_lo < *r.y_hi);
}

template <class S>
std::vector<Rect<S>> merge_interval(std::vector<Rect<S>> rects, double tol) {
  std::sort(rects.begin(), rects.end(), [](const Rect<S>& a, const Rect<S>& b) {
    if (a.x_lo != b.x_lo) return a.x_lo < b.x_lo;
    if (a.x_hi != b.x_hi) return a.x_hi < b.x_hi;
    return a.y_lo < b.y_lo;
  });
  std::vector<Rect<S>> out;
  std::size_t i = 0;
  while (i < rects.size()) {
    std::size_t g = i + 1;
    while (g < rects.size() && near(rects[g].x_lo, rects[i].x_lo, tol) && near(rects[g].x_hi, rects[i].x_hi, tol)) ++g;
    std::sort(rects.begin() + static_cast<std::ptrdiff_t>(i), rects.begin() + static_cast<std::ptrdiff_t>(g),
              [](const Rect<S>& a, const Rect<S>& b) { return a.y_lo < b.y_lo; });
    Rect<S> cur = rects[i];
    for (std::size_t t = i + 1; t < g; ++t) {
      const Rect<S>& r = rects[t];
      if (cur.unbounded()) {
        cur.tail = cur.tail || r.tail;
        continue;
      }
      if (touches(r.y_lo, *cur.y_hi, tol)) {
        if (r.unbounded())
          cur.y_hi.reset();
        else if (*cur.y_hi < *r.y_hi)
          cur.y_hi = r.y_hi;
        cur.tail = cur.tail || r.tail;
      } else {
        out.push_back(cur);
        cur = r;
      }
    }
    out.push_back(cur);
    i = g;
  }
  return out;
}

}  // namespace

template <class S>
std::size_t RectUnion<S>::rect_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.size();
  return n;
}

template <class S>
RectUnion<S> full_domain(const SystemConfig& cfg) {
  RectUnion<S> u;
  u.parts.resize(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i)
    u.parts[i].push_back({from_int<S>(cfg.left(i)), from_int<S>(cfg.left(i) + 1), from_int<S>(0), std::nullopt, false});
  return u;
}

double rect_mass(double n, double x_lo, double x_hi, double y_lo, std::optional<double> y_hi) {
  double dx = x_hi - x_lo;
  if (dx <= 0) return 0.0;
  if (!y_hi) {
    if (x_lo <= 0) throw DomainError("mass diverges: unbounded y over an interval touching 0");
    return std::log1p(n * dx / (x_lo * (n + x_hi * y_lo)));
  }
  double dy = *y_hi - y_lo;
  if (dy <= 0) return 0.0;
  return std::log1p(n * dx * dy / ((n + x_lo * *y_hi) * (n + x_hi * y_lo)));
}

template <class S>
double mass(const SystemConfig& cfg, const RectUnion<S>& x) {
  double total = 0;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    double n = static_cast<double>(cfg.numerator(i));
    for (const auto& r : x.parts[i]) total += rect_mass_of(n, r);
  }
  return total;
}

template <class S>
RectUnion<S> iterate_domain(const SystemConfig& cfg, const RectUnion<S>& x, const IterateOptions& opt,
                            IterateStats* stats) {
  const std::size_t m = cfg.size();
  if (x.parts.size() != m) throw std::invalid_argument("iterate_domain: domain does not match the system");
  IterateStats local;
  std::vector<std::vector<Rect<S>>> emitted(m);

  for (std::size_t j = 0; j < m; ++j) {
    if (x.parts[j].empty()) continue;
    const std::size_t k = cfg.successor(j);
    const std::int64_t nj = cfg.numerator(j);
    const std::int64_t ak = cfg.left(k);
    const S n = from_int<S>(nj);
    const S left_k = from_int<S>(ak);
    const S right_k = from_int<S>(ak + 1);
    const bool zero = cfg.left(j) == 0;
    if (zero && !opt.digit_cap) throw DomainError("iterate_domain: interval [0,1) needs a digit cap");

    struct B {
      S lo, hi, d;
    };
    std::vector<B> brs;
    for (const auto& b : branches(cfg, j, zero ? opt.digit_cap : std::nullopt)) {
      if (b.degenerate()) continue;
      brs.push_back({from_rational<S>(b.lo), from_rational<S>(b.hi), from_int<S>(b.digit)});
    }
    std::optional<S> tail_edge;
    if (zero) tail_edge = from_rational<S>(make_rational(nj, *opt.digit_cap + ak + 1));

    for (const auto& r : x.parts[j]) {
      for (const auto& b : brs) {
        S lo = std::max(r.x_lo, b.lo);
        S hi = std::min(r.x_hi, b.hi);
        if (!(lo < hi)) continue;
        Rect<S> img;
        img.x_lo = std::max(S(n / hi - b.d), left_k);
        img.x_hi = std::min(S(n / lo - b.d), right_k);
        img.y_lo = r.unbounded() ? from_int<S>(0) : S(n / (b.d + *r.y_hi));
        img.y_hi = S(n / (b.d + r.y_lo));
        emitted[k].push_back(std::move(img));
      }
      if (tail_edge && r.x_lo < *tail_edge) {
        Rect<S> t;
        t.x_lo = left_k;
        t.x_hi = right_k;
        t.y_lo = from_int<S>(0);
        t.y_hi = S(n / (from_int<S>(*opt.digit_cap + 1) + r.y_lo));
        t.tail = true;
        emitted[k].push_back(std::move(t));
        ++local.tails;
      }
    }
  }

  RectUnion<S> out;
  out.parts.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    local.emitted += emitted[k].size();
    double n = static_cast<double>(cfg.numerator(k));
    std::vector<Rect<S>> kept;
    kept.reserve(emitted[k].size());
    for (auto& r : emitted[k]) {
      if (degenerate(r) || (!r.unbounded() && rect_mass_of(n, r) < opt.prune_below)) {
        ++local.pruned;
        continue;
      }
      kept.push_back(std::move(r));
    }
    out.parts[k] = merge_interval(std::move(kept), opt.merge_tolerance);
  }
  if (stats) *stats = local;
  return out;
}

std::pair<double, double> natext_map(const SystemConfig& cfg, double x, double y) {
  if (y < 0) throw DomainError("natext_map: y must be non-negative");
  auto s = map_T(cfg, x);
  double n = static_cast<double>(cfg.numerator(s.from));
  return {s.image, n / (static_cast<double>(s.digit) + y)};
}

std::pair<Rational, Rational> natext_map(const SystemConfig& cfg, const Rational& x, const Rational& y) {
  if (sgn(y) < 0) throw DomainError("natext_map: y must be non-negative");
  auto s = map_T(cfg, x);
  Rational n = make_rational(cfg.numerator(s.from));
  return {s.image, n / (make_rational(s.digit) + y)};
}

template <class S>
std::vector<DomainReport> r_sequence(const SystemConfig& cfg, std::size_t n_max, const IterateOptions& opt,
                                     const std::optional<RectUnion<S>>& seed, std::vector<RectUnion<S>>* domains) {
  RectUnion<S> cur = seed ? *seed : full_domain<S>(cfg);
  std::vector<DomainReport> out;
  std::size_t pruned = 0;
  double m_cur = mass(cfg, cur);
  if (domains) domains->clear();
  for (std::size_t n = 0; n <= n_max; ++n) {
    IterateStats st;
    RectUnion<S> next = iterate_domain(cfg, cur, opt, &st);
    double m_next = mass(cfg, next);
    DomainReport rep;
    rep.n = n;
    rep.mass = m_cur;
    rep.r = m_cur > 0 ? (m_cur - m_next) / m_cur : 0.0;
    rep.rect_count = cur.rect_count();
    rep.pruned = pruned;
    out.push_back(rep);
    if (domains) domains->push_back(cur);
    cur = std::move(next);
    m_cur = m_next;
    pruned = st.pruned;
  }
  return out;
}

double DensityGrid::integral() const {
  double s = 0;
  for (double v : f) s += v;
  return s * cell_width;
}

DensityGrid make_grid(const SystemConfig& cfg, std::size_t per_unit) {
  if (per_unit == 0) throw std::invalid_argument("grid resolution must be positive");
  DensityGrid g;
  g.per_unit = per_unit;
  g.cell_width = 1.0 / static_cast<double>(per_unit);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    double a = static_cast<double>(cfg.left(i));
    for (std::size_t c = 0; c < per_unit; ++c) {
      g.interval.push_back(i);
      g.x.push_back(a + (static_cast<double>(c) + 0.5) * g.cell_width);
    }
  }
  g.f.assign(g.x.size(), 0.0);
  return g;
}

template <class S>
DensityGrid project_density(const SystemConfig& cfg, const RectUnion<S>& x, std::size_t per_unit,
                            Normalization norm) {
  DensityGrid g = make_grid(cfg, per_unit);
  struct R {
    double x_lo, x_hi, y_lo, y_hi;
    bool unbounded;
  };
  std::vector<std::vector<R>> rs(cfg.size());
  for (std::size_t i = 0; i < x.parts.size(); ++i)
    for (const auto& r : x.parts[i])
      rs[i].push_back({as_double(r.x_lo), as_double(r.x_hi), as_double(r.y_lo), r.y_hi ? as_double(*r.y_hi) : 0.0,
                       r.unbounded()});
  const std::size_t m = cfg.size();
  std::vector<double> mass_of(m, 0.0);
  for (std::size_t c = 0; c < g.x.size(); ++c) {
    std::size_t i = g.interval[c];
    double n = static_cast<double>(cfg.numerator(i));
    double xv = g.x[c];
    double v = 0;
    for (const auto& r : rs[i]) {
      if (xv < r.x_lo || xv > r.x_hi) continue;
      double upper = r.unbounded ? 1.0 / xv : r.y_hi / (n + xv * r.y_hi);
      v += upper - r.y_lo / (n + xv * r.y_lo);
    }
    g.f[c] = v;
  }
  for (std::size_t i = 0; i < m; ++i) {
    double n = static_cast<double>(cfg.numerator(i));
    for (const auto& r : rs[i])
      mass_of[i] += rect_mass(n, r.x_lo, r.x_hi, r.y_lo, r.unbounded ? std::nullopt : std::optional<double>(r.y_hi));
  }
  double total = 0;
  for (double v : mass_of) total += v;
  if (!(total > 0)) throw DomainError("project_density: empty domain");
  std::vector<double> scale(m, 1.0 / total);
  if (norm == Normalization::per_interval) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mass_of[i] > 0)) throw DomainError("project_density: interval " + std::to_string(i + 1) + " is empty");
      scale[i] = 1.0 / (static_cast<double>(m) * mass_of[i]);
    }
  }
  g.normalization = 1.0 / total;
  for (std::size_t c = 0; c < g.x.size(); ++c) g.f[c] *= scale[g.interval[c]];
  return g;
}

bool QuadraticSurd::is_rational() const { return mpz_perfect_square_p(d.get_mpz_t()) != 0; }

std::optional<Rational> QuadraticSurd::rational() const {
  if (!is_rational()) return std::nullopt;
  BigInt root = sqrt(d);
  Rational r(p + root, q);
  r.canonicalize();
  return r;
}

double QuadraticSurd::value() const {
  if (auto r = rational()) return to_double(*r);
  double pd = p.get_d();
  double root = std::sqrt(d.get_d());
  if (pd >= 0) return (pd + root) / q.get_d();
  // (p + sqrt d)/q = (d - p^2) / (q (sqrt d - p))
  return BigInt(d - p * p).get_d() / (q.get_d() * (root - pd));
}

Rational QuadraticSurd::lower_bound(const BigInt& den) const {
  if (auto r = rational()) return *r;
  BigInt s = sqrt(BigInt(d * den * den));
  BigInt num;
  BigInt top = p * den + s;
  mpz_fdiv_q(num.get_mpz_t(), top.get_mpz_t(), q.get_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational QuadraticSurd::upper_bound(const BigInt& den) const {
  if (auto r = rational()) return *r;
  BigInt s = sqrt(BigInt(d * den * den));
  BigInt num;
  BigInt top = p * den + s + 1;
  mpz_cdiv_q(num.get_mpz_t(), top.get_mpz_t(), q.get_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string QuadraticSurd::str() const {
  if (auto r = rational()) return to_string(*r);
  return "(" + p.get_str() + "+sqrt(" + d.get_str() + "))/" + q.get_str();
}

QuadraticSurd periodic_point(const std::vector<MobiusStep>& cycle) {
  if (cycle.empty()) throw DomainError("periodic_point: empty cycle");
  ConvergentState st;
  for (const auto& s : cycle) {
    if (s.digit < 1 || s.numerator < 1) throw DomainError("periodic_point: digits and numerators must be positive");
    st = advance(st, s);
  }
  // q_{k-1} x^2 + (q_k - p_{k-1}) x - p_k = 0
  BigInt a = st.q_prev;
  BigInt b = st.q_cur - st.p_prev;
  BigInt c = -st.p_cur;
  if (a == 0) throw DomainError("periodic_point: degenerate cycle");
  QuadraticSurd out{-b, b * b - 4 * a * c, 2 * a};
  if (out.d < 0 || !(out.value() > 0)) throw DomainError("periodic_point: no positive root");
  if (out.is_rational()) {
    Rational r = *out.rational();
    out = {r.get_num(), 0, r.get_den()};
  }
  return out;
}

Rational finite_expansion(const std::vector<MobiusStep>& steps, const Rational& tail) {
  Rational v = tail;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Rational den = make_rational(it->digit) + v;
    if (sgn(den) == 0) throw DomainError("finite_expansion: zero denominator");
    v = make_rational(it->numerator) / den;
  }
  return v;
}

std::pair<SeedChain, SeedChain> seed_chains(const SystemConfig& cfg, std::size_t k) {
  const std::size_t m = cfg.size();
  auto build = [&](bool lower) {
    SeedChain c;
    bool is_lower = lower;
    std::size_t at = k;
    for (std::size_t step = 0; step < 2 * m; ++step) {
      std::size_t j = cfg.predecessor(at);
      if (is_lower) {
        auto h = highest_digit(cfg, j);
        if (!h) return c;
        c.steps.push_back({*h, cfg.numerator(j)});
      } else {
        c.steps.push_back({lowest_digit(cfg, j), cfg.numerator(j)});
      }
      is_lower = !is_lower;
      at = j;
      if (at == k && is_lower == lower) {
        c.periodic = true;
        return c;
      }
    }
    throw std::logic_error("seed_chains: chain did not close");
  };
  return {build(true), build(false)};
}

SeededBlocks seeded_blocks(const SystemConfig& cfg, const BigInt& den) {
  if (!classify(cfg).allowable()) throw DomainError("seeded_blocks: system is not allowable");
  SeededBlocks out;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    auto [lo_chain, hi_chain] = seed_chains(cfg, k);
    auto eval = [&](const SeedChain& c, bool lower, std::optional<QuadraticSurd>& exact_out) {
      if (!c.periodic) return finite_expansion(c.steps, Rational(0));
      QuadraticSurd s = periodic_point(c.steps);
      exact_out = s;
      return lower ? s.lower_bound(den) : s.upper_bound(den);
    };
    std::optional<QuadraticSurd> lo_s, hi_s;
    Rational lo = eval(lo_chain, true, lo_s);
    Rational hi = eval(hi_chain, false, hi_s);
    out.y.emplace_back(lo, hi);
    out.lo_exact.push_back(lo_s);
    out.hi_exact.push_back(hi_s);
  }
  return out;
}

template <class S>
RectUnion<S> seeded_domain(const SystemConfig& cfg, const BigInt& den) {
  SeededBlocks b = seeded_blocks(cfg, den);
  RectUnion<S> u;
  u.parts.resize(cfg.size());
  for (std::size_t k = 0; k < cfg.size(); ++k)
    u.parts[k].push_back({from_int<S>(cfg.left(k)), from_int<S>(cfg.left(k) + 1), from_rational<S>(b.y[k].first),
                          from_rational<S>(b.y[k].second), false});
  return u;
}

namespace {

using Span = std::pair<double, double>;

std::vector<Span> y_set(const std::vector<Span>& raw) {
  std::vector<Span> v = raw;
  std::sort(v.begin(), v.end());
  std::vector<Span> out;
  for (const auto& s : v) {
    if (!out.empty() && s.first <= out.back().second)
      out.back().second = std::max(out.back().second, s.second);
    else
      out.push_back(s);
  }
  return out;
}

double dist_to(double p, const std::vector<Span>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : set) {
    double d = p < s.first ? s.first - p : (p > s.second ? p - s.second : 0.0);
    best = std::min(best, d);
  }
  return best;
}

double directed(const std::vector<Span>& a, const std::vector<Span>& b) {
  double worst = 0;
  for (const auto& s : a) {
    worst = std::max({worst, dist_to(s.first, b), dist_to(s.second, b)});
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      double mid = 0.5 * (b[i].second + b[i + 1].first);
      if (mid > s.first && mid < s.second) worst = std::max(worst, dist_to(mid, b));
    }
  }
  return worst;
}

}  // namespace

template <class S>
double slab_hausdorff(const SystemConfig& cfg, const RectUnion<S>& a, const RectUnion<S>& b) {
  const double inf = std::numeric_limits<double>::infinity();
  double worst = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    double left = static_cast<double>(cfg.left(i));
    auto collect = [&](const RectUnion<S>& u, bool& unbounded) {
      std::vector<Span> raw;
      if (i >= u.parts.size()) return raw;
      for (const auto& r : u.parts[i]) {
        if (!near(as_double(r.x_lo), left, 1e-12) || !near(as_double(r.x_hi), left + 1, 1e-12))
          throw std::invalid_argument("slab_hausdorff: rectangle does not span its interval");
        if (r.unbounded()) unbounded = true;
        raw.emplace_back(as_double(r.y_lo), r.y_hi ? as_double(*r.y_hi) : inf);
      }
      return y_set(raw);
    };
    bool ua = false, ub = false;
    auto ya = collect(a, ua);
    auto yb = collect(b, ub);
    if (ya.empty() && yb.empty()) continue;
    if (ya.empty() || yb.empty() || ua || ub) return inf;
    worst = std::max({worst, directed(ya, yb), directed(yb, ya)});
  }
  return worst;
}

template <class S>
bool contains(const RectUnion<S>& outer, const RectUnion<S>& inner) {
  for (std::size_t i = 0; i < inner.parts.size(); ++i) {
    const std::vector<Rect<S>> empty;
    const auto& out_rs = i < outer.parts.size() ? outer.parts[i] : empty;
    for (const auto& r : inner.parts[i]) {
      std::vector<S> xs{r.x_lo, r.x_hi};
      for (const auto& o : out_rs) {
        if (r.x_lo < o.x_lo && o.x_lo < r.x_hi) xs.push_back(o.x_lo);
        if (r.x_lo < o.x_hi && o.x_hi < r.x_hi) xs.push_back(o.x_hi);
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      for (std::size_t t = 0; t + 1 < xs.size(); ++t) {
        std::vector<const Rect<S>*> cover;
        for (const auto& o : out_rs)
          if (o.x_lo <= xs[t] && o.x_hi >= xs[t + 1]) cover.push_back(&o);
        std::sort(cover.begin(), cover.end(), [](const Rect<S>* p, const Rect<S>* q) { return p->y_lo < q->y_lo; });
        S reach = r.y_lo;
        bool done = false;
        for (const auto* o : cover) {
          if (reach < o->y_lo) break;
          if (o->unbounded()) {
            done = true;
            break;
          }
          if (reach < *o->y_hi) reach = *o->y_hi;
          if (r.y_hi && !(reach < *r.y_hi)) {
            done = true;
            break;
          }
        }
        if (!done) return false;
      }
    }
  }
  return true;
}

template <class S>
RectUnion<S> two_interval_limit(const SystemConfig& cfg) {
  if (cfg.size() != 2) throw std::invalid_argument("two_interval_limit: system must have two intervals");
  RectUnion<S> u;
  u.parts.resize(2);
  for (std::size_t i = 0; i < 2; ++i) {
    std::int64_t a = cfg.left(i), b = cfg.left(1 - i);
    u.parts[i].push_back({from_int<S>(a), from_int<S>(a + 1), from_int<S>(b), from_int<S>(b + 1), false});
  }
  return u;
}

#define NCF_INSTANTIATE(S)                                                                                      \
  template struct RectUnion<S>;                                                                                 \
  template RectUnion<S> full_domain<S>(const SystemConfig&);                                                    \
  template RectUnion<S> iterate_domain<S>(const SystemConfig&, const RectUnion<S>&, const IterateOptions&,      \
                                          IterateStats*);                                                       \
  template double mass<S>(const SystemConfig&, const RectUnion<S>&);                                           \
  template std::vector<DomainReport> r_sequence<S>(const SystemConfig&, std::size_t, const IterateOptions&,     \
                                                   const std::optional<RectUnion<S>>&,                         \
                                                   std::vector<RectUnion<S>>*);                                 \
  template DensityGrid project_density<S>(const SystemConfig&, const RectUnion<S>&, std::size_t, Normalization); \
  template RectUnion<S> seeded_domain<S>(const SystemConfig&, const BigInt&);                                   \
  template double slab_hausdorff<S>(const SystemConfig&, const RectUnion<S>&, const RectUnion<S>&);             \
  template bool contains<S>(const RectUnion<S>&, const RectUnion<S>&);                                          \
  template RectUnion<S> two_interval_limit<S>(const SystemConfig&);

NCF_INSTANTIATE(double)
NCF_INSTANTIATE(Rational)

#undef NCF_INSTANTIATE

}  // namespace ncf
