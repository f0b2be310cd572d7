#include <doctest.h>

#include <cmath>
#include <random>

#include "ncf/system.hpp"
#include "support.hpp"

using namespace ncf;

TEST_SUITE("system") {

TEST_CASE("classification of the worked examples") {
  SystemConfig ex1({1, 3}, {9, 12});
  SystemConfig ex2({1, 2}, {8, 12});
  SystemConfig ex3({0, 2, 1, 3}, {12, 12, 12, 12});

  auto c1 = classify(ex1);
  CHECK(c1.tag == SystemClass::allowable);
  REQUIRE(c1.divisibility);
  CHECK(c1.divisibility->interval == 0);
  CHECK(c1.divisibility->divisor == 2);
  CHECK(c1.divisibility->numerator == 9);

  auto c2 = classify(ex2);
  CHECK(c2.tag == SystemClass::desirable);
  REQUIRE(c2.unequal_numerator);
  CHECK(*c2.unequal_numerator == 1);

  CHECK(classify(ex3).tag == SystemClass::simple);
  CHECK(classify(SystemConfig({1, 2}, {12, 12})).simple());
  CHECK(to_string(SystemClass::not_allowable) == "not-allowable");
}

TEST_CASE("non-allowable system reports the bad digit") {
  SystemConfig cfg({1, 5}, {2, 2});
  auto c = classify(cfg);
  CHECK(c.tag == SystemClass::not_allowable);
  REQUIRE(c.nonpositive_digit);
  CHECK(c.nonpositive_digit->interval == 0);
  CHECK(c.nonpositive_digit->digit == 2 / 2 - 5);
}

TEST_CASE("single interval at 0 is the N-continued fraction") {
  SystemConfig cfg({0}, {1});
  CHECK(classify(cfg).simple());
  CHECK(lowest_digit(cfg, 0) == 1);
  CHECK_FALSE(highest_digit(cfg, 0));
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(SystemConfig({}, {}), ConfigError);
  CHECK_THROWS_AS(SystemConfig({1, 2}, {12}), ConfigError);
  CHECK_THROWS_AS(SystemConfig({1, 1}, {12, 12}), ConfigError);
  CHECK_THROWS_AS(SystemConfig({-1, 2}, {12, 12}), ConfigError);
  CHECK_THROWS_AS(SystemConfig({1, 2}, {0, 12}), ConfigError);
}

TEST_CASE("class hierarchy agrees with brute-force digits") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> a_dist(0, 5), n_dist(1, 40);
  int seen_allowable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::int64_t a1 = a_dist(rng), a2 = a_dist(rng);
    if (a1 == a2) continue;
    SystemConfig cfg({a1, a2}, {n_dist(rng), n_dist(rng)});
    auto c = classify(cfg);
    if (c.simple()) CHECK(c.desirable());
    if (c.desirable()) CHECK(c.allowable());
    // the infimum of the digit is approached as x -> a_j + 1
    bool positive = true;
    for (std::size_t j = 0; j < 2; ++j) {
      Rational near_top = make_rational(cfg.left(j) * 1000000 + 999999, 1000000);
      if (oracle::brute_digit(cfg, near_top) < 1) positive = false;
    }
    CHECK(positive == c.allowable());
    seen_allowable += c.allowable();
  }
  CHECK(seen_allowable > 20);
}

TEST_CASE("branches of Example 2 on [1,2)") {
  SystemConfig cfg({1, 2}, {8, 12});
  auto bs = branches(cfg, 0);
  REQUIRE(bs.size() == 5);
  CHECK(bs[0].digit == 6);
  CHECK(bs[0].degenerate());
  CHECK(bs[0].lo == 1);
  CHECK(bs[0].lo_closed);
  for (std::size_t i = 1; i < bs.size(); ++i) {
    CHECK(bs[i].digit == 6 - static_cast<std::int64_t>(i));
    CHECK(bs[i].full);
    CHECK(bs[i].lo == make_rational(8, bs[i].digit + 3));
  }
  CHECK(bs.back().hi == 2);
  CHECK_FALSE(bs.back().hi_closed);
  CHECK(highest_digit(cfg, 0) == 5);
}

TEST_CASE("branches on [0,1) need a cap") {
  SystemConfig cfg({0, 2, 1, 3}, {12, 12, 12, 12});
  CHECK_THROWS_AS(branches(cfg, 0), DomainError);
  auto bs = branches(cfg, 0, 12);
  REQUIRE(bs.size() == 3);
  CHECK(bs[0].digit == 12);
  CHECK(bs[0].lo == make_rational(12, 15));
  CHECK(bs[0].hi == make_rational(12, 14));
  CHECK(bs[2].digit == 10);
  CHECK(bs[2].lo == make_rational(12, 13));
  CHECK(bs[2].hi == 1);
  CHECK_FALSE(bs[2].hi_closed);
  for (const auto& b : bs) CHECK(b.full);
}

TEST_CASE("non-full branch of Example 1") {
  SystemConfig cfg({1, 3}, {9, 12});
  auto bs = branches(cfg, 0);
  const auto& last = bs.back();
  CHECK(last.digit == 1);
  CHECK(last.lo == make_rational(9, 5));
  CHECK(last.hi == 2);
  CHECK_FALSE(last.full);
  CHECK(bs.front().digit == 6);
  CHECK(bs.front().degenerate());
}

TEST_CASE("branches partition each interval and match brute-force digits") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    SystemConfig cfg = gen::allowable(rng);
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      auto bs = branches(cfg, j, lowest_digit(cfg, j) + 40);
      REQUIRE_FALSE(bs.empty());
      CHECK(bs.back().hi == cfg.left(j) + 1);
      if (cfg.left(j) > 0) CHECK(bs.front().lo == cfg.left(j));
      for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
        CHECK(bs[i].hi == bs[i + 1].lo);
        CHECK(bs[i].digit == bs[i + 1].digit + 1);
      }
      for (const auto& b : bs) {
        if (b.degenerate()) {
          CHECK(oracle::brute_digit(cfg, b.lo) == b.digit);
          continue;
        }
        Rational mid = (b.lo + b.hi) / 2;
        CHECK(oracle::brute_digit(cfg, mid) == b.digit);
        if (b.hi_closed) CHECK(oracle::brute_digit(cfg, b.hi) == b.digit);
        if (!b.lo_closed && b.lo > 0) CHECK(oracle::brute_digit(cfg, b.lo) != b.digit);
      }
    }
  }
}

TEST_CASE("map_T worked values") {
  SystemConfig ex2({1, 2}, {8, 12});
  auto s = map_T(ex2, make_rational(1));
  CHECK(s.digit == 6);
  CHECK(s.image == 2);
  CHECK(s.from == 0);
  CHECK(s.to == 1);
  auto s2 = map_T(ex2, make_rational(2));
  CHECK(s2.digit == 5);
  CHECK(s2.image == 1);

  SystemConfig ex1({1, 3}, {9, 12});
  auto s3 = map_T(ex1, make_rational(3, 2));
  CHECK(s3.digit == 3);
  CHECK(s3.image == 3);

  CHECK_THROWS_AS(map_T(ex2, 0.5), DomainError);
  CHECK_THROWS_AS(map_T(ex2, make_rational(7, 2)), DomainError);
  SystemConfig ex3({0, 2, 1, 3}, {12, 12, 12, 12});
  CHECK(map_T(ex3, 0.0).image == 0.0);
  CHECK(map_T(ex3, 0.0).digit == 0);
}

TEST_CASE("orbit digits") {
  SystemConfig ex2({1, 2}, {8, 12});
  auto o = orbit(ex2, make_rational(1), 4);
  std::vector<std::int64_t> d;
  for (const auto& p : o) d.push_back(p.digit);
  CHECK(d == std::vector<std::int64_t>{6, 5, 6, 5});

  SystemConfig ex1({1, 3}, {9, 12});
  auto o1 = orbit(ex1, make_rational(3, 2), 5);
  d.clear();
  for (const auto& p : o1) d.push_back(p.digit);
  CHECK(d == std::vector<std::int64_t>{3, 3, 6, 3, 6});
}

TEST_CASE("Example 3 digit pattern") {
  SystemConfig ex3({0, 2, 1, 3}, {12, 12, 12, 12});
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Rational x = gen::rational_in(rng, 0, 1000003);
    if (x == 0) continue;
    auto o = orbit(ex3, x, 8);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (o[i].x == 0) break;
      if (i % 4 == 0) CHECK(o[i].digit >= 10);
      if (i % 4 == 1) CHECK((o[i].digit >= 3 && o[i].digit <= 5));
    }
  }
}

TEST_CASE("digits stay positive and images land in the successor") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    SystemConfig cfg = gen::allowable(rng);
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      for (int k = 0; k < 500; ++k) {
        double x = static_cast<double>(cfg.left(j)) + u(rng);
        if (x == 0.0) continue;
        auto s = map_T(cfg, x);
        CHECK(s.digit >= 1);
        CHECK(cfg.interval_of(s.image) == cfg.successor(j));
      }
    }
  }
}

TEST_CASE("floating orbit tracks the exact orbit up to propagated rounding") {
  SystemConfig cfg({1, 2}, {12, 12});
  std::mt19937_64 rng(23);
  int literal_checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rational x = gen::rational_in(rng, 1, 1000003);
    auto exact_orbit = orbit(cfg, x, 20);
    auto float_orbit = orbit(cfg, to_double(x), 20);
    // err_{k+1} <= |T'(x_k)| err_k + a few ulps of the image
    double bound = 1e-16;
    for (std::size_t i = 0; i < 20; ++i) {
      double xe = to_double(exact_orbit[i].x);
      double diff = std::fabs(xe - float_orbit[i].x);
      if (exact_orbit[i].digit != float_orbit[i].digit) break;
      CHECK(diff <= 4 * bound);
      if (bound < 1e-11) {
        CHECK(diff < 1e-9);
        ++literal_checks;
      }
      bound = bound * 12.0 / (xe * xe) + 4 * std::ldexp(1.0, -52) * 3.0;
    }
  }
  CHECK(literal_checks > 500);
}

TEST_CASE("desirable partners") {
  CHECK(desirable_partners(2, 12) == std::vector<std::int64_t>{2, 4, 6, 8, 10, 12});
  CHECK(desirable_partners(3, 12) == std::vector<std::int64_t>{2, 4, 6, 8, 10, 12});
  auto p = desirable_partners(4, 24);
  CHECK(std::find(p.begin(), p.end(), 12) != p.end());
  CHECK(std::find(p.begin(), p.end(), 3) == p.end());
  CHECK_THROWS_AS(desirable_partners(1, 10), std::invalid_argument);
}

}  // TEST_SUITE
