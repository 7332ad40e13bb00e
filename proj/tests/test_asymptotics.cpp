#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "powlog/asymptotics.hpp"

using namespace powlog;

namespace {

std::vector<std::pair<double, double>> gen(double r, int l, double c, int n = 48,
                                           double x0 = 1e2, double x1 = 1e12) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < n; ++i) {
    const double x = x0 * std::pow(x1 / x0, static_cast<double>(i) / (n - 1));
    s.emplace_back(x, c * std::pow(x, r) * std::pow(std::log(x), l));
  }
  return s;
}

}  // namespace

TEST_CASE("dominant exponent lexicographic max") {
  std::vector<GrowthTerm> g{{Rational(1, 2), 1, 3, 3}, {Rational(1, 2), 0, 1, 1},
                            {Rational(-1), 5, 1, 1}};
  AsymptoticProfile p = dominant_exponent(g);
  CHECK(p.r == Rational(1, 2));
  CHECK(p.l == 1);

  AsymptoticProfile q = dominant_exponent({{Rational(0), 0, 2.5, 2.5}});
  CHECK(q.r == Rational(0));
  CHECK(q.l == 0);
  CHECK(q.c_lo == doctest::Approx(2.5));
  CHECK(q.c_hi == doctest::Approx(2.5));

  AsymptoticProfile m = dominant_exponent({{Rational(2), 0, 1, 1}, {Rational(2), 0, 1, 1}});
  CHECK(m.r == Rational(2));
  CHECK(m.l == 0);
  CHECK(m.c_lo == doctest::Approx(2.0));  // bands add on merge

  CHECK_THROWS_AS(dominant_exponent({}), EmptyError);
  CHECK_THROWS_AS(dominant_exponent({{Rational(1), 0, 0.0, 1.0}}), DomainError);
}

TEST_CASE("dominant pair invariant under common band scaling") {
  std::vector<GrowthTerm> g{{Rational(3, 4), 2, 1, 2}, {Rational(3, 4), 1, 5, 9},
                            {Rational(1, 4), 0, 1, 1}};
  AsymptoticProfile a = dominant_exponent(g);
  for (auto& t : g) {
    t.u_lo *= 100.0;
    t.u_hi *= 100.0;
  }
  AsymptoticProfile b = dominant_exponent(g);
  CHECK(a.r == b.r);
  CHECK(a.l == b.l);
  CHECK(b.c_lo == doctest::Approx(100.0 * a.c_lo));
}

TEST_CASE("fit recovers exact power-log models") {
  SUBCASE("3 x^(1/2) log x") {
    AsymptoticProfile p = fit_growth(gen(0.5, 1, 3.0, 24, 1e2, 1e10));
    CHECK(p.l == 1);
    CHECK(p.r_is_rational);
    CHECK(p.r == Rational(1, 2));
    CHECK(p.c_lo <= 3.0);
    CHECK(p.c_hi >= 3.0);
    CHECK(p.residual < 1e-10);
    CHECK_FALSE(p.non_power_log);
  }
  SUBCASE("pure power x^2") {
    AsymptoticProfile p = fit_growth(gen(2.0, 0, 1.0));
    CHECK(p.l == 0);
    CHECK(p.r == Rational(2));
  }
  SUBCASE("x log log x is flagged") {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 48; ++i) {
      const double x = 1e2 * std::pow(1e10, i / 47.0);
      s.emplace_back(x, x * std::log(std::log(x)));
    }
    AsymptoticProfile p = fit_growth(s);
    CHECK(p.non_power_log);
    CHECK(p.residual > 1e-2);
  }
}

TEST_CASE("fit data guards") {
  CHECK_THROWS_AS(fit_growth(gen(1.0, 0, 1.0, 5)), DataError);
  CHECK_THROWS_AS(fit_growth(gen(1.0, 0, 1.0, 20, 1e2, 5e4)), DataError);  // < 4 decades
  auto s = gen(1.0, 0, 1.0);
  std::swap(s[3], s[4]);
  CHECK_THROWS_AS(fit_growth(s), DataError);
}

TEST_CASE("noisy round trip") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> noise(0.9, 1.1), cu(0.5, 5.0);
  std::uniform_int_distribution<int> den(1, 16), num(-8, 8), lu(0, 4);
  int good = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int q = den(rng);
    const Rational r(num(rng), q);
    const int l = lu(rng);
    auto s = gen(to_double(r), l, cu(rng), 64);
    for (auto& [x, v] : s) v *= noise(rng);
    AsymptoticProfile p = fit_growth(s);
    if (p.l == l && std::abs(p.r_float - to_double(r)) <= 1e-2) ++good;
  }
  CHECK(good >= 95);
}

TEST_CASE("flatness direction") {
  SUBCASE("eps^(2/3)") {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 24; ++i) {
      const double eps = 0.4 * std::pow(1e-10, i / 23.0);
      s.emplace_back(eps, std::pow(eps, 2.0 / 3.0));
    }
    AsymptoticProfile p = flatness_exponent(s);
    CHECK(p.direction == Direction::ToZero);
    CHECK(p.r == Rational(2, 3));
    CHECK(p.l == 0);
    CHECK(p.correction > 0.0);
  }
  SUBCASE("eps |log eps|^2") {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 24; ++i) {
      const double eps = 0.4 * std::pow(1e-10, i / 23.0);
      s.emplace_back(eps, eps * std::pow(std::abs(std::log(eps)), 2));
    }
    AsymptoticProfile p = flatness_exponent(s);
    CHECK(p.r == Rational(1));
    CHECK(p.l == 2);
  }
  SUBCASE("same code path as fit_growth under x = 1/eps") {
    std::vector<std::pair<double, double>> se, sx;
    for (int i = 0; i < 24; ++i) {
      const double eps = 0.4 * std::pow(1e-9, i / 23.0);
      const double v = std::pow(eps, 0.5) * (1.3 + 0.2 * std::cos(i));
      se.emplace_back(eps, v);
      sx.emplace_back(1.0 / eps, v);
    }
    AsymptoticProfile pe = flatness_exponent(se);
    AsymptoticProfile px = fit_growth(sx);
    CHECK(pe.r_float == doctest::Approx(-px.r_float).epsilon(1e-12));
    CHECK(pe.l == px.l);
  }
  SUBCASE("eps guard") {
    CHECK_THROWS_AS(flatness_exponent({{0.6, 1.0}, {0.3, 1.0}}), DataError);
  }
}

TEST_CASE("polynomial boundedness witness") {
  AsymptoticProfile p;
  p.r = Rational(1, 2);
  p.r_float = 0.5;
  p.l = 1;
  CHECK(poly_bound_check(p) == std::pair<bool, int>(true, 2));
  p.r = Rational(0);
  p.r_float = 0;
  p.l = 0;
  CHECK(poly_bound_check(p) == std::pair<bool, int>(true, 0));
  p.r = Rational(3);
  p.r_float = 3;
  CHECK(poly_bound_check(p) == std::pair<bool, int>(true, 3));
}

TEST_CASE("sample ingestion") {
  std::istringstream in("# comment\nx, v\n1e2, 5.0\n1e3\t6.0\n# trailing\n1e4 7.0 # eol\n");
  auto s = read_samples(in);
  REQUIRE(s.size() == 3);
  CHECK(s[0].first == doctest::Approx(1e2));
  CHECK(s[2].second == doctest::Approx(7.0));
  std::istringstream bad("1e2 5.0\nbroken line here\n");
  CHECK_THROWS_AS(read_samples(bad), DataError);
}
