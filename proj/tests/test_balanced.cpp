#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "powlog/balanced.hpp"

using namespace powlog;

namespace {

Term t(Complex c, double alpha, Rational beta, int gamma) {
  return Term(c, ExponentTriple(alpha, beta, gamma));
}

}  // namespace

TEST_CASE("zero bound estimates") {
  SUBCASE("constant family") {
    PreparedSum h({t(Complex(1, 0), 0, Rational(0), 0)}, DomainSpec(2.0, 3.0, true));
    CHECK(estimate_zero_bound(h, 32, 1) == 1);
  }
  SUBCASE("span of 1 and log y can vanish once") {
    const double e = std::exp(1.0);
    PreparedSum h({t(Complex(1, 0), 0, Rational(0), 0), t(Complex(1, 0), 0, Rational(0), 1)},
                  DomainSpec(e, e * e, true));
    CHECK(estimate_zero_bound(h, 64, 1) >= 2);
  }
  PreparedSum unb({t(Complex(1, 0), 0, Rational(0), 0)},
                  DomainSpec(2.0, std::numeric_limits<double>::infinity(), false));
  CHECK_THROWS_AS(estimate_zero_bound(unb, 8, 1), DomainError);
}

TEST_CASE("constant family on a balanced cell") {
  PreparedSum h({t(Complex(3, 0), 0, Rational(0), 0)}, DomainSpec(2.0, 3.0, true));
  BalancedPlan p = balanced_witnesses(h, 2, 64, 1);
  REQUIRE(p.grid.size() == 1);
  CHECK(p.grid[0] == doctest::Approx(2.5));
  CHECK(p.M >= 1.0);
  CHECK(p.M <= 1.2);
  CHECK(std::abs(h.eval(p.grid[0])) == doctest::Approx(3.0));
}

TEST_CASE("grid containment and M soundness on unseen coefficients") {
  const double e = std::exp(1.0);
  DomainSpec dom(e, e * e, true);
  PreparedSum basis({t(Complex(1, 0), 0, Rational(0), 0), t(Complex(1, 0), 0, Rational(0), 1)},
                    dom);
  BalancedPlan p = balanced_witnesses(basis, 3, 256, 7);
  for (double g : p.grid) {
    CHECK(g > dom.lower);
    CHECK(g < dom.upper);
  }
  CHECK(p.M > 1.0);

  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Complex c0(g(rng), g(rng)), c1(g(rng), g(rng));
    PreparedSum h({t(c0, 0, Rational(0), 0), t(c1, 0, Rational(0), 1)}, dom);
    double sup = 0.0;
    for (int i = 0; i <= 8000; ++i) {
      const double y = dom.lower + (dom.upper - dom.lower) * (i + 0.5) / 8001.0;
      sup = std::max(sup, std::abs(h.eval(y)));
    }
    double mx = 0.0;
    for (double gp : p.grid) mx = std::max(mx, std::abs(h.eval(gp)));
    if (sup > p.M * mx) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("degenerate families are rejected") {
  const ExponentTriple T(0.0, Rational(0), 0);
  PreparedSum dup({Term(Complex(1, 0), T), Term(Complex(1, 0), T)}, DomainSpec(2.0, 3.0, true));
  CHECK_THROWS_AS(balanced_witnesses(dup, 3, 16, 1), DegenerateError);
}

TEST_CASE("grid size guard") {
  PreparedSum h({t(Complex(1, 0), 0, Rational(0), 0)}, DomainSpec(2.0, 3.0, true));
  CHECK_THROWS_AS(balanced_witnesses(h, 1, 16, 1), GridError);
}
