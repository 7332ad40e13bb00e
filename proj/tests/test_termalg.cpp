#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "powlog/termalg.hpp"

using namespace powlog;

namespace {

const DomainSpec kOpen(2.0, std::numeric_limits<double>::infinity(), false);

Term t(double re, double im, double alpha, Rational beta, int gamma,
       PerturbationUnit u = PerturbationUnit::identity()) {
  return Term(Complex(re, im), ExponentTriple(alpha, beta, gamma), std::move(u));
}

}  // namespace

TEST_CASE("exponent triple canonicalizes alpha into [0, 2pi)") {
  ExponentTriple e(-1.0, Rational(0), 0);
  CHECK(e.alpha == doctest::Approx(kTwoPi - 1.0));
  ExponentTriple f(kTwoPi + 0.5, Rational(0), 0);
  CHECK(f.alpha == doctest::Approx(0.5));
  CHECK_THROWS_AS(ExponentTriple(0.0, Rational(0), -1), DomainError);
  CHECK_THROWS_AS(ExponentTriple(std::nan(""), Rational(0), 0), DomainError);
}

TEST_CASE("eval of elementary single terms") {
  PreparedSum h1({t(1, 0, 0, Rational(0), 0)}, kOpen);
  CHECK(h1.eval(7.0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h1.eval(7.0).imag() == doctest::Approx(0.0));

  const double e2 = std::exp(2.0);
  PreparedSum h2({t(1, 0, 0, Rational(-1), 1)}, kOpen);
  CHECK(h2.eval(e2).real() == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-13));

  PreparedSum h3({t(1, 0, std::acos(-1.0), Rational(0), 0)}, kOpen);
  const Complex v = h3.eval(std::exp(1.0));
  CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("eval rejects points outside the open domain") {
  PreparedSum h({t(1, 0, 0, Rational(0), 0)}, kOpen);
  CHECK_THROWS_AS(h.eval(2.0), DomainError);
  CHECK_THROWS_AS(h.eval(1.5), DomainError);
  CHECK_NOTHROW(h.eval(2.0 + 1e-9));
}

TEST_CASE("beta > 0 terms need a finite upper boundary") {
  CHECK_THROWS_AS(PreparedSum({t(1, 0, 0, Rational(1), 0)}, kOpen), FormError);
  DomainSpec bounded(2.0, 100.0, false);
  PreparedSum h({t(1, 0, 0, Rational(1), 0)}, bounded);
  // z = a/y: at y = 50, z = 2, value = z^-1 = 1/2.
  CHECK(h.eval(50.0).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("normalize merges, cancels, sorts") {
  const ExponentTriple T(0.0, Rational(-1), 0);
  SUBCASE("coefficient additivity") {
    PreparedSum h = normalize({Term(Complex(2, 0), T), Term(Complex(3, 0), T)}, kOpen);
    REQUIRE(h.terms().size() == 1);
    CHECK(h.terms()[0].coeff == Complex(5, 0));
  }
  SUBCASE("cancellation keeps one zero term") {
    PreparedSum h = normalize({Term(Complex(2, 0), T), Term(Complex(-2, 0), T)}, kOpen);
    REQUIRE(h.terms().size() == 1);
    CHECK(h.terms()[0].coeff == Complex(0, 0));
  }
  SUBCASE("distinct triples retained and canonically sorted") {
    const ExponentTriple T2(0.0, Rational(-2), 0);
    PreparedSum h = normalize({Term(Complex(1, 0), T2), Term(Complex(1, 0), T)}, kOpen);
    REQUIRE(h.terms().size() == 2);
    // beta descending: -1 before -2.
    CHECK(h.terms()[0].exp.beta == Rational(-1));
    CHECK(h.terms()[1].exp.beta == Rational(-2));
  }
  SUBCASE("different units never merge") {
    PreparedSum h = normalize(
        {Term(Complex(1, 0), T), Term(Complex(1, 0), T, PerturbationUnit::rational_tail({{1, 0.1}}))},
        kOpen);
    CHECK(h.terms().size() == 2);
  }
}

TEST_CASE("eval of normalize equals the per-term sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cu(-2.0, 2.0);
  std::uniform_int_distribution<int> nb(1, 10), gi(0, 2), bi(-3, 1), al(0, 3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Term> terms;
    const int n = nb(rng);
    for (int i = 0; i < n; ++i)
      terms.push_back(t(cu(rng), cu(rng), 1.1 * al(rng), Rational(bi(rng), 2), gi(rng)));
    DomainSpec dom(2.0, 1e9, false);
    PreparedSum h = normalize(terms, dom);
    std::uniform_real_distribution<double> yu(2.0, 1e4);
    for (int k = 0; k < 8; ++k) {
      const double y = yu(rng) + 1e-6;
      Complex direct{0, 0};
      for (const auto& tm : terms) direct += eval_term(tm, y, dom);
      const Complex via = h.eval(y);
      CHECK(std::abs(via - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("eval is positively homogeneous in the coefficients") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cu(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Term> terms{t(cu(rng), cu(rng), 0.4, Rational(-1), 1),
                            t(cu(rng), cu(rng), 0.0, Rational(-1, 2), 0)};
    const double s = 3.25;
    std::vector<Term> scaled = terms;
    for (auto& tm : scaled) tm.coeff *= s;
    PreparedSum h(terms, kOpen), hs(scaled, kOpen);
    const double y = 17.5;
    CHECK(std::abs(hs.eval(y) - s * h.eval(y)) <= 1e-14 * std::abs(s * h.eval(y)) + 1e-300);
  }
}

TEST_CASE("alpha is reduced mod 2pi without changing identity-unit magnitudes") {
  PreparedSum a({t(1, 0, 1.0, Rational(0), 0)}, kOpen);
  PreparedSum b({t(1, 0, 1.0 + kTwoPi, Rational(0), 0)}, kOpen);
  for (double y : {2.5, 10.0, 12345.0})
    CHECK(std::abs(a.eval(y)) == doctest::Approx(std::abs(b.eval(y))).epsilon(1e-14));
}

TEST_CASE("domain spec validation") {
  CHECK_THROWS_AS(DomainSpec(1.0, 100.0, false), DomainError);
  CHECK_THROWS_AS(DomainSpec(10.0, 50.0, false), DomainError);   // upper <= lower^2
  CHECK_NOTHROW(DomainSpec(10.0, 101.0, false));
  CHECK_THROWS_AS(DomainSpec(10.0, std::numeric_limits<double>::infinity(), true), DomainError);
  CHECK_THROWS_AS(DomainSpec(10.0, 161.0, true), DomainError);   // kappa = 16
  CHECK_NOTHROW(DomainSpec(10.0, 160.0, true));
}

TEST_CASE("perturbation unit evaluation and guards") {
  auto u = PerturbationUnit::rational_tail({{1, 0.5}, {2, -0.25}});
  CHECK(u.eval(2.0) == doctest::Approx(1.0 + 0.25 - 0.0625));
  CHECK_THROWS_AS(PerturbationUnit::rational_tail({{0, 1.0}}), DomainError);
  CHECK_THROWS_AS(PerturbationUnit::tabulated([](double) { return 1.0; }, 0.0), DomainError);
  auto w = PerturbationUnit::tabulated([](double y) { return 1.0 + 1.0 / y; }, 0.5);
  CHECK(w.eval(4.0) == doctest::Approx(1.25));
}

TEST_CASE("confidence ordering") {
  CHECK(weakest(Confidence::Exact, Confidence::Sampled) == Confidence::Sampled);
  CHECK(weakest(Confidence::Sampled, Confidence::Asserted) == Confidence::Asserted);
  CHECK(weakest(Confidence::Exact, Confidence::Exact) == Confidence::Exact);
}
