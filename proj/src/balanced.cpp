#include "powlog/balanced.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace powlog {

namespace {

std::vector<Complex> random_unit_coeffs(std::mt19937_64& rng, int k) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> c(k);
  double n2 = 0.0;
  for (auto& v : c) {
    v = Complex(g(rng), g(rng));
    n2 += std::norm(v);
  }
  const double n = std::sqrt(n2);
  for (auto& v : c) v /= (n > 0 ? n : 1.0);
  return c;
}

PreparedSum with_coeffs(const PreparedSum& base, const std::vector<Complex>& c) {
  std::vector<Term> terms = base.terms();
  for (size_t i = 0; i < terms.size(); ++i) terms[i].coeff = c[i];
  return PreparedSum(terms, base.domain());
}

int sign_changes(const std::vector<double>& v) {
  int n = 0;
  double prev = 0.0;
  bool have = false;
  for (double x : v) {
    if (x == 0.0) continue;
    if (have && ((x > 0) != (prev > 0))) ++n;
    prev = x;
    have = true;
  }
  return n;
}

}  // namespace

int estimate_zero_bound(const PreparedSum& family, int samples, std::uint64_t seed) {
  if (!family.domain().balanced)
    throw DomainError("estimate_zero_bound: requires a balanced cell");
  const int k = static_cast<int>(family.terms().size());
  const double lo = family.domain().lower, hi = family.domain().upper;
  std::mt19937_64 rng(seed);
  constexpr int kGrid = 4096;
  int worst = 0;
  for (int s = 0; s < samples; ++s) {
    PreparedSum h = with_coeffs(family, random_unit_coeffs(rng, k));
    std::vector<double> re(kGrid), im(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      const double y = lo + (hi - lo) * (i + 1) / (kGrid + 1.0);
      const Complex v = h.eval(y);
      re[i] = v.real();
      im[i] = v.imag();
    }
    worst = std::max({worst, sign_changes(re), sign_changes(im)});
  }
  return 1 + worst;
}

BalancedPlan balanced_witnesses(const PreparedSum& h, int N,
                                int samples, std::uint64_t seed) {
  if (N < 2) throw GridError("balanced_witnesses: N must be at least 2");
  if (!h.domain().balanced)
    throw DomainError("balanced_witnesses: requires a balanced cell");
  const double lo = h.domain().lower, hi = h.domain().upper;
  const int k = static_cast<int>(h.terms().size());

  // Rank check: the basis functions must be linearly independent on the cell.
  {
    constexpr int kPts = 4096;
    Eigen::MatrixXcd V(kPts, k);
    for (int i = 0; i < kPts; ++i) {
      const double y = lo + (hi - lo) * (i + 1) / (kPts + 1.0);
      for (int t = 0; t < k; ++t) {
        Term unit_term = h.terms()[t];
        unit_term.coeff = Complex(1.0, 0.0);
        V(i, t) = eval_term(unit_term, y, h.domain());
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const double smin = svd.singularValues().minCoeff() / std::sqrt(static_cast<double>(kPts));
    if (smin <= 1e-10)
      throw DegenerateError("balanced_witnesses: basis functions numerically dependent");
  }

  BalancedPlan plan;
  plan.N = N;
  for (int j = 1; j < N; ++j)
    plan.grid.push_back(lo + (hi - lo) * static_cast<double>(j) / N);

  // Sphere-sample the ratio sup/max over the basis's coefficient space.
  std::mt19937_64 rng(seed ^ 0xb5297a4du);
  double worst = 1.0;
  constexpr int kDense = 8192;
  for (int s = 0; s < samples; ++s) {
    PreparedSum hc = with_coeffs(h, random_unit_coeffs(rng, k));
    double sup = 0.0;
    for (int i = 0; i <= kDense; ++i) {
      const double y = lo + (hi - lo) * (i + 0.5) / (kDense + 1.0);
      sup = std::max(sup, std::abs(hc.eval(y)));
    }
    double gmax = 0.0;
    for (double y : plan.grid) gmax = std::max(gmax, std::abs(hc.eval(y)));
    if (gmax > 0.0) worst = std::max(worst, sup / gmax);
  }
  plan.M = worst * 1.1;
  return plan;
}

}  // namespace powlog
