#include "powlog/indep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace powlog {

namespace {

Complex monomial(const ExponentTriple& e, double y) {
  const double ly = std::log(y);
  const double mag = std::pow(y, to_double(e.beta)) * std::pow(ly, e.gamma);
  return mag * std::exp(Complex(0.0, e.alpha * ly));
}

double smallest_singular_value(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().minCoeff();
}

}  // namespace

Eigen::MatrixXcd evaluation_matrix(const std::vector<ExponentTriple>& K,
                                   const std::vector<double>& pts) {
  if (K.size() != pts.size())
    throw DimensionError("evaluation_matrix: |pts| must equal |K|");
  const int k = static_cast<int>(K.size());
  Eigen::MatrixXcd M(k, k);
  for (int j = 0; j < k; ++j) {
    if (!(pts[j] > 1.0)) throw DomainError("evaluation_matrix: points must lie in (1, inf)");
    for (int t = 0; t < k; ++t) M(j, t) = monomial(K[t], pts[j]);
  }
  return M;
}

double equivalence_constant(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw DimensionError("equivalence_constant: matrix must be square");
  const double smin = smallest_singular_value(M);
  if (smin <= 0.0) throw SingularError("equivalence_constant: singular evaluation matrix");
  return static_cast<double>(M.rows()) / smin;
}

SamplePlan find_sample_points(const std::vector<ExponentTriple>& K, double lo, double hi,
                              int trials, std::uint64_t seed) {
  if (K.empty()) throw DimensionError("find_sample_points: empty triple set");
  if (!(lo > 1.0) || !(hi > lo)) throw DomainError("find_sample_points: need 1 < lo < hi");
  const int k = static_cast<int>(K.size());
  std::vector<ExponentTriple> Ksorted = K;
  std::stable_sort(Ksorted.begin(), Ksorted.end(),
                   [](const ExponentTriple& a, const ExponentTriple& b) {
                     return a.canonical_before(b);
                   });

  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> cheb(k);
  for (int j = 0; j < k; ++j) {
    // Chebyshev nodes; a single point sits at the interval midpoint.
    double t = (k == 1) ? 0.0 : std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * k));
    cheb[j] = mid + half * t;
  }
  std::sort(cheb.begin(), cheb.end());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  SamplePlan best;
  best.matrix_condition = -1.0;
  const double min_gap = (hi - lo) * 1e-9;

  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> pts(k);
    if (trial == 0) {
      pts = cheb;
    } else if (trial % 2 == 1) {
      double spacing = (k > 1) ? (hi - lo) / k : (hi - lo);
      for (int j = 0; j < k; ++j)
        pts[j] = std::clamp(cheb[j] + jitter(rng) * spacing, lo, hi);
    } else {
      for (int j = 0; j < k; ++j) pts[j] = lo + unif(rng) * (hi - lo);
    }
    std::sort(pts.begin(), pts.end());
    bool distinct = true;
    for (int j = 1; j < k; ++j)
      if (pts[j] - pts[j - 1] < min_gap) distinct = false;
    if (!distinct) continue;

    double smin;
    try {
      smin = smallest_singular_value(evaluation_matrix(Ksorted, pts));
    } catch (const Error&) {
      continue;
    }
    if (smin > best.matrix_condition ||
        (smin == best.matrix_condition && pts < best.points)) {
      best.points = pts;
      best.matrix_condition = smin;
    }
  }

  if (best.matrix_condition < 1e-12)
    throw DegenerateError("find_sample_points: all trials numerically singular (near-dependent K)");
  best.equivalence_constant = k / best.matrix_condition;
  return best;
}

}  // namespace powlog
