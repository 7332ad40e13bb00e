#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "powlog/termalg.hpp"

namespace powlog {

/// Sample points d_0 < ... < d_{k-1} making the evaluation map of a set of
/// power-log monomials injective, plus the norm-equivalence data:
/// ||c||_1 <= equivalence_constant * max_j |g_c(d_j)|.
struct SamplePlan {
  std::vector<double> points;
  double matrix_condition = 0.0;    // smallest singular value of the evaluation matrix
  double equivalence_constant = 1.0;
};

/// Dense k x k matrix M[j][t] = l_t(d_j) with l_t(y) = y^(alpha i + beta) (log y)^gamma,
/// columns in the canonical triple order of K.
Eigen::MatrixXcd evaluation_matrix(const std::vector<ExponentTriple>& K,
                                   const std::vector<double>& pts);

/// C = k / sigma_min(M); a sound (not tight) constant for ||c||_1 against the
/// max of |g_c| over the points.
double equivalence_constant(const Eigen::MatrixXcd& M);

/// Chebyshev-seeded randomized search for a point set maximizing sigma_min of
/// the evaluation matrix on the closed interval [lo, hi]. Deterministic for a
/// fixed seed. Ties broken by the lexicographically smallest point list.
SamplePlan find_sample_points(const std::vector<ExponentTriple>& K, double lo, double hi,
                              int trials = 64, std::uint64_t seed = 0x9e3779b9u);

}  // namespace powlog
