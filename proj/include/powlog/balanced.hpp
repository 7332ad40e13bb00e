#pragma once

#include <cstdint>
#include <vector>

#include "powlog/termalg.hpp"

namespace powlog {

/// Equispaced witness grid for a balanced cell, with the sampled two-sided
/// constant M: sup |h_c| <= M * max over grid of |h_c| across coefficient
/// choices on the same basis.
struct BalancedPlan {
  int N = 2;
  std::vector<double> grid;  // {lower + (j/N)(upper - lower) : 0 < j < N}
  double M = 1.0;
  Confidence confidence = Confidence::Sampled;
};

/// Sampled stand-in for the o-minimal zero-count bound: 1 + the largest
/// number of sign changes of Re/Im of h_c over a 4096-point grid, across
/// `samples` random unit coefficient vectors on h's basis.
int estimate_zero_bound(const PreparedSum& family, int samples,
                        std::uint64_t seed = 0x9e3779b9u);

BalancedPlan balanced_witnesses(const PreparedSum& h, int N,
                                int samples = 64, std::uint64_t seed = 0x9e3779b9u);

}  // namespace powlog
