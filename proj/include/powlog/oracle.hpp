#pragma once

#include "powlog/termalg.hpp"

namespace powlog {

/// Best point found by grid sweep plus golden-section refinement. A lower
/// bound on the true supremum by construction.
struct OracleResult {
  double sup_estimate = 0.0;
  double argmax = 0.0;
  int grid_points = 0;
  int refinement_depth = 0;
};

/// Log-spaced sweep of |h| on (lo, hi) with `budget` points, refining the top
/// 8 brackets by golden section on |h|^2. Deterministic.
OracleResult brute_sup(const PreparedSum& h, double lo, double hi, int budget = 4096);

/// Sweep of (N, horizon) for an all-negative-exponent sum, with an analytic
/// tail check at the horizon; the horizon doubles up to 8 times before
/// HorizonError.
OracleResult brute_sup_unbounded(const PreparedSum& h, double N, double horizon,
                                 int budget = 4096);

}  // namespace powlog
