#include "powlog/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace powlog {

namespace {

double absval(const PreparedSum& h, double y) { return std::abs(h.eval(y)); }

// Golden-section maximization of |h|^2 on [a, b].
double golden_refine(const PreparedSum& h, double a, double b, double* best_y) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = absval(h, c), fd = absval(h, d);
  for (int it = 0; it < 40; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = absval(h, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = absval(h, d);
    }
  }
  if (fc >= fd) {
    *best_y = c;
    return fc;
  }
  *best_y = d;
  return fd;
}

// Per-term decreasing tail envelope at y (valid once y is past every term's
// critical point e^(gamma / -beta)).
double tail_bound_at(const PreparedSum& h, double y) {
  double s = 0.0;
  for (const auto& t : h.terms()) {
    double unit_slack = 1.0;
    if (t.unit.kind == UnitKind::RationalTail) {
      for (const auto& [k, a] : t.unit.tail) unit_slack += std::abs(a);
    } else if (t.unit.kind == UnitKind::Tabulated) {
      unit_slack += t.unit.delta_decl;
    }
    s += std::abs(t.coeff) * unit_slack * std::pow(y, to_double(t.exp.beta)) *
         std::pow(std::log(y), t.exp.gamma);
  }
  return s;
}

}  // namespace

OracleResult brute_sup(const PreparedSum& h, double lo, double hi, int budget) {
  if (budget < 64) throw DomainError("brute_sup: budget must be at least 64");
  const double glo = lo * (1.0 + 1e-9);
  const double ghi = std::isfinite(hi) ? hi * (1.0 - 1e-9) : hi;
  if (!(glo < ghi) || !h.domain().contains(glo))
    throw DomainError("brute_sup: interval outside domain");

  OracleResult res;
  res.grid_points = budget;
  const double llo = std::log(glo), lhi = std::log(ghi);
  std::vector<double> ys(budget), vs(budget);
  for (int i = 0; i < budget; ++i) {
    ys[i] = std::exp(llo + (lhi - llo) * i / (budget - 1));
    vs[i] = absval(h, ys[i]);
  }

  // Rank grid points, refine brackets around the top 8.
  std::vector<int> idx(budget);
  for (int i = 0; i < budget; ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + std::min(budget, 8), idx.end(),
                    [&](int a, int b) { return vs[a] > vs[b]; });

  res.sup_estimate = vs[idx[0]];
  res.argmax = ys[idx[0]];
  for (int r = 0; r < std::min(budget, 8); ++r) {
    const int i = idx[r];
    const double a = ys[std::max(0, i - 1)];
    const double b = ys[std::min(budget - 1, i + 1)];
    double by = 0.0;
    const double bv = golden_refine(h, a, b, &by);
    ++res.refinement_depth;
    if (bv > res.sup_estimate) {
      res.sup_estimate = bv;
      res.argmax = by;
    }
  }
  return res;
}

OracleResult brute_sup_unbounded(const PreparedSum& h, double N, double horizon,
                                 int budget) {
  if (!h.all_beta_negative())
    throw DomainError("brute_sup_unbounded: requires all beta < 0");
  if (!(horizon >= N * 1e3))
    throw DomainError("brute_sup_unbounded: horizon must be at least N*1000");

  double hz = horizon;
  for (int attempt = 0; attempt < 9; ++attempt) {
    OracleResult res = brute_sup(h, N, hz, budget);
    const double tail = tail_bound_at(h, hz);
    if (tail < std::max(res.sup_estimate, 1e-300) * 1e-3 || res.sup_estimate == 0.0)
      return res;
    hz *= 2.0;
  }
  throw HorizonError("brute_sup_unbounded: tail not negligible after 8 horizon doublings");
}

}  // namespace powlog
