#include "powlog/unbalanced.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace powlog {

namespace {

// sup over y > N of y^(-p) (log y)^m, p > 0 integer, m >= 0.
double power_log_tail_sup(int p, int m, double N) {
  if (m == 0) return std::pow(N, -p);
  const double ystar = std::exp(static_cast<double>(m) / p);
  if (ystar <= N) return std::pow(N, -p) * std::pow(std::log(N), m);
  return std::pow(static_cast<double>(m) / p, m) * std::exp(-static_cast<double>(m));
}

// Binomial coefficient as a double; m, k small.
double binom(int m, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (m - i) / (i + 1);
  return v;
}

}  // namespace

std::pair<Rational, double> tail_envelope(const std::vector<ExponentTriple>& K) {
  if (K.empty()) throw DimensionError("tail_envelope: empty K");
  Rational min_neg = -K.front().beta;
  for (const auto& e : K) {
    if (e.beta >= 0) throw RegimeError("tail_envelope: all beta must be negative");
    min_neg = std::min(min_neg, -e.beta);
  }
  // A = min(-beta)/2, truncated down to denominator 64 when that stays positive.
  Rational half = min_neg / 2;
  Rational A = half;
  if (half.denominator() > 64) {
    std::int64_t floored = (64 * half.numerator()) / half.denominator();
    if (floored > 0) A = Rational(floored, 64);
  }

  double D = 0.0;
  const double Ad = to_double(A);
  for (const auto& e : K) {
    const double ex = to_double(e.beta) + Ad;  // ex < 0
    const int g = e.gamma;
    // |z^ex (log z)^g| on (1/2, inf): endpoint z = 1/2 and, for g > 0, the
    // interior critical point z* = exp(g / (-ex)).
    double cand = std::pow(0.5, ex) * std::pow(std::abs(std::log(0.5)), g);
    D = std::max(D, cand);
    if (g > 0) {
      const double zstar = std::exp(g / (-ex));
      if (zstar > 1.0) {
        D = std::max(D, std::pow(zstar, ex) * std::pow(std::log(zstar), g));
      }
    }
  }
  return {A, D};
}

double delta_threshold(double C, double D) {
  if (!(C >= 1.0) || !(D > 0.0)) throw DomainError("delta_threshold: need C >= 1, D > 0");
  return 1.0 / (2.0 * C * D);
}

double unit_deviation_bound(const PerturbationUnit& u, double N, int b, Confidence* conf) {
  switch (u.kind) {
    case UnitKind::Identity:
      return 0.0;
    case UnitKind::RationalTail: {
      double s = 0.0;
      for (const auto& [k, a] : u.tail) s += std::abs(a) * power_log_tail_sup(k, 2 * b, N);
      return s;
    }
    case UnitKind::Tabulated: {
      if (conf) *conf = weakest(*conf, Confidence::Sampled);
      // Grid check of the declared bound on (N, 1e8].
      const double lo = std::log(N), hi = std::log(1e8);
      for (int i = 1; i <= 256; ++i) {
        const double y = std::exp(lo + (hi - lo) * i / 256.0);
        const double dev = std::abs(u.eval(y) - 1.0) * std::pow(std::log(y), 2 * b);
        if (dev >= u.delta_decl)
          throw DeltaError("tabulated unit violates its declared delta bound at y=" +
                           std::to_string(y));
      }
      return u.delta_decl;
    }
  }
  return 0.0;
}

NegRegimeCertificate certify_neg(const PreparedSum& h, double N,
                                 int trials, std::uint64_t seed) {
  if (!(N > 1.0)) throw DomainError("certify_neg: need N > 1");
  for (const auto& t : h.terms())
    if (t.exp.beta >= 0) throw RegimeError("certify_neg: term with beta >= 0");

  NegRegimeCertificate cert;
  cert.N = N;

  // Closure padding: (alpha, beta, gamma+1) in K forces (alpha, beta, gamma) in K.
  std::set<std::tuple<double, Rational, int>> keyset;
  for (const auto& t : h.terms())
    for (int g = 0; g <= t.exp.gamma; ++g)
      keyset.insert({t.exp.alpha, t.exp.beta, g});
  for (const auto& [a, b, g] : keyset) cert.K.emplace_back(a, b, g);
  std::stable_sort(cert.K.begin(), cert.K.end(),
                   [](const ExponentTriple& x, const ExponentTriple& y) {
                     return x.canonical_before(y);
                   });

  auto [A, D] = tail_envelope(cert.K);
  cert.A = A;
  cert.D = D;

  SamplePlan plan = find_sample_points(cert.K, 1.0 + 1e-9, 2.0, trials, seed);
  cert.C = plan.equivalence_constant;
  cert.delta = delta_threshold(cert.C, cert.D);
  for (double d : plan.points) cert.witnesses.push_back(2.0 * N * d);

  // E(K): per (alpha, beta) group, the inf-norm of the inverse of the
  // unitriangular binomial matrix relating c to c' under y = 2Nz. The inverse
  // is the same matrix with log(2N) negated.
  const double l2N = std::log(2.0 * N);
  std::set<std::pair<double, Rational>> groups;
  for (const auto& e : cert.K) groups.insert({e.alpha, e.beta});
  double E = 0.0;
  for (const auto& [alpha, beta] : groups) {
    int n = 0;
    for (const auto& e : cert.K)
      if (e.alpha == alpha && e.beta == beta) n = std::max(n, e.gamma);
    Eigen::MatrixXd Binv = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        Binv(i, j) = binom(j, j - i) * std::pow(-l2N, j - i);
    E = std::max(E, Binv.cwiseAbs().rowwise().sum().maxCoeff());
  }
  cert.E = E;

  // Unit hypothesis: declared/derived deviation must stay below delta, and the
  // witness contamination t0 = delta_act * C * E must stay below 1/2 so the
  // monomial max can be recovered from the perturbed max.
  const int b = h.max_gamma();
  double delta_act = 0.0;
  for (const auto& t : h.terms())
    delta_act = std::max(delta_act,
                         unit_deviation_bound(t.unit, N, b, &cert.confidence));
  if (delta_act > cert.delta)
    throw DeltaError("certify_neg: unit deviation " + std::to_string(delta_act) +
                     " exceeds delta(K) = " + std::to_string(cert.delta));
  // For N < e the weighted hypothesis |f-1|(log y)^(2b) < delta is weaker than
  // a bound on |f-1|(log y)^gamma near y = N; compensate explicitly.
  const double logN = std::log(N);
  const double delta_eff = delta_act * std::max(1.0, std::pow(logN, -2.0 * b));
  const double t0 = delta_eff * cert.C * cert.E;
  if (t0 >= 0.5)
    throw DeltaError("certify_neg: log-corrected unit deviation too large (t0 = " +
                     std::to_string(t0) + " >= 1/2)");

  const double Ad = to_double(cert.A);
  cert.C_tail = (cert.C * cert.D + delta_eff * cert.C * cert.E) / (1.0 - t0);
  cert.C_total = std::max(1.0, cert.C_tail * std::pow(2.0, Ad));
  return cert;
}

}  // namespace powlog
