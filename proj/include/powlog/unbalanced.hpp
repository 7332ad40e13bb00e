#pragma once

#include <vector>

#include "powlog/indep.hpp"
#include "powlog/termalg.hpp"

namespace powlog {

/// Two-sided certificate for the negative-exponent regime on (N, inf):
/// (1/C_total) max_S |h| <= sup_{y>N} |h| <= C_total max_S |h|,
/// with the pointwise tail bound |h(y)| <= C_tail (2N)^A y^(-A) max_S |h|.
struct NegRegimeCertificate {
  std::vector<ExponentTriple> K;   // closure-padded, canonical order
  double N = 0.0;
  std::vector<double> witnesses;   // {2N * d_j}, d_j in [1,2]
  Rational A{0};                   // tail decay exponent
  double D = 0.0;                  // tail envelope constant
  double C = 0.0;                  // norm-equivalence constant C(K)
  double E = 0.0;                  // log-correction constant (inverse binomial matrix)
  double delta = 0.0;              // admissible unit deviation 1/(2 C D)
  double C_total = 1.0;
  double C_tail = 0.0;
  Confidence confidence = Confidence::Exact;
};

/// Largest admissible rational A (denominator <= 64 when possible) with
/// -A > beta for all triples, and the envelope constant
/// D = sup_{z > 1/2} max_{(beta,gamma)} |z^(beta+A) (log z)^gamma|.
std::pair<Rational, double> tail_envelope(const std::vector<ExponentTriple>& K);

/// delta(K) = 1 / (2 C D).
double delta_threshold(double C, double D);

/// sup over y > N of |f(y) - 1| (log y)^(2b) for a unit, as a closed-form
/// bound for rational tails, the declared value for tabulated units, 0 for
/// identity. Tabulated units are additionally grid-checked (256 log-spaced
/// points on (N, 1e8]); a passing check is "sampled", not proved.
double unit_deviation_bound(const PerturbationUnit& u, double N, int b, Confidence* conf);

NegRegimeCertificate certify_neg(const PreparedSum& h, double N,
                                 int trials = 64, std::uint64_t seed = 0x9e3779b9u);

}  // namespace powlog
