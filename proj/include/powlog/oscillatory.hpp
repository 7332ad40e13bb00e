#pragma once

#include <Eigen/Dense>

#include <map>
#include <utility>
#include <vector>

#include "powlog/indep.hpp"
#include "powlog/termalg.hpp"

namespace powlog {

/// Index of one oscillatory species y^(alpha i) (log y)^gamma.
struct OscKey {
  double alpha = 0.0;
  int gamma = 0;

  bool operator<(const OscKey& o) const {
    if (alpha != o.alpha) return alpha < o.alpha;
    return gamma < o.gamma;
  }
  bool operator==(const OscKey& o) const { return alpha == o.alpha && gamma == o.gamma; }
};

using OscCoeffs = std::map<OscKey, Complex>;

/// Two-sided bound for sup |f| on [a, b] against ||p(c)||_inf:
/// Nlo * ||p(c)||_inf <= sup <= Lhi * ||p(c)||_inf, valid when log(b/a) > M0.
struct OscCertificate {
  std::vector<OscKey> K;
  double a = 0.0, b = 0.0;
  double M0 = 0.0;
  double Nlo = 0.0;
  double Lhi = 0.0;
  double P = 0.0;                       // window constant: max over the y0 window >= P ||p(c)||_inf
  std::vector<Complex> p_of_c;          // in the order of K
  std::pair<double, double> y0_window;  // [a^(3/4) b^(1/4), a^(1/4) b^(3/4)]
  Confidence confidence = Confidence::Sampled;
};

/// The coefficient re-expression after the rescaling y = a (b/a)^t:
/// p(c)_{alpha,gamma} = sum_{m=gamma}^{gmax} c_{alpha,m} binom(m,gamma)
///                      (log b/a)^gamma (log a)^(m-gamma).
OscCoeffs p_transform(const OscCoeffs& c, double a, double b);

/// Closed form of int_0^1 y^n exp(i lambda y) dy.
Complex moment_integral(int n, double lambda);

/// Closed form of int_u^v y^n exp(i lambda y) dy, 0 <= u < v <= 1.
Complex moment_integral(int n, double lambda, double u, double v);

/// The Riemann-Lebesgue cross term
/// T(c, M) = int_0^1 sum_{alpha != alpha'} c conj(c') y^(g+g') e^(iMy(alpha-alpha')) dy.
double cross_term(const OscCoeffs& c, double M);

enum class GramWindow { Full, Mid };  // [0,1] or [1/4, 3/4]

/// Block-diagonal Gram matrix (one block per alpha) of the polynomial parts,
/// with exact rational entries; rows/cols in the order of `keys`.
Eigen::MatrixXd gram_form(const std::vector<OscKey>& keys, GramWindow window);

OscCertificate certify_osc(const OscCoeffs& c, double a, double b);

/// Pure-oscillation bound (all gamma = 0, beta = 0): sample points in
/// [N^2, 10 N^2] and the l1-soundness constant C with
/// sup_{y>N} |f| <= C max_j |f(d_j)|.
struct PureOscBound {
  std::vector<double> points;
  double C = 1.0;
};
PureOscBound pure_osc_bound(const std::vector<ExponentTriple>& K, double N,
                            int trials = 64, std::uint64_t seed = 0x9e3779b9u);

/// Geometric-point sampling bound for real log-polynomials
/// f(y) = sum_g coeffs[g] (log y)^g on (a, b):
/// sup |f| <= L(d) max_{0<j<d+2} |f(a^(j/(d+2)) b^(1-j/(d+2)))|.
struct LogPolyBound {
  std::vector<double> points;
  double L = 1.0;
  double bound = 0.0;
};
LogPolyBound logpoly_sup(const std::vector<double>& coeffs, double a, double b);

/// Cached node constant L(d) (Lebesgue constant of the nodes {1 - j/(d+2)},
/// dense-sampled at resolution 1e-4 and inflated by 1.01).
double logpoly_node_constant(int d);

}  // namespace powlog
