#include "powlog/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>

namespace powlog {

namespace {

double binom_d(int m, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (m - i) / (i + 1);
  return v;
}

// Taylor expansion of int_0^1 y^n e^(i lambda y) dy, accurate for small |lambda|.
Complex moment_taylor(int n, double lambda) {
  Complex sum{0.0, 0.0};
  Complex term{1.0, 0.0};  // (i lambda)^k / k!
  const Complex il(0.0, lambda);
  for (int k = 0; k < 200; ++k) {
    const Complex contrib = term / static_cast<double>(n + k + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(sum)) && k > 2) break;
    term *= il / static_cast<double>(k + 1);
  }
  return sum;
}

}  // namespace

Complex moment_integral(int n, double lambda) {
  if (n < 0) throw DomainError("moment_integral: n must be nonnegative");
  const double al = std::abs(lambda);
  if (al == 0.0) return Complex(1.0 / (n + 1), 0.0);
  if (al <= 8.0) return moment_taylor(n, lambda);

  const Complex il(0.0, lambda);
  const Complex eil = std::exp(il);
  if (al > n) {
    // Upward recursion, stable when |lambda| > n.
    Complex I = (eil - 1.0) / il;
    for (int k = 1; k <= n; ++k) I = eil / il - (static_cast<double>(k) / il) * I;
    return I;
  }
  // 8 < |lambda| <= n: downward recursion from a zero seed.
  const int ntop = n + 24;
  Complex I{0.0, 0.0};
  for (int k = ntop; k > n; --k) I = (eil - il * I) / static_cast<double>(k);
  return I;
}

Complex moment_integral(int n, double lambda, double u, double v) {
  if (!(0.0 <= u && u < v && v <= 1.0))
    throw DomainError("moment_integral: need 0 <= u < v <= 1");
  if (u == 0.0 && v == 1.0) return moment_integral(n, lambda);
  // Substitute y = u + (v-u)s and expand the binomial.
  const double w = v - u;
  Complex sum{0.0, 0.0};
  for (int j = 0; j <= n; ++j)
    sum += binom_d(n, j) * std::pow(u, n - j) * std::pow(w, j) * moment_integral(j, lambda * w);
  return w * std::exp(Complex(0.0, lambda * u)) * sum;
}

OscCoeffs p_transform(const OscCoeffs& c, double a, double b) {
  if (!(a > 1.0) || !(b > a)) throw DomainError("p_transform: need 1 < a < b");
  const double la = std::log(a);
  const double lba = std::log(b / a);
  int gmax = 0;
  for (const auto& [k, v] : c) gmax = std::max(gmax, k.gamma);
  OscCoeffs out;
  for (const auto& [k, v] : c) {
    Complex acc{0.0, 0.0};
    for (int m = k.gamma; m <= gmax; ++m) {
      auto it = c.find(OscKey{k.alpha, m});
      if (it == c.end()) continue;
      acc += it->second * binom_d(m, k.gamma) * std::pow(lba, k.gamma) *
             std::pow(la, m - k.gamma);
    }
    out[k] = acc;
  }
  return out;
}

double cross_term(const OscCoeffs& c, double M) {
  if (!(M > 0.0)) throw DomainError("cross_term: need M > 0");
  Complex T{0.0, 0.0};
  for (const auto& [kp, cp] : c) {
    for (const auto& [kq, cq] : c) {
      if (kp.alpha == kq.alpha) continue;
      T += cp * std::conj(cq) *
           moment_integral(kp.gamma + kq.gamma, M * (kp.alpha - kq.alpha));
    }
  }
  if (std::abs(T.imag()) > 1e-8)
    throw AsymmetryError("cross_term: imaginary residue " + std::to_string(T.imag()));
  return T.real();
}

Eigen::MatrixXd gram_form(const std::vector<OscKey>& keys, GramWindow window) {
  if (keys.empty()) throw DimensionError("gram_form: empty key set");
  const int k = static_cast<int>(keys.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      if (keys[p].alpha != keys[q].alpha) continue;
      const int s = keys[p].gamma + keys[q].gamma + 1;
      if (window == GramWindow::Full)
        G(p, q) = 1.0 / s;
      else
        G(p, q) = (std::pow(0.75, s) - std::pow(0.25, s)) / s;
    }
  }
  return G;
}

namespace {

// Hermitian matrix X with X[p][q] = I(g_p+g_q, M(a_p-a_q)) off the alpha
// blocks; sup over unit c of |T(c,M)| is its spectral radius.
double cross_term_sup(const std::vector<OscKey>& keys, double M) {
  const int k = static_cast<int>(keys.size());
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(k, k);
  bool any = false;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      if (keys[p].alpha == keys[q].alpha) continue;
      X(p, q) = moment_integral(keys[p].gamma + keys[q].gamma,
                                M * (keys[p].alpha - keys[q].alpha));
      any = true;
    }
  if (!any) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

OscCertificate certify_osc(const OscCoeffs& c, double a, double b) {
  if (!(a > 1.0) || !(b > a)) throw DomainError("certify_osc: need 1 < a < b");
  if (c.empty()) throw DimensionError("certify_osc: empty coefficient map");

  OscCertificate cert;
  cert.a = a;
  cert.b = b;
  for (const auto& [k, v] : c) cert.K.push_back(k);
  const int k = static_cast<int>(cert.K.size());

  const Eigen::MatrixXd U = gram_form(cert.K, GramWindow::Full);
  const Eigen::MatrixXd W = gram_form(cert.K, GramWindow::Mid);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esU(U), esW(W);
  const double lminU = esU.eigenvalues().minCoeff();
  const double lmaxU = esU.eigenvalues().maxCoeff();
  const double lminW = esW.eigenvalues().minCoeff();
  if (lminU <= 0.0 || lminW <= 0.0)
    throw SingularError("certify_osc: Gram form not positive definite");

  // M0: smallest grid M past which the worst-case cross term stays below half
  // the Gram floor, on both windows. Sampled over a finite M grid.
  bool has_cross = false;
  for (const auto& key : cert.K)
    if (key.alpha != cert.K.front().alpha) has_cross = true;
  if (!has_cross) {
    cert.M0 = 0.0;
  } else {
    constexpr int kGrid = 48;
    std::array<double, kGrid> Ms{}, worst{};
    for (int i = 0; i < kGrid; ++i) {
      Ms[i] = std::exp(std::log(0.5) + (std::log(1e5) - std::log(0.5)) * i / (kGrid - 1));
      const double tf = cross_term_sup(cert.K, Ms[i]);
      double tm = 0.0;
      {
        // Mid-window analogue assembled from interval moments.
        Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(k, k);
        for (int p = 0; p < k; ++p)
          for (int q = 0; q < k; ++q) {
            if (cert.K[p].alpha == cert.K[q].alpha) continue;
            X(p, q) = moment_integral(cert.K[p].gamma + cert.K[q].gamma,
                                      Ms[i] * (cert.K[p].alpha - cert.K[q].alpha), 0.25, 0.75);
          }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
        tm = es.eigenvalues().cwiseAbs().maxCoeff();
      }
      worst[i] = std::max(tf / (0.5 * lminU), tm / (0.5 * lminW));
    }
    double M0 = std::numeric_limits<double>::infinity();
    for (int i = kGrid - 1; i >= 0; --i) {
      if (worst[i] <= 1.0)
        M0 = Ms[i];
      else
        break;
    }
    cert.M0 = M0;
  }

  const double M = std::log(b / a);
  if (!(M > cert.M0))
    throw WindowError("certify_osc: log(b/a) = " + std::to_string(M) +
                      " does not exceed M0 = " + std::to_string(cert.M0));

  cert.Nlo = std::sqrt(0.5 * lminU) / std::sqrt(static_cast<double>(k));
  cert.Lhi = k * std::max(1.0, std::sqrt(1.5 * lmaxU));
  cert.P = std::sqrt(0.5 * lminW) / std::sqrt(static_cast<double>(k));

  const OscCoeffs pc = p_transform(c, a, b);
  for (const auto& key : cert.K) cert.p_of_c.push_back(pc.at(key));
  cert.y0_window = {std::pow(a, 0.75) * std::pow(b, 0.25),
                    std::pow(a, 0.25) * std::pow(b, 0.75)};
  return cert;
}

PureOscBound pure_osc_bound(const std::vector<ExponentTriple>& K, double N,
                            int trials, std::uint64_t seed) {
  if (!(N >= 1.0)) throw DomainError("pure_osc_bound: need N >= 1");
  for (const auto& e : K)
    if (e.gamma != 0 || e.beta.numerator() != 0)
      throw RegimeError("pure_osc_bound: requires beta = 0 and gamma = 0");
  const double lo = std::max(N * N, 1.0 + 1e-9);
  SamplePlan plan = find_sample_points(K, lo, 10.0 * N * N, trials, seed);
  return PureOscBound{plan.points, plan.equivalence_constant};
}

double logpoly_node_constant(int d) {
  if (d < 0) throw DomainError("logpoly_node_constant: negative degree");
  if (d == 0) return 1.0;  // constants: the single node is exact
  static std::array<double, 17> cache{};
  static std::array<bool, 17> have{};
  static std::mutex mu;
  const bool cacheable = d <= 16;
  if (cacheable) {
    std::lock_guard<std::mutex> lk(mu);
    if (have[d]) return cache[d];
  }
  const int M = d + 2;
  std::vector<double> nodes(d + 1);
  for (int j = 1; j < M; ++j) nodes[j - 1] = 1.0 - static_cast<double>(j) / M;
  // Lebesgue function of the node set, dense-sampled on [0,1].
  double lmax = 0.0;
  const int steps = 10000;
  for (int s = 0; s <= steps; ++s) {
    const double x = static_cast<double>(s) / steps;
    double lsum = 0.0;
    for (int i = 0; i <= d; ++i) {
      double li = 1.0;
      for (int j = 0; j <= d; ++j) {
        if (j == i) continue;
        li *= (x - nodes[j]) / (nodes[i] - nodes[j]);
      }
      lsum += std::abs(li);
    }
    lmax = std::max(lmax, lsum);
  }
  const double L = lmax * 1.01;
  if (cacheable) {
    std::lock_guard<std::mutex> lk(mu);
    cache[d] = L;
    have[d] = true;
  }
  return L;
}

LogPolyBound logpoly_sup(const std::vector<double>& coeffs, double a, double b) {
  if (!(a > 1.0) || !(b > a)) throw DomainError("logpoly_sup: need 1 < a < b");
  if (coeffs.empty()) throw DomainError("logpoly_sup: empty coefficient list");
  const int d = static_cast<int>(coeffs.size()) - 1;
  const int M = d + 2;
  LogPolyBound out;
  out.L = logpoly_node_constant(d);
  double fmax = 0.0;
  for (int j = 1; j < M; ++j) {
    const double ly = (static_cast<double>(j) / M) * std::log(a) +
                      (1.0 - static_cast<double>(j) / M) * std::log(b);
    const double y = std::exp(ly);
    out.points.push_back(y);
    double f = 0.0, p = 1.0;
    for (int g = 0; g <= d; ++g) {
      f += coeffs[g] * p;
      p *= ly;
    }
    fmax = std::max(fmax, std::abs(f));
  }
  out.bound = out.L * fmax;
  return out;
}

}  // namespace powlog
