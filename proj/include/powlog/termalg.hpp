#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "powlog/errors.hpp"

namespace powlog {

using Rational = boost::rational<std::int64_t>;
using Complex = std::complex<double>;

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Provenance of a certificate constant: proved in closed form, estimated by
/// sampling, or trusted as a caller assertion.
enum class Confidence { Exact, Sampled, Asserted };

inline Confidence weakest(Confidence a, Confidence b) {
  return static_cast<Confidence>(std::max(static_cast<int>(a), static_cast<int>(b)));
}

inline const char* to_string(Confidence c) {
  switch (c) {
    case Confidence::Exact: return "exact";
    case Confidence::Sampled: return "sampled";
    case Confidence::Asserted: return "asserted";
  }
  return "?";
}

/// One monomial species y^(alpha*i + beta) (log y)^gamma.
/// alpha is the oscillation frequency in [0, 2pi), beta an exact rational,
/// gamma a nonnegative integer log power.
struct ExponentTriple {
  double alpha = 0.0;
  Rational beta{0};
  int gamma = 0;

  ExponentTriple() = default;
  ExponentTriple(double a, Rational b, int g) : alpha(reduce_alpha(a)), beta(std::move(b)), gamma(g) {
    if (gamma < 0) throw DomainError("ExponentTriple: gamma must be nonnegative");
  }

  static double reduce_alpha(double a) {
    if (!std::isfinite(a)) throw DomainError("ExponentTriple: alpha must be finite");
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
  }

  bool operator==(const ExponentTriple& o) const {
    return alpha == o.alpha && beta == o.beta && gamma == o.gamma;
  }

  // Canonical order: beta descending, gamma descending, alpha ascending.
  bool canonical_before(const ExponentTriple& o) const {
    if (beta != o.beta) return beta > o.beta;
    if (gamma != o.gamma) return gamma > o.gamma;
    return alpha < o.alpha;
  }
};

enum class UnitKind { Identity, RationalTail, Tabulated };

/// A near-constant factor f(y) = 1 + o(1) multiplying a monomial term.
struct PerturbationUnit {
  UnitKind kind = UnitKind::Identity;

  // RationalTail: f(y) = 1 + sum a_i y^(-k_i), k_i positive integers.
  std::vector<std::pair<int, double>> tail;

  // Tabulated: caller-supplied evaluator plus a declared bound delta with
  // |f(y) - 1| (log y)^(2b) < delta on the domain.
  std::shared_ptr<std::function<double(double)>> table;
  double delta_decl = 0.0;

  static PerturbationUnit identity() { return PerturbationUnit{}; }

  static PerturbationUnit rational_tail(std::vector<std::pair<int, double>> coeffs) {
    PerturbationUnit u;
    u.kind = UnitKind::RationalTail;
    for (auto& [k, a] : coeffs) {
      if (k <= 0) throw DomainError("RationalTail: powers must be positive integers");
      (void)a;
    }
    u.tail = std::move(coeffs);
    return u;
  }

  static PerturbationUnit tabulated(std::function<double(double)> f, double delta) {
    if (delta <= 0) throw DomainError("Tabulated unit: delta_decl must be positive");
    PerturbationUnit u;
    u.kind = UnitKind::Tabulated;
    u.table = std::make_shared<std::function<double(double)>>(std::move(f));
    u.delta_decl = delta;
    return u;
  }

  double eval(double y) const {
    switch (kind) {
      case UnitKind::Identity:
        return 1.0;
      case UnitKind::RationalTail: {
        double v = 1.0;
        for (const auto& [k, a] : tail) v += a * std::pow(y, -k);
        return v;
      }
      case UnitKind::Tabulated:
        return (*table)(y);
    }
    return 1.0;
  }

  // Units merge only when structurally identical; tabulated units only when
  // they share the same evaluator object.
  bool operator==(const PerturbationUnit& o) const {
    if (kind != o.kind) return false;
    if (kind == UnitKind::RationalTail) return tail == o.tail;
    if (kind == UnitKind::Tabulated) return table == o.table && delta_decl == o.delta_decl;
    return true;
  }
};

struct Term {
  Complex coeff{0.0, 0.0};
  ExponentTriple exp;
  PerturbationUnit unit;

  Term() = default;
  Term(Complex c, ExponentTriple e, PerturbationUnit u = PerturbationUnit::identity())
      : coeff(c), exp(std::move(e)), unit(std::move(u)) {}
};

/// Cell description in the fiber variable: (lower, upper) with lower = N > 1,
/// upper finite or +inf, and a balanced/unbalanced flag.
struct DomainSpec {
  double lower = 2.0;
  double upper = std::numeric_limits<double>::infinity();
  bool balanced = false;
  double kappa = 16.0;  // balanced cells must satisfy upper <= kappa * lower

  DomainSpec() = default;
  DomainSpec(double lo, double up, bool bal, double k = 16.0)
      : lower(lo), upper(up), balanced(bal), kappa(k) {
    validate();
  }

  void validate() const {
    if (!(lower > 1.0)) throw DomainError("DomainSpec: lower cutoff must exceed 1");
    if (balanced) {
      if (!std::isfinite(upper)) throw DomainError("DomainSpec: balanced cell needs finite upper");
      if (upper <= lower) throw DomainError("DomainSpec: empty cell");
      if (upper > kappa * lower) throw DomainError("DomainSpec: balanced cell violates upper <= kappa*lower");
    } else {
      if (std::isfinite(upper) && !(upper > lower * lower))
        throw DomainError("DomainSpec: unbalanced cell needs upper > lower^2");
    }
  }

  bool contains(double y) const { return y > lower && y < upper; }
};

/// A prepared power-log sum: finitely many terms c * unit * y^(alpha i + beta)
/// * (log y)^gamma over a cell. Terms with beta > 0 are expressed in the
/// boundary variable: they stand for c * unit(a/y) * (y/a)^(alpha i + beta)
/// * (log(a/y))^gamma, where a is the finite upper boundary.
class PreparedSum {
 public:
  PreparedSum(std::vector<Term> terms, DomainSpec domain);

  const std::vector<Term>& terms() const { return terms_; }
  const DomainSpec& domain() const { return domain_; }

  Complex eval(double y) const;

  bool all_beta_negative() const;
  bool all_alpha_zero() const;
  int max_gamma() const;

 private:
  std::vector<Term> terms_;
  DomainSpec domain_;
};

/// Merge terms with identical (triple, unit), drop exact-zero coefficients
/// (keeping one zero term if everything cancels), sort canonically.
PreparedSum normalize(std::vector<Term> terms, DomainSpec domain);

/// Value of a single term at y (y in the open domain). For beta > 0 terms the
/// finite upper boundary of `domain` supplies the rescaling.
Complex eval_term(const Term& t, double y, const DomainSpec& domain);

}  // namespace powlog
