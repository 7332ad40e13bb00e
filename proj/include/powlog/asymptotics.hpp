#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "powlog/termalg.hpp"

namespace powlog {

enum class Direction { ToInfinity, ToZero };

inline const char* to_string(Direction d) {
  return d == Direction::ToInfinity ? "x->inf" : "eps->0+";
}

/// Growth profile c_lo * x^r (log x)^l <= g(x) <= c_hi * x^r (log x)^l
/// eventually (with x = 1/eps in the ToZero direction).
struct AsymptoticProfile {
  Rational r{0};
  double r_float = 0.0;        // always set; to_double(r) when snapped
  bool r_is_rational = true;   // false: slope kept as float (no close rational)
  int l = 0;
  double c_lo = 1.0;
  double c_hi = 1.0;
  Direction direction = Direction::ToInfinity;
  bool non_power_log = false;  // best residual above threshold: outside the class
  double residual = 0.0;       // RMS log-space residual of the selected fit
  double correction = 0.0;     // log|log eps| / |log eps| at the smallest eps
  double subdominant_at_x0 = 0.0;
};

/// One symbolic term u(x) x^r (log x)^l with a unit band u in [u_lo, u_hi].
struct GrowthTerm {
  Rational r{0};
  int l = 0;
  double u_lo = 1.0;
  double u_hi = 1.0;
};

/// Lexicographic dominant pair over the terms (duplicates merged by adding
/// bands), with the band widened by the relative subdominant contribution
/// sampled at x0 = 1e6.
AsymptoticProfile dominant_exponent(const std::vector<GrowthTerm>& terms);

/// Two-parameter log-log fit of v against x: for each l in {0..max_l} a least
/// squares fit of log v - l log log x versus log x; minimal-residual l wins,
/// the slope snaps to a rational with denominator <= 32 when within 3 standard
/// errors. Requires >= 8 samples spanning >= 4 decades.
AsymptoticProfile fit_growth(const std::vector<std::pair<double, double>>& samples,
                             int max_l = 8);

/// Substitutes x = 1/eps and delegates to fit_growth; reports the correction
/// magnitude log|log eps| / |log eps| at the smallest sampled eps.
AsymptoticProfile flatness_exponent(const std::vector<std::pair<double, double>>& samples,
                                    int max_l = 8);

/// Every finite profile is polynomially bounded; the witnessing degree is
/// ceil(r) plus one when a log factor is present.
std::pair<bool, int> poly_bound_check(const AsymptoticProfile& profile);

/// Two-column samples: '#' comments, optional header line, comma or blank
/// separated.
std::vector<std::pair<double, double>> read_samples(std::istream& in);
std::vector<std::pair<double, double>> read_samples_file(const std::string& path);

}  // namespace powlog
