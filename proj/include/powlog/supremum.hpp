#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powlog/oscillatory.hpp"
#include "powlog/termalg.hpp"
#include "powlog/unbalanced.hpp"

namespace powlog {

enum class RegimeTag { Neg, Osc, Pos, Balanced };

inline const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::Neg: return "neg";
    case RegimeTag::Osc: return "osc";
    case RegimeTag::Pos: return "pos";
    case RegimeTag::Balanced: return "balanced";
  }
  return "?";
}

/// One runtime smallness condition from the assembly ("epsilon small enough"
/// made explicit). The certificate is only issued when every check passes.
struct AssemblyCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass() const { return lhs < rhs; }
};

/// Sign-of-beta partition of a prepared sum. Positive-exponent terms are
/// re-expressed in the boundary variable z = a/y (beta flipped, coefficients
/// conjugated so magnitudes agree pointwise), making them a negative-regime
/// family in z.
struct Decomposition {
  std::vector<Term> neg;
  std::vector<Term> osc;
  std::vector<Term> pos_z;
};

Decomposition decompose(const PreparedSum& h);

struct SupOptions {
  int trials = 64;
  int samples = 64;
  std::uint64_t seed = 0x9e3779b9u;
};

/// Certified witness data for sup |h| over the core region (N, a/N) of an
/// unbalanced cell (or (N, inf), or a balanced cell's grid):
/// (1/C_total) * score <= sup <= C_total * score,
/// score = max(max over witnesses |h|, osc_norm_entry if present).
struct WitnessCertificate {
  std::vector<double> witnesses;
  std::vector<RegimeTag> tags;
  std::optional<double> osc_norm_entry;  // 3 C ||p(c)||_inf
  double C_total = 1.0;
  Confidence confidence = Confidence::Exact;
  std::vector<AssemblyCheck> checks;

  std::optional<NegRegimeCertificate> neg_cert;
  std::optional<NegRegimeCertificate> pos_cert;
  std::optional<OscCertificate> osc_cert;
};

WitnessCertificate witness_set(const PreparedSum& h, const SupOptions& opts = {});

/// Runs the same smallness conditions as witness_set without throwing; used to
/// audit WindowError decisions. Empty when the sum never reaches the assembly
/// stage (regime or delta errors).
std::vector<AssemblyCheck> probe_checks(const PreparedSum& h, const SupOptions& opts = {});

std::pair<double, WitnessCertificate> approx_sup(const PreparedSum& h,
                                                 const SupOptions& opts = {});

/// Sum of nonnegative scores; within a factor k of their max.
double nonneg_single_witness(const std::vector<double>& scores);

}  // namespace powlog
