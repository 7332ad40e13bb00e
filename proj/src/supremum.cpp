#include "powlog/supremum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "powlog/balanced.hpp"

namespace powlog {

Decomposition decompose(const PreparedSum& h) {
  const bool has_upper = std::isfinite(h.domain().upper);
  Decomposition d;
  for (const auto& t : h.terms()) {
    const auto bsign = t.exp.beta.numerator();
    if (bsign < 0) {
      d.neg.push_back(t);
    } else if (bsign == 0) {
      if (!has_upper && t.exp.gamma > 0)
        throw FormError("decompose: fiberwise boundedness violated (beta = 0, gamma > 0, upper = inf)");
      if (t.unit.kind != UnitKind::Identity)
        throw FormError("decompose: oscillatory (beta = 0) terms must carry identity units");
      d.osc.push_back(t);
    } else {
      if (!has_upper)
        throw FormError("decompose: fiberwise boundedness violated (beta > 0, upper = inf)");
      // z = a/y coordinates: |f+| matches the conjugated negative-regime family.
      Term zt = t;
      zt.coeff = std::conj(t.coeff);
      zt.exp = ExponentTriple(t.exp.alpha, -t.exp.beta, t.exp.gamma);
      d.pos_z.push_back(zt);
    }
  }
  return d;
}

double nonneg_single_witness(const std::vector<double>& scores) {
  double s = 0.0;
  for (double v : scores) {
    if (v < 0.0) throw NegativeError("nonneg_single_witness: negative entry");
    s += v;
  }
  return s;
}

namespace {

struct Assembly {
  WitnessCertificate cert;
  bool ok = true;
  std::string fail_reason;
};

double supp_neg_at(const NegRegimeCertificate& nc, double y) {
  return nc.C_tail * std::pow(y / (2.0 * nc.N), -to_double(nc.A));
}

void add_check(Assembly& a, const std::string& name, double lhs, double rhs) {
  a.cert.checks.push_back({name, lhs, rhs});
  if (!(lhs < rhs)) {
    a.ok = false;
    if (!a.fail_reason.empty()) a.fail_reason += "; ";
    a.fail_reason += name + " (" + std::to_string(lhs) + " !< " + std::to_string(rhs) + ")";
  }
}

Assembly assemble(const PreparedSum& h, const SupOptions& opts) {
  Assembly out;
  WitnessCertificate& cert = out.cert;
  const double N = h.domain().lower;
  const double a = h.domain().upper;
  const bool has_upper = std::isfinite(a);

  if (h.domain().balanced) {
    const int zb = estimate_zero_bound(h, opts.samples, opts.seed);
    BalancedPlan plan = balanced_witnesses(h, std::max(2, zb + 1), opts.samples, opts.seed);
    cert.witnesses = plan.grid;
    cert.tags.assign(plan.grid.size(), RegimeTag::Balanced);
    cert.C_total = 1.25 * plan.M;  // margin on the sampled norm-equivalence factor
    cert.confidence = Confidence::Sampled;
    return out;
  }

  Decomposition dec = decompose(h);
  const bool has_neg = !dec.neg.empty();
  const bool has_pos = !dec.pos_z.empty();
  const bool has_osc = !dec.osc.empty();

  const DomainSpec open_up(N, std::numeric_limits<double>::infinity(), false);
  if (has_neg)
    cert.neg_cert = certify_neg(PreparedSum(dec.neg, open_up), N, opts.trials, opts.seed);
  if (has_pos)
    cert.pos_cert = certify_neg(PreparedSum(dec.pos_z, open_up), N, opts.trials,
                                opts.seed ^ 0x517cc1b7u);
  if (cert.neg_cert) cert.confidence = weakest(cert.confidence, cert.neg_cert->confidence);
  if (cert.pos_cert) cert.confidence = weakest(cert.confidence, cert.pos_cert->confidence);

  // The certified core region is (N, a/N) for finite a, (N, inf) otherwise.
  const double core_hi = has_upper ? a / N : std::numeric_limits<double>::infinity();

  if (has_upper)
    add_check(out, "core_nonempty(4N^2 < a)", 4.0 * N * N, a);

  // Oscillatory branch selection.
  enum class OscBranch { None, Norm, Geometric, Pure } branch = OscBranch::None;
  OscCoeffs c0;
  std::vector<double> osc_points;
  double osc_R = 0.0;  // sup |f0| <= osc_R * max over osc_points |f0|
  double q = 0.0, Lhi = 0.0, P = 0.0;
  double y0_lo = 0.0, y0_hi = 0.0;
  if (has_osc) {
    for (const auto& t : dec.osc) c0[OscKey{t.exp.alpha, t.exp.gamma}] += t.coeff;
    bool all_zero_alpha = true, all_real = true;
    for (const auto& [k, v] : c0) {
      if (k.alpha != 0.0) all_zero_alpha = false;
      if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v))) all_real = false;
    }
    if (!has_upper) {
      // decompose guarantees gamma = 0 here.
      std::vector<ExponentTriple> K;
      for (const auto& [k, v] : c0) K.emplace_back(k.alpha, Rational(0), 0);
      PureOscBound po = pure_osc_bound(K, N, opts.trials, opts.seed ^ 0x2545f491u);
      osc_points = po.points;
      osc_R = po.C;
      branch = OscBranch::Pure;
      cert.confidence = weakest(cert.confidence, Confidence::Sampled);
    } else if (all_zero_alpha && all_real) {
      int d = 0;
      for (const auto& [k, v] : c0) d = std::max(d, k.gamma);
      std::vector<double> coeffs(d + 1, 0.0);
      for (const auto& [k, v] : c0) coeffs[k.gamma] = v.real();
      LogPolyBound lp = logpoly_sup(coeffs, N, core_hi);
      osc_points = lp.points;
      osc_R = lp.L;
      branch = OscBranch::Geometric;
    } else {
      OscCertificate oc = certify_osc(c0, N, core_hi);
      q = 0.0;
      for (const auto& v : oc.p_of_c) q = std::max(q, std::abs(v));
      Lhi = oc.Lhi;
      P = oc.P;
      y0_lo = oc.y0_window.first;
      y0_hi = oc.y0_window.second;
      branch = OscBranch::Norm;
      cert.osc_cert = std::move(oc);
      cert.confidence = weakest(cert.confidence, Confidence::Sampled);
    }
  }

  // Witness list.
  double neg_wit_min = 0.0, neg_wit_max = 0.0;
  if (cert.neg_cert) {
    for (double w : cert.neg_cert->witnesses) {
      cert.witnesses.push_back(w);
      cert.tags.push_back(RegimeTag::Neg);
    }
    neg_wit_min = *std::min_element(cert.neg_cert->witnesses.begin(),
                                    cert.neg_cert->witnesses.end());
    neg_wit_max = *std::max_element(cert.neg_cert->witnesses.begin(),
                                    cert.neg_cert->witnesses.end());
    if (has_upper)
      add_check(out, "neg_witnesses_in_core", neg_wit_max, core_hi);
  }
  double pos_wit_min = 0.0, pos_wit_max = 0.0;  // in y coordinates
  if (cert.pos_cert) {
    std::vector<double> ys;
    for (double wz : cert.pos_cert->witnesses) ys.push_back(a / wz);
    for (double y : ys) {
      cert.witnesses.push_back(y);
      cert.tags.push_back(RegimeTag::Pos);
    }
    pos_wit_min = *std::min_element(ys.begin(), ys.end());
    pos_wit_max = *std::max_element(ys.begin(), ys.end());
    add_check(out, "pos_witnesses_in_core", N, pos_wit_min);
  }
  for (double y : osc_points) {
    cert.witnesses.push_back(y);
    cert.tags.push_back(RegimeTag::Osc);
    if (std::isfinite(core_hi) && !(y < core_hi))
      add_check(out, "osc_points_in_core", y, core_hi);
  }
  if (branch == OscBranch::Pure && has_upper)
    add_check(out, "pure_osc_points_in_core",
              *std::max_element(osc_points.begin(), osc_points.end()), core_hi);

  // Suppression coefficients: bounds on one regime's magnitude at another
  // regime's witness points, as multiples of the respective component max.
  const double CnegU = cert.neg_cert ? cert.neg_cert->C_total : 0.0;
  const double CposU = cert.pos_cert ? cert.pos_cert->C_total : 0.0;
  auto supp_pos_at = [&](double y) {
    return cert.pos_cert ? supp_neg_at(*cert.pos_cert, a / y) : 0.0;
  };
  auto supp_neg = [&](double y) {
    return cert.neg_cert ? supp_neg_at(*cert.neg_cert, y) : 0.0;
  };

  double Cm = std::max({CnegU, CposU, 1.0});
  if (branch == OscBranch::Norm) Cm = std::max(Cm, Lhi);

  // Linear system for the component maxima X- , X+ in multiples of the score,
  // after eliminating the oscillatory component.
  double u_pn = 0.0;  // pos at neg witnesses
  double u_np = 0.0;  // neg at pos witnesses
  double w_no = 0.0, w_po = 0.0;  // neg/pos at osc points
  if (cert.neg_cert && cert.pos_cert) {
    u_pn = supp_pos_at(neg_wit_max);
    u_np = supp_neg(pos_wit_min);
  }
  if (!osc_points.empty()) {
    const double omin = *std::min_element(osc_points.begin(), osc_points.end());
    const double omax = *std::max_element(osc_points.begin(), osc_points.end());
    if (cert.neg_cert) w_no = supp_neg(omin);
    if (cert.pos_cert) w_po = supp_pos_at(omax);
  }

  double bdir = 1.0;           // direct score multiple in the X rows
  double Q00 = 0.0, Q01 = 0.0, Q10 = 0.0, Q11 = 0.0;
  if (branch == OscBranch::Norm) {
    bdir = 1.0 + Lhi / (3.0 * Cm);  // |f0| <= Lhi q <= (Lhi/3Cm) score
    Q01 = u_pn;
    Q10 = u_np;
  } else if (branch == OscBranch::Geometric || branch == OscBranch::Pure) {
    // X0 <= score + w_no X- + w_po X+ substituted into the X rows.
    bdir = 1.0 + osc_R;
    Q00 = osc_R * w_no;
    Q01 = osc_R * w_po + u_pn;
    Q10 = osc_R * w_no + u_np;
    Q11 = osc_R * w_po;
  } else {
    Q01 = u_pn;
    Q10 = u_np;
  }
  if (cert.neg_cert) {
    add_check(out, "suppression_at_neg_witnesses", Q00 + Q01, 1.0 / 3.0);
  }
  if (cert.pos_cert) {
    add_check(out, "suppression_at_pos_witnesses", Q10 + Q11, 1.0 / 3.0);
  }

  if (!out.ok) return out;

  // Solve X = bdir + Q X (2x2, row sums < 1/3).
  double Xn = 0.0, Xp = 0.0;
  {
    Eigen::Matrix2d A;
    A << 1.0 - Q00, -Q01, -Q10, 1.0 - Q11;
    Eigen::Vector2d b(cert.neg_cert ? bdir : 0.0, cert.pos_cert ? bdir : 0.0);
    Eigen::Vector2d x = A.partialPivLu().solve(b);
    Xn = std::max(0.0, x(0));
    Xp = std::max(0.0, x(1));
  }
  double X0 = 0.0;
  if (branch == OscBranch::Geometric || branch == OscBranch::Pure)
    X0 = 1.0 + w_no * Xn + w_po * Xp;

  // Upper constant: sup <= R- X- + sup|f0| + R+ X+ (score multiples).
  double C_up = CnegU * Xn + CposU * Xp;
  if (branch == OscBranch::Norm)
    C_up += Lhi / (3.0 * Cm);
  else if (branch != OscBranch::None)
    C_up += osc_R * X0;

  // Lower constant: evaluation witnesses give 1; the norm entry needs the
  // y0-window route with both tails suppressed there.
  double C_low = 1.0;
  if (branch == OscBranch::Norm) {
    double v = 0.0;
    if (cert.neg_cert) v += supp_neg(y0_lo) * Xn;
    if (cert.pos_cert) v += supp_pos_at(y0_hi) * Xp;
    add_check(out, "y0_tail_suppression", v, P / (6.0 * Cm));
    add_check(out, "window_scale(P/3Cm <= 1/3)", P / (3.0 * Cm), 1.0 / 3.0 + 1e-15);
    if (!out.ok) return out;
    C_low = 6.0 * Cm / P;
    cert.osc_norm_entry = 3.0 * Cm * q;
  }

  cert.C_total = std::max({1.0, C_up, C_low});
  return out;
}

}  // namespace

WitnessCertificate witness_set(const PreparedSum& h, const SupOptions& opts) {
  Assembly a = assemble(h, opts);
  if (!a.ok)
    throw WindowError("witness_set: smallness checks failed: " + a.fail_reason);
  return std::move(a.cert);
}

std::vector<AssemblyCheck> probe_checks(const PreparedSum& h, const SupOptions& opts) {
  try {
    return assemble(h, opts).cert.checks;
  } catch (const Error&) {
    return {};
  }
}

std::pair<double, WitnessCertificate> approx_sup(const PreparedSum& h,
                                                 const SupOptions& opts) {
  WitnessCertificate cert = witness_set(h, opts);
  double score = 0.0;
  for (double w : cert.witnesses) score = std::max(score, std::abs(h.eval(w)));
  if (cert.osc_norm_entry) score = std::max(score, *cert.osc_norm_entry);
  return {score, std::move(cert)};
}

}  // namespace powlog
