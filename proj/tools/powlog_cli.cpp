#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "powlog/asymptotics.hpp"
#include "powlog/oracle.hpp"
#include "powlog/sumfile.hpp"
#include "powlog/supremum.hpp"

namespace {

using nlohmann::json;
using namespace powlog;

struct CommonFlags {
  int budget = 4096;
  int trials = 64;
  std::uint64_t seed = 0x9e3779b9u;
  bool as_json = false;
  std::string plot_path;
};

int classify(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DataError*>(&e))
    return 1;
  return 2;  // hypothesis failure
}

json cert_to_json(const WitnessCertificate& cert, double score) {
  json j;
  j["score"] = score;
  j["C_total"] = cert.C_total;
  j["confidence"] = to_string(cert.confidence);
  j["witnesses"] = json::array();
  for (size_t i = 0; i < cert.witnesses.size(); ++i)
    j["witnesses"].push_back({{"y", cert.witnesses[i]},
                              {"regime", to_string(cert.tags[i])}});
  if (cert.osc_norm_entry) j["osc_norm_entry"] = *cert.osc_norm_entry;
  j["checks"] = json::array();
  for (const auto& c : cert.checks)
    j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs},
                           {"pass", c.pass()}});
  return j;
}

void emit_plot(const PreparedSum& h, const WitnessCertificate& cert,
               const CommonFlags& fl) {
  if (fl.plot_path.empty()) return;
  std::ofstream out(fl.plot_path);
  if (!out) throw DataError("cannot open plot path " + fl.plot_path);
  const double lo = h.domain().lower * (1.0 + 1e-9);
  double hi = h.domain().upper;
  if (!std::isfinite(hi)) {
    hi = h.domain().lower * 1e6;
    for (double w : cert.witnesses) hi = std::max(hi, 2.0 * w);
  }
  out << "y,abs_h,witness\n";
  const double llo = std::log(lo), lhi = std::log(hi * (1.0 - 1e-9));
  for (int i = 0; i < fl.budget; ++i) {
    const double y = std::exp(llo + (lhi - llo) * i / (fl.budget - 1));
    out << y << "," << std::abs(h.eval(y)) << ",0\n";
  }
  for (double w : cert.witnesses)
    out << w << "," << std::abs(h.eval(w)) << ",1\n";
}

int cmd_sup(const std::string& path, const CommonFlags& fl) {
  PreparedSum h = parse_sumfile_file(path).prepared();
  SupOptions opts;
  opts.trials = fl.trials;
  opts.seed = fl.seed;
  auto [score, cert] = approx_sup(h, opts);
  emit_plot(h, cert, fl);
  if (fl.as_json) {
    std::cout << cert_to_json(cert, score).dump(2) << "\n";
  } else {
    std::cout << "score " << score << "\nC_total " << cert.C_total
              << "\nconfidence " << to_string(cert.confidence) << "\nwitnesses";
    for (size_t i = 0; i < cert.witnesses.size(); ++i)
      std::cout << " " << cert.witnesses[i] << ":" << to_string(cert.tags[i]);
    std::cout << "\n";
    if (cert.osc_norm_entry)
      std::cout << "osc_norm_entry " << *cert.osc_norm_entry << "\n";
  }
  return 0;
}

double oracle_sup(const PreparedSum& h, const CommonFlags& fl) {
  const double N = h.domain().lower, a = h.domain().upper;
  if (h.domain().balanced) return brute_sup(h, N, a, fl.budget).sup_estimate;
  if (std::isfinite(a)) return brute_sup(h, N, a / N, fl.budget).sup_estimate;
  if (h.all_beta_negative())
    return brute_sup_unbounded(h, N, std::max(N * 1e3, 1e8), fl.budget).sup_estimate;
  const double horizon = std::max(N * 1e3, 100.0 * N * N);
  return brute_sup(h, N, horizon, fl.budget).sup_estimate;
}

int cmd_verify(const std::string& path, const CommonFlags& fl) {
  PreparedSum h = parse_sumfile_file(path).prepared();
  SupOptions opts;
  opts.trials = fl.trials;
  opts.seed = fl.seed;
  auto [score, cert] = approx_sup(h, opts);
  const double sup = oracle_sup(h, fl);
  double ratio = 1.0;  // zero-function convention
  if (score > 0.0) ratio = sup / score;
  const bool pass = ratio >= 1.0 / cert.C_total * (1.0 - 1e-9) &&
                    ratio <= cert.C_total * (1.0 + 1e-9);
  if (fl.as_json) {
    json j = cert_to_json(cert, score);
    j["oracle_sup"] = sup;
    j["ratio"] = ratio;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "score " << score << "\noracle_sup " << sup << "\nratio " << ratio
              << "\nC_total " << cert.C_total << "\n"
              << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 3;
}

int cmd_asymptote(const std::string& path, const std::string& direction, int max_l,
                  bool as_json) {
  auto samples = read_samples_file(path);
  AsymptoticProfile p;
  if (direction == "eps")
    p = flatness_exponent(samples, max_l);
  else
    p = fit_growth(samples, max_l);
  if (as_json) {
    json j;
    if (p.r_is_rational)
      j["r"] = std::to_string(p.r.numerator()) + "/" + std::to_string(p.r.denominator());
    else
      j["r_float"] = p.r_float;
    j["l"] = p.l;
    j["c_band"] = {p.c_lo, p.c_hi};
    j["direction"] = to_string(p.direction);
    j["residual"] = p.residual;
    j["non_power_log"] = p.non_power_log;
    if (p.direction == Direction::ToZero) j["correction"] = p.correction;
    std::cout << j.dump(2) << "\n";
  } else {
    if (p.r_is_rational)
      std::cout << "r=" << p.r.numerator() << "/" << p.r.denominator();
    else
      std::cout << "r~" << p.r_float << " (no rational fit)";
    std::cout << " l=" << p.l << " c_band=[" << p.c_lo << "," << p.c_hi << "]"
              << " residual=" << p.residual;
    if (p.direction == Direction::ToZero) std::cout << " correction=" << p.correction;
    std::cout << "\n";
  }
  if (p.non_power_log) {
    std::cerr << "non-power-log: best residual " << p.residual
              << " exceeds threshold 0.01\n";
    return 4;
  }
  return 0;
}

int cmd_witnesses(const std::string& path, const CommonFlags& fl) {
  PreparedSum h = parse_sumfile_file(path).prepared();
  if (!h.all_alpha_zero())
    throw OscError("witnesses: oscillatory exponent present (alpha != 0); "
                   "use the sup command's norm-form certificate instead");
  SupOptions opts;
  opts.trials = fl.trials;
  opts.seed = fl.seed;
  WitnessCertificate cert = witness_set(h, opts);
  if (fl.as_json) {
    json j = json::array();
    for (size_t i = 0; i < cert.witnesses.size(); ++i)
      j.push_back({{"y", cert.witnesses[i]},
                   {"regime", to_string(cert.tags[i])},
                   {"abs_h", std::abs(h.eval(cert.witnesses[i]))}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < cert.witnesses.size(); ++i)
      std::cout << cert.witnesses[i] << " " << to_string(cert.tags[i]) << " "
                << std::abs(h.eval(cert.witnesses[i])) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified suprema of prepared power-log sums"};
  app.require_subcommand(1);

  CommonFlags fl;
  std::string file, direction = "x";
  int max_l = 8;

  auto add_common = [&](CLI::App* sub, bool with_file = true) {
    if (with_file) sub->add_option("file", file, "input file")->required();
    sub->add_option("--budget", fl.budget, "oracle grid budget");
    sub->add_option("--trials", fl.trials, "sampling trials");
    sub->add_option("--seed", fl.seed, "RNG seed");
    sub->add_flag("--json", fl.as_json, "JSON output");
    sub->add_option("--emit-plot", fl.plot_path, "write (y, |h|) CSV");
  };

  auto* sup = app.add_subcommand("sup", "certified supremum score");
  add_common(sup);
  auto* verify = app.add_subcommand("verify", "oracle vs certificate");
  add_common(verify);
  auto* wit = app.add_subcommand("witnesses", "witness table (real exponents)");
  add_common(wit);
  auto* asym = app.add_subcommand("asymptote", "fit dominant growth from CSV");
  asym->add_option("csv", file, "two-column samples")->required();
  asym->add_option("--direction", direction, "x or eps")
      ->check(CLI::IsMember({"x", "eps"}));
  asym->add_option("--max-l", max_l, "largest log power tried");
  asym->add_flag("--json", fl.as_json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sup->parsed()) return cmd_sup(file, fl);
    if (verify->parsed()) return cmd_verify(file, fl);
    if (wit->parsed()) return cmd_witnesses(file, fl);
    if (asym->parsed()) return cmd_asymptote(file, direction, max_l, fl.as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
