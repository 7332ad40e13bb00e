#include "powlog/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace powlog {

namespace {

Rational snap_rational(double x, int max_den, double* err) {
  Rational best{0};
  double berr = std::numeric_limits<double>::infinity();
  for (int q = 1; q <= max_den; ++q) {
    const double pd = std::round(x * q);
    if (std::abs(pd) > 1e15) continue;
    const auto p = static_cast<std::int64_t>(pd);
    const double e = std::abs(x - pd / q);
    if (e < berr) {
      berr = e;
      best = Rational(p, q);
    }
  }
  *err = berr;
  return best;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double slope_se = 0.0;
};

LineFit least_squares(const std::vector<double>& t, const std::vector<double>& y) {
  const auto n = static_cast<double>(t.size());
  double tm = 0.0, ym = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    tm += t[i];
    ym += y[i];
  }
  tm /= n;
  ym /= n;
  double stt = 0.0, sty = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
  }
  LineFit f;
  f.slope = sty / stt;
  f.intercept = ym - f.slope * tm;
  double ssr = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - f.slope * t[i] - f.intercept;
    ssr += r * r;
  }
  f.rms = std::sqrt(ssr / n);
  f.slope_se = (n > 2) ? std::sqrt(ssr / (n - 2) / stt) : 0.0;
  return f;
}

}  // namespace

AsymptoticProfile dominant_exponent(const std::vector<GrowthTerm>& terms) {
  if (terms.empty()) throw EmptyError("dominant_exponent: empty term list");

  std::map<std::pair<Rational, int>, std::pair<double, double>> merged;
  for (const auto& t : terms) {
    if (!(t.u_lo > 0.0) || !(t.u_hi >= t.u_lo))
      throw DomainError("dominant_exponent: unit band must satisfy 0 < u_lo <= u_hi");
    auto& band = merged[{t.r, t.l}];
    band.first += t.u_lo;
    band.second += t.u_hi;
  }

  auto dom = merged.begin();
  for (auto it = merged.begin(); it != merged.end(); ++it) {
    const auto& [key, band] = *it;
    const auto& [dkey, dband] = *dom;
    if (key.first > dkey.first || (key.first == dkey.first && key.second > dkey.second))
      dom = it;
  }

  const Rational r0 = dom->first.first;
  const int l0 = dom->first.second;
  const double x0 = 1e6, lx0 = std::log(x0);
  double sub = 0.0;
  for (const auto& [key, band] : merged) {
    if (key == dom->first) continue;
    sub += band.second * std::pow(x0, to_double(key.first - r0)) *
           std::pow(lx0, key.second - l0);
  }
  const double rel = sub / dom->second.first;

  AsymptoticProfile p;
  p.r = r0;
  p.r_float = to_double(r0);
  p.l = l0;
  p.c_lo = dom->second.first * std::max(1e-12, 1.0 - rel);
  p.c_hi = dom->second.second * (1.0 + rel);
  p.subdominant_at_x0 = rel;
  return p;
}

AsymptoticProfile fit_growth(const std::vector<std::pair<double, double>>& samples,
                             int max_l) {
  if (samples.size() < 8) throw DataError("fit_growth: need at least 8 samples");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 1.0) || !(samples[i].second > 0.0))
      throw DataError("fit_growth: samples need x > 1 and v > 0");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      throw DataError("fit_growth: x must be strictly increasing");
  }
  if (!(samples.back().first / samples.front().first >= 1e4))
    throw DataError("fit_growth: samples must span at least 4 decades in x");

  std::vector<double> t, lv, llt;
  for (const auto& [x, v] : samples) {
    t.push_back(std::log(x));
    lv.push_back(std::log(v));
    llt.push_back(std::log(std::log(x)));
  }

  int best_l = 0;
  LineFit best;
  best.rms = std::numeric_limits<double>::infinity();
  for (int l = 0; l <= max_l; ++l) {
    std::vector<double> y(lv.size());
    for (size_t i = 0; i < lv.size(); ++i) y[i] = lv[i] - l * llt[i];
    const LineFit f = least_squares(t, y);
    if (f.rms < best.rms - 1e-12) {
      best = f;
      best_l = l;
    }
  }

  AsymptoticProfile p;
  p.l = best_l;
  p.r_float = best.slope;
  p.residual = best.rms;
  double snap_err = 0.0;
  const Rational snapped = snap_rational(best.slope, 32, &snap_err);
  if (snap_err <= std::max(3.0 * best.slope_se, 1e-9)) {
    p.r = snapped;
    p.r_float = to_double(snapped);
    p.r_is_rational = true;
  } else {
    p.r = Rational(0);
    p.r_is_rational = false;
  }
  p.c_lo = std::exp(best.intercept - 2.0 * best.rms);
  p.c_hi = std::exp(best.intercept + 2.0 * best.rms);
  p.non_power_log = best.rms > 1e-2;
  return p;
}

AsymptoticProfile flatness_exponent(const std::vector<std::pair<double, double>>& samples,
                                    int max_l) {
  if (samples.empty()) throw DataError("flatness_exponent: empty sample list");
  std::vector<std::pair<double, double>> inv;
  double eps_min = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    const auto& [eps, M] = samples[i];
    if (!(eps > 0.0) || !(eps < 0.5))
      throw DataError("flatness_exponent: eps must lie in (0, 1/2)");
    if (i > 0 && !(eps < samples[i - 1].first))
      throw DataError("flatness_exponent: eps must be strictly decreasing");
    inv.emplace_back(1.0 / eps, M);
    eps_min = std::min(eps_min, eps);
  }
  AsymptoticProfile p = fit_growth(inv, max_l);
  // M(eps) ~ c eps^a |log eps|^l appears as x^(-a) under x = 1/eps; report a.
  p.r = -p.r;
  p.r_float = -p.r_float;
  p.direction = Direction::ToZero;
  const double al = std::abs(std::log(eps_min));
  p.correction = std::log(al) / al;
  return p;
}

std::pair<bool, int> poly_bound_check(const AsymptoticProfile& profile) {
  const double r = profile.r_is_rational ? to_double(profile.r) : profile.r_float;
  int deg = static_cast<int>(std::ceil(r));
  if (profile.l > 0) deg += 1;
  return {true, deg};
}

std::vector<std::pair<double, double>> read_samples(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    for (auto& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string t1, t2;
    if (!(ls >> t1 >> t2)) continue;
    char* e1 = nullptr;
    char* e2 = nullptr;
    const double a = std::strtod(t1.c_str(), &e1);
    const double b = std::strtod(t2.c_str(), &e2);
    const bool ok = *e1 == '\0' && *e2 == '\0';
    if (!ok) {
      if (first) {  // header line
        first = false;
        continue;
      }
      throw DataError("read_samples: malformed line: " + line);
    }
    first = false;
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::pair<double, double>> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("read_samples: cannot open " + path);
  return read_samples(in);
}

}  // namespace powlog
