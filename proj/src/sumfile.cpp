#include "powlog/sumfile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "powlog/asymptotics.hpp"

namespace powlog {

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const std::string& tok, int line) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError("line " + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

Rational parse_rational(const std::string& tok, int line) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos)
    throw ParseError("line " + std::to_string(line) + ": beta must be p/q, got '" + tok + "'");
  try {
    const auto p = std::stoll(tok.substr(0, slash));
    const auto q = std::stoll(tok.substr(slash + 1));
    if (q <= 0) throw ParseError("");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad rational '" + tok + "'");
  }
}

std::string expect(std::istringstream& ls, const char* kw, int line) {
  std::string a, b;
  if (!(ls >> a) || a != kw || !(ls >> b))
    throw ParseError("line " + std::to_string(line) + ": expected '" + kw + " <value>'");
  return b;
}

PerturbationUnit load_table_unit(const std::string& path, double delta) {
  auto pts = read_samples_file(path);
  if (pts.size() < 2) throw ParseError("table " + path + ": need at least 2 rows");
  std::sort(pts.begin(), pts.end());
  auto f = [pts](double y) {
    if (y <= pts.front().first) return pts.front().second;
    if (y >= pts.back().first) return pts.back().second;
    auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(y, 0.0));
    const auto [x1, v1] = *it;
    const auto [x0, v0] = *(it - 1);
    const double t = (std::log(y) - std::log(x0)) / (std::log(x1) - std::log(x0));
    return v0 + t * (v1 - v0);
  };
  return PerturbationUnit::tabulated(f, delta);
}

}  // namespace

PreparedSum SumFile::prepared() const {
  std::vector<Term> ts;
  for (const auto& t : terms) ts.push_back(t.term);
  return normalize(std::move(ts), domain);
}

SumFile parse_sumfile(std::istream& in) {
  SumFile out;
  bool have_domain = false;
  std::string line;
  int lineno = 0;
  std::vector<SumFileTerm> terms;
  while (std::getline(in, line)) {
    ++lineno;
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "domain") {
      const double N = parse_real(expect(ls, "N", lineno), lineno);
      const double up = parse_real(expect(ls, "upper", lineno), lineno);
      const std::string bal = expect(ls, "balanced", lineno);
      if (bal != "0" && bal != "1")
        throw ParseError("line " + std::to_string(lineno) + ": balanced must be 0 or 1");
      try {
        out.domain = DomainSpec(N, up, bal == "1");
      } catch (const DomainError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
      have_domain = true;
    } else if (head == "term") {
      SumFileTerm t;
      std::string kw;
      if (!(ls >> kw) || kw != "coeff")
        throw ParseError("line " + std::to_string(lineno) + ": expected 'coeff'");
      std::string re, im;
      if (!(ls >> re >> im))
        throw ParseError("line " + std::to_string(lineno) + ": coeff needs re and im");
      t.term.coeff = Complex(parse_real(re, lineno), parse_real(im, lineno));
      const double alpha = parse_real(expect(ls, "alpha", lineno), lineno);
      const Rational beta = parse_rational(expect(ls, "beta", lineno), lineno);
      const std::string gs = expect(ls, "gamma", lineno);
      int gamma = 0;
      try {
        gamma = std::stoi(gs);
      } catch (const std::exception&) {
        gamma = -1;
      }
      if (gamma < 0)
        throw ParseError("line " + std::to_string(lineno) + ": gamma must be a nonnegative integer");
      try {
        t.term.exp = ExponentTriple(alpha, beta, gamma);
      } catch (const DomainError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
      std::string ukw, ukind;
      if (!(ls >> ukw) || ukw != "unit" || !(ls >> ukind))
        throw ParseError("line " + std::to_string(lineno) + ": expected 'unit <kind>'");
      if (ukind == "identity") {
        t.term.unit = PerturbationUnit::identity();
      } else if (ukind == "tail") {
        std::string spec;
        if (!(ls >> spec))
          throw ParseError("line " + std::to_string(lineno) + ": tail needs k:a pairs");
        std::vector<std::pair<int, double>> coeffs;
        std::istringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": tail entry '" + item +
                             "' must be k:a");
          try {
            coeffs.emplace_back(std::stoi(item.substr(0, colon)),
                                parse_real(item.substr(colon + 1), lineno));
          } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad tail entry '" + item + "'");
          }
        }
        try {
          t.term.unit = PerturbationUnit::rational_tail(std::move(coeffs));
        } catch (const DomainError& e) {
          throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
      } else if (ukind == "table") {
        std::string path;
        if (!(ls >> path))
          throw ParseError("line " + std::to_string(lineno) + ": table needs a path");
        const double delta = parse_real(expect(ls, "delta", lineno), lineno);
        try {
          t.term.unit = load_table_unit(path, delta);
        } catch (const DomainError& e) {
          throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const DataError& e) {
          throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        t.table_path = path;
      } else {
        throw ParseError("line " + std::to_string(lineno) + ": unknown unit kind '" + ukind + "'");
      }
      std::string extra;
      if (ls >> extra)
        throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
      terms.push_back(std::move(t));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + head + "'");
    }
  }
  if (!have_domain) throw ParseError("missing 'domain' line");
  out.terms = std::move(terms);
  return out;
}

SumFile parse_sumfile_string(const std::string& text) {
  std::istringstream in(text);
  return parse_sumfile(in);
}

SumFile parse_sumfile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_sumfile(in);
}

std::string serialize(const SumFile& f) {
  std::ostringstream out;
  out << "domain N " << fmt(f.domain.lower) << " upper " << fmt(f.domain.upper)
      << " balanced " << (f.domain.balanced ? 1 : 0) << "\n";
  for (const auto& t : f.terms) {
    out << "term coeff " << fmt(t.term.coeff.real()) << " " << fmt(t.term.coeff.imag())
        << " alpha " << fmt(t.term.exp.alpha) << " beta " << t.term.exp.beta.numerator()
        << "/" << t.term.exp.beta.denominator() << " gamma " << t.term.exp.gamma
        << " unit ";
    switch (t.term.unit.kind) {
      case UnitKind::Identity:
        out << "identity";
        break;
      case UnitKind::RationalTail: {
        out << "tail ";
        bool first = true;
        for (const auto& [k, a] : t.term.unit.tail) {
          if (!first) out << ",";
          out << k << ":" << fmt(a);
          first = false;
        }
        break;
      }
      case UnitKind::Tabulated:
        out << "table " << t.table_path << " delta " << fmt(t.term.unit.delta_decl);
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace powlog
