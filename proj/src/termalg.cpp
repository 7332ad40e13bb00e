#include "powlog/termalg.hpp"

#include <algorithm>
#include <cmath>

namespace powlog {

Complex eval_term(const Term& t, double y, const DomainSpec& domain) {
  const ExponentTriple& e = t.exp;
  if (e.beta > 0) {
    if (!std::isfinite(domain.upper))
      throw FormError("fiberwise boundedness violated: beta > 0 term requires a finite upper boundary");
    // Boundary variable z = a/y > 1; the term is c*unit(z)*z^(-alpha i - beta)*(log z)^gamma.
    const double z = domain.upper / y;
    const double lz = std::log(z);
    const double mag = t.unit.eval(z) * std::pow(z, -to_double(e.beta)) * std::pow(lz, e.gamma);
    const Complex phase = std::exp(Complex(0.0, -e.alpha * lz));
    return t.coeff * mag * phase;
  }
  const double ly = std::log(y);
  const double mag = t.unit.eval(y) * std::pow(y, to_double(e.beta)) * std::pow(ly, e.gamma);
  const Complex phase = std::exp(Complex(0.0, e.alpha * ly));
  return t.coeff * mag * phase;
}

PreparedSum::PreparedSum(std::vector<Term> terms, DomainSpec domain)
    : terms_(std::move(terms)), domain_(domain) {
  domain_.validate();
  if (terms_.empty()) throw DomainError("PreparedSum: term list must be nonempty");
  for (const auto& t : terms_) {
    if (t.exp.beta > 0 && !std::isfinite(domain_.upper))
      throw FormError("PreparedSum: fiberwise boundedness violated (beta > 0 term, no upper boundary)");
  }
}

Complex PreparedSum::eval(double y) const {
  if (!domain_.contains(y) || !(y > 1.0))
    throw DomainError("eval: point outside the open domain");
  Complex acc{0.0, 0.0};
  for (const auto& t : terms_) acc += eval_term(t, y, domain_);
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
    throw OverflowError("eval: result magnitude exceeds float range");
  return acc;
}

bool PreparedSum::all_beta_negative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.exp.beta < 0; });
}

bool PreparedSum::all_alpha_zero() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.exp.alpha == 0.0; });
}

int PreparedSum::max_gamma() const {
  int g = 0;
  for (const auto& t : terms_) g = std::max(g, t.exp.gamma);
  return g;
}

PreparedSum normalize(std::vector<Term> terms, DomainSpec domain) {
  if (terms.empty()) throw DomainError("normalize: empty term list");
  std::vector<Term> merged;
  for (const auto& t : terms) {
    bool found = false;
    for (auto& m : merged) {
      if (m.exp == t.exp && m.unit == t.unit) {
        m.coeff += t.coeff;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  std::vector<Term> kept;
  for (const auto& m : merged)
    if (m.coeff != Complex(0.0, 0.0)) kept.push_back(m);
  if (kept.empty()) {
    Term zero = merged.front();
    zero.coeff = Complex(0.0, 0.0);
    kept.push_back(zero);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) {
    return a.exp.canonical_before(b.exp);
  });
  return PreparedSum(std::move(kept), domain);
}

}  // namespace powlog
