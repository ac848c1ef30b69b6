#include "groebner.hpp"

#include <algorithm>

#include "error.hpp"

namespace okkit::algebra {

long TermOrder::weight(const Exponent& e) const {
  long w = 0;
  for (std::size_t i = 0; i < weights_.size() && i < e.size(); ++i) w += weights_[i] * e[i];
  return w;
}

bool TermOrder::less(const Exponent& a, const Exponent& b) const {
  long wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  return a < b;
}

LeadingTerm leading_term(const Polynomial& f, const TermOrder& order) {
  if (f.is_zero()) throw Error(ErrorCode::UndefinedValuation, "leading term of zero polynomial");
  auto best = f.terms().begin();
  for (auto it = f.terms().begin(); it != f.terms().end(); ++it)
    if (order.less(best->first, it->first)) best = it;
  return {best->first, best->second};
}

namespace {

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const TermOrder& order) {
  std::vector<LeadingTerm> leads;
  leads.reserve(basis.size());
  for (const auto& g : basis) leads.push_back(leading_term(g, order));

  Polynomial p = f;
  Polynomial remainder(f.ring());
  while (!p.is_zero()) {
    LeadingTerm lt = leading_term(p, order);
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!divides(leads[i].exponent, lt.exponent)) continue;
      Polynomial m = Polynomial::monomial(f.ring(), sub(lt.exponent, leads[i].exponent),
                                          lt.coefficient / leads[i].coefficient);
      p -= m * basis[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.add_term(lt.exponent, lt.coefficient);
      p.add_term(lt.exponent, -lt.coefficient);
    }
  }
  return remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
  LeadingTerm lf = leading_term(f, order), lg = leading_term(g, order);
  Exponent l = lcm(lf.exponent, lg.exponent);
  Polynomial a = Polynomial::monomial(f.ring(), sub(l, lf.exponent), Rational(1) / lf.coefficient);
  Polynomial b = Polynomial::monomial(f.ring(), sub(l, lg.exponent), Rational(1) / lg.coefficient);
  return a * f - b * g;
}

GroebnerResult buchberger(const std::vector<Polynomial>& input, const TermOrder& order) {
  GroebnerResult result;
  for (const auto& g : input)
    if (!g.is_zero()) result.basis.push_back(g);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < result.basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  const std::size_t original = result.basis.size();

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.erase(pairs.begin());
    const auto& fi = result.basis[i];
    const auto& fj = result.basis[j];
    if (coprime(leading_term(fi, order).exponent, leading_term(fj, order).exponent)) continue;
    Polynomial r = normal_form(s_polynomial(fi, fj, order), result.basis, order);
    if (r.is_zero()) continue;
    if (i < original && j < original) result.input_was_groebner = false;
    result.basis.push_back(r);
    std::size_t k = result.basis.size() - 1;
    for (std::size_t m = 0; m < k; ++m) pairs.emplace_back(m, k);
  }
  return result;
}

}  // namespace okkit::algebra
