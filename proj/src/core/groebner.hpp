#pragma once

#include <vector>

#include "polynomial.hpp"

namespace okkit::algebra {

// Weighted order with lex tie-break; the leading term is the maximum.
// Empty weights gives pure lex.
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(std::vector<long> weights) : weights_(std::move(weights)) {}

  bool less(const Exponent& a, const Exponent& b) const;
  long weight(const Exponent& e) const;

 private:
  std::vector<long> weights_;
};

struct LeadingTerm {
  Exponent exponent;
  Rational coefficient;
};

LeadingTerm leading_term(const Polynomial& f, const TermOrder& order);

// Remainder of f on division by basis (full reduction).
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const TermOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order);

struct GroebnerResult {
  std::vector<Polynomial> basis;
  bool input_was_groebner = true;  // every S-pair of the input reduced to zero
};

// Plain Buchberger with the coprime-leading-monomial criterion. No size guard.
GroebnerResult buchberger(const std::vector<Polynomial>& input, const TermOrder& order);

}  // namespace okkit::algebra
