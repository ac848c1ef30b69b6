#pragma once

#include <compare>
#include <string>

#include "polynomial.hpp"

namespace okkit::algebra {

enum class Ordering { Less, Equal, Greater };

// Element (m, u) of N x Z^n.
struct BiDegree {
  long level = 0;
  Exponent value;

  friend bool operator==(const BiDegree&, const BiDegree&) = default;
};

BiDegree operator+(const BiDegree& a, const BiDegree& b);

// (m,u) <= (m',u') iff m > m', or m == m' and u <=_lex u'.
Ordering compare_composite(const BiDegree& a, const BiDegree& b);

Ordering compare_lex(const Exponent& a, const Exponent& b);

std::string to_string(const BiDegree& d);

// Strict weak ordering by composite order, for use as a map key comparator.
struct CompositeLess {
  bool operator()(const BiDegree& a, const BiDegree& b) const {
    return compare_composite(a, b) == Ordering::Less;
  }
};

}  // namespace okkit::algebra
