#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace okkit {

using BigInt = mpz_class;
using Rational = mpq_class;  // always canonical: reduced, positive denominator
using RationalVector = std::vector<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace okkit
