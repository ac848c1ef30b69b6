#include "bidegree.hpp"

#include "error.hpp"

namespace okkit::algebra {

BiDegree operator+(const BiDegree& a, const BiDegree& b) { return {a.level + b.level, add(a.value, b.value)}; }

Ordering compare_lex(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "value length mismatch in comparison");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return Ordering::Less;
    if (a[i] > b[i]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

Ordering compare_composite(const BiDegree& a, const BiDegree& b) {
  if (a.value.size() != b.value.size()) throw Error(ErrorCode::Dimension, "value length mismatch in comparison");
  if (a.level > b.level) return Ordering::Less;
  if (a.level < b.level) return Ordering::Greater;
  return compare_lex(a.value, b.value);
}

std::string to_string(const BiDegree& d) { return "(" + std::to_string(d.level) + "," + to_string(d.value) + ")"; }

}  // namespace okkit::algebra
