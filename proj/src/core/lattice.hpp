#pragma once

#include <vector>

#include "rational.hpp"

namespace okkit::geometry {

BigInt determinant(std::vector<std::vector<BigInt>> m);

// gcd of all d x d minors of the matrix with the given vectors as columns;
// 1 iff the vectors generate Z^d as a group, 0 iff they do not span Q^d.
BigInt maximal_minor_gcd(const std::vector<std::vector<long>>& vectors, std::size_t d);

}  // namespace okkit::geometry
