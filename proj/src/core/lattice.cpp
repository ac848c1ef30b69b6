#include "lattice.hpp"

#include <functional>

#include "error.hpp"

namespace okkit::geometry {

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt maximal_minor_gcd(const std::vector<std::vector<long>>& vectors, std::size_t d) {
  for (const auto& v : vectors)
    if (v.size() != d) throw Error(ErrorCode::Dimension, "lattice vector length mismatch");
  BigInt g = 0;
  if (vectors.size() < d) return g;
  std::vector<std::size_t> pick(d);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      std::vector<std::vector<BigInt>> m(d, std::vector<BigInt>(d));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m[r][c] = vectors[pick[c]][r];
      g = gcd(g, determinant(std::move(m)));
      return g == 1;
    }
    for (std::size_t i = start; i < vectors.size(); ++i) {
      pick[depth] = i;
      if (rec(i + 1, depth + 1)) return true;
    }
    return false;
  };
  rec(0, 0);
  return g;
}

}  // namespace okkit::geometry
