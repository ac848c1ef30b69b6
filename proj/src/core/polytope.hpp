#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace okkit::geometry {

using Point = RationalVector;

// normal . x <= offset, with a primitive integer normal.
struct Halfspace {
  RationalVector normal;
  Rational offset;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

// Exact rational polytope for ambient dimension <= 3. Lower-dimensional
// bodies carry their affine hull as pairs of opposite halfspaces.
class Polytope {
 public:
  static constexpr std::size_t kMaxDimension = 3;

  static Polytope empty(std::size_t ambient_dim);
  static Polytope hull(std::vector<Point> points, std::size_t ambient_dim);
  // Bounded intersection of halfspaces; empty if infeasible.
  static Polytope from_halfspaces(const std::vector<Halfspace>& halfspaces, std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  int affine_dim() const noexcept { return affine_dim_; }  // -1 when empty
  bool is_empty() const noexcept { return affine_dim_ < 0; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Halfspace>& facets() const noexcept { return facets_; }
  // Euclidean volume in the ambient dimension; zero unless full-dimensional.
  const Rational& volume() const noexcept { return volume_; }

  bool contains(const Point& x) const;
  // Largest violation normal.x - offset over facets, in doubles (<= 0 inside).
  double violation(const std::vector<double>& x) const;
  // Number of integer points in k * P.
  long count_lattice_points(long k) const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_ && a.facets_ == b.facets_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  Rational volume_ = 0;
};

// Solutions of the square system A x = b; nullopt if singular.
std::optional<Point> solve(std::vector<RationalVector> a, RationalVector b);

// Rank and a basis of the row-space nullspace of a rational matrix (rows x cols).
std::size_t rank(std::vector<RationalVector> rows, std::size_t cols);
std::vector<RationalVector> nullspace(std::vector<RationalVector> rows, std::size_t cols);

// Scale a nonzero rational vector to a primitive integer vector (same direction).
RationalVector primitive(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace okkit::geometry
