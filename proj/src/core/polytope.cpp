#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "error.hpp"

namespace okkit::geometry {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// In-place reduced row echelon form with pivots among the first `cols`
// columns; trailing columns are carried along.
std::vector<std::size_t> rref(std::vector<RationalVector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

void add_unique(std::vector<Halfspace>& out, Halfspace h) {
  if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
}

// Facets of the hull of points that affinely span R^d (d <= 3).
std::vector<Halfspace> full_facets(const std::vector<Point>& pts, std::size_t d) {
  std::vector<Halfspace> out;
  auto consider = [&](RationalVector normal, const Point& on) {
    if (is_zero(normal)) return;
    normal = primitive(normal);
    Rational b = dot(normal, on);
    bool all_le = true, all_ge = true;
    for (const auto& p : pts) {
      Rational s = dot(normal, p);
      if (s > b) all_le = false;
      if (s < b) all_ge = false;
    }
    if (all_le) add_unique(out, {normal, b});
    if (all_ge) {
      for (auto& x : normal) x = -x;
      add_unique(out, {normal, -b});
    }
  };
  const std::size_t m = pts.size();
  if (d == 1) {
    for (const auto& p : pts) consider({Rational(1)}, p);
  } else if (d == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        consider({pts[j][1] - pts[i][1], pts[i][0] - pts[j][0]}, pts[i]);
  } else if (d == 3) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          RationalVector u(3), v(3);
          for (int c = 0; c < 3; ++c) {
            u[c] = pts[j][c] - pts[i][c];
            v[c] = pts[k][c] - pts[i][c];
          }
          consider({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]}, pts[i]);
        }
  }
  return out;
}

Rational full_volume(const std::vector<Point>& verts, const std::vector<Halfspace>& facets, std::size_t n) {
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(verts.begin(), verts.end(),
                                        [](const Point& a, const Point& b) { return a[0] < b[0]; });
    return (*hi)[0] - (*lo)[0];
  }
  Point c(n, Rational(0));
  for (const auto& v : verts)
    for (std::size_t i = 0; i < n; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(verts.size());

  Rational total = 0;
  for (const auto& f : facets) {
    std::size_t j = 0;
    while (f.normal[j] == 0) ++j;
    std::vector<Point> projected;
    for (const auto& v : verts) {
      if (dot(f.normal, v) != f.offset) continue;
      Point q;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) q.push_back(v[i]);
      projected.push_back(std::move(q));
    }
    Polytope face = Polytope::hull(std::move(projected), n - 1);
    total += (f.offset - dot(f.normal, c)) * face.volume() / abs(f.normal[j]);
  }
  return total / static_cast<long>(n);
}

}  // namespace

RationalVector primitive(const RationalVector& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, BigInt(x.get_den()));
  BigInt g = 0;
  std::vector<BigInt> ints;
  for (const auto& x : v) {
    BigInt y = BigInt(x.get_num()) * (l / x.get_den());
    ints.push_back(y);
    g = gcd(g, y);
  }
  if (g == 0) throw Error(ErrorCode::Dimension, "primitive vector of zero");
  RationalVector r;
  for (const auto& y : ints) r.emplace_back(Rational(BigInt(y / g)));
  return r;
}

std::size_t rank(std::vector<RationalVector> rows, std::size_t cols) { return rref(rows, cols).size(); }

std::vector<RationalVector> nullspace(std::vector<RationalVector> rows, std::size_t cols) {
  auto pivots = rref(rows, cols);
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::optional<Point> solve(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a, n);
  if (pivots.size() != n) return std::nullopt;
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

Polytope Polytope::empty(std::size_t ambient_dim) {
  Polytope p;
  p.ambient_dim_ = ambient_dim;
  return p;
}

Polytope Polytope::hull(std::vector<Point> points, std::size_t n) {
  if (n == 0 || n > kMaxDimension)
    throw Error(ErrorCode::Unsupported, "exact polytopes are limited to dimension 1..3, got " + std::to_string(n));
  for (const auto& p : points)
    if (p.size() != n) throw Error(ErrorCode::Dimension, "point dimension mismatch in hull");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Polytope poly = empty(n);
  if (points.empty()) return poly;

  const Point& p0 = points[0];
  std::vector<RationalVector> dirs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector d(n);
    for (std::size_t c = 0; c < n; ++c) d[c] = points[i][c] - p0[c];
    dirs.push_back(std::move(d));
  }
  auto reduced = dirs;
  auto pivots = rref(reduced, n);
  const std::size_t d = pivots.size();
  poly.affine_dim_ = static_cast<int>(d);

  for (const auto& a : nullspace(dirs, n)) {
    Rational b = dot(a, p0);
    RationalVector neg(a);
    for (auto& x : neg) x = -x;
    add_unique(poly.facets_, {a, b});
    add_unique(poly.facets_, {neg, -b});
  }

  if (d == 0) {
    poly.vertices_ = {p0};
  } else {
    std::vector<Point> projected;
    for (const auto& p : points) {
      Point q;
      for (auto c : pivots) q.push_back(p[c]);
      projected.push_back(std::move(q));
    }
    auto low = full_facets(projected, d);
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<RationalVector> tight;
      for (const auto& f : low)
        if (dot(f.normal, projected[i]) == f.offset) tight.push_back(f.normal);
      if (rank(tight, d) == d) poly.vertices_.push_back(points[i]);
    }
    for (const auto& f : low) {
      RationalVector a(n, Rational(0));
      for (std::size_t j = 0; j < d; ++j) a[pivots[j]] = f.normal[j];
      add_unique(poly.facets_, {a, f.offset});
    }
  }
  std::sort(poly.facets_.begin(), poly.facets_.end(), [](const Halfspace& a, const Halfspace& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });
  if (d == n) poly.volume_ = full_volume(poly.vertices_, poly.facets_, n);
  return poly;
}

Polytope Polytope::from_halfspaces(const std::vector<Halfspace>& halfspaces, std::size_t n) {
  if (n == 0 || n > kMaxDimension)
    throw Error(ErrorCode::Unsupported, "exact polytopes are limited to dimension 1..3, got " + std::to_string(n));
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != n) throw Error(ErrorCode::Dimension, "halfspace dimension mismatch");
    if (is_zero(h.normal)) {
      if (h.offset < 0) return empty(n);
      continue;
    }
    hs.push_back(h);
  }
  std::vector<Point> candidates;
  std::vector<std::size_t> idx(n);
  // Enumerate n-subsets in lexicographic order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<RationalVector> a;
      RationalVector b;
      for (auto i : idx) {
        a.push_back(hs[i].normal);
        b.push_back(hs[i].offset);
      }
      auto x = solve(a, b);
      if (!x) return;
      for (const auto& h : hs)
        if (dot(h.normal, *x) > h.offset) return;
      candidates.push_back(std::move(*x));
      return;
    }
    for (std::size_t i = start; i < hs.size(); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return hull(std::move(candidates), n);
}

bool Polytope::contains(const Point& x) const {
  if (is_empty()) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

double Polytope::violation(const std::vector<double>& x) const {
  double worst = -INFINITY;
  for (const auto& f : facets_) {
    double s = -to_double(f.offset);
    for (std::size_t i = 0; i < x.size(); ++i) s += to_double(f.normal[i]) * x[i];
    worst = std::max(worst, s);
  }
  return worst;
}

long Polytope::count_lattice_points(long k) const {
  if (is_empty()) return 0;
  const std::size_t n = ambient_dim_;
  std::vector<long> lo(n), hi(n);
  for (std::size_t c = 0; c < n; ++c) {
    Rational mn = vertices_[0][c], mx = vertices_[0][c];
    for (const auto& v : vertices_) {
      mn = std::min(mn, Rational(v[c]));
      mx = std::max(mx, Rational(v[c]));
    }
    mpz_class f, cl;
    Rational a = mn * k, b = mx * k;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_cdiv_q(cl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    lo[c] = f.get_si();
    hi[c] = cl.get_si();
  }
  long count = 0;
  Point x(n);
  std::vector<long> cur(lo);
  for (;;) {
    for (std::size_t c = 0; c < n; ++c) x[c] = cur[c];
    bool inside = true;
    for (const auto& f : facets_)
      if (dot(f.normal, x) > f.offset * k) {
        inside = false;
        break;
      }
    if (inside) ++count;
    std::size_t c = 0;
    while (c < n && ++cur[c] > hi[c]) cur[c] = lo[c], ++c;
    if (c == n) break;
  }
  return count;
}

}  // namespace okkit::geometry
