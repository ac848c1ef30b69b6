#include <doctest.h>

#include <random>

#include "bidegree.hpp"
#include "error.hpp"
#include "groebner.hpp"
#include "polynomial.hpp"
#include "valuation.hpp"

using namespace okkit;
using namespace okkit::algebra;

namespace {

Polynomial random_poly(const RingPtr& ring, std::mt19937& rng, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-9, 9), nterms(1, max_terms);
  Polynomial p(ring);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponent e(ring->size());
    for (auto& x : e) x = deg(rng) / static_cast<int>(ring->size());
    p.add_term(e, coef(rng));
  }
  return p;
}

// Coefficients of z(u) solving z = u^3 + z^3, by direct convolution.
std::vector<long> flex_series(int order) {
  std::vector<long> z(order, 0);
  for (int k = 0; k < order; ++k) {
    long c = k == 3 ? 1 : 0;
    for (int a = 0; a < k; ++a)
      for (int b = 0; a + b < k; ++b) {
        int d = k - a - b;
        if (d < k) c += z[a] * z[b] * z[d];
      }
    z[k] = c;
  }
  return z;
}

}  // namespace

TEST_CASE("composite order examples") {
  CHECK(compare_composite({2, {0}}, {1, {0}}) == Ordering::Less);
  CHECK(compare_composite({1, {0, 1}}, {1, {0, 2}}) == Ordering::Less);
  CHECK(compare_composite({3, {5, -2}}, {3, {5, -2}}) == Ordering::Equal);
  CHECK_THROWS_AS(compare_composite({1, {0}}, {1, {0, 1}}), Error);
}

TEST_CASE("composite order is total and translation invariant") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-50, 50), lvl(0, 50);
  for (int trial = 0; trial < 2000; ++trial) {
    auto draw = [&] { return BiDegree{lvl(rng), {v(rng), v(rng), v(rng)}}; };
    BiDegree a = draw(), b = draw(), c = draw();
    Ordering ab = compare_composite(a, b), ba = compare_composite(b, a);
    CHECK((ab == Ordering::Equal) == (ba == Ordering::Equal));
    CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
    CHECK(compare_composite(a + c, b + c) == ab);
  }
}

TEST_CASE("polynomial text round trip") {
  auto ring = make_ring({"x", "y"}, true);
  auto p = Polynomial::parse(ring, "3/2*x^2*y^-1 + 5");
  CHECK(p.to_string() == "3/2*x^2*y^-1 + 5");
  CHECK(Polynomial::parse(ring, p.to_string()) == p);
  CHECK(Polynomial::parse(ring, "-x + x").to_string() == "0");
  CHECK(Polynomial::parse(ring, " - y + 2 * x ").to_string() == "2*x - y");
  CHECK_THROWS_AS(Polynomial::parse(ring, "x +"), Error);
  CHECK_THROWS_AS(Polynomial::parse(ring, "z"), Error);
  CHECK_THROWS_AS(Polynomial::parse(make_ring({"x"}), "x^-1"), Error);

  std::mt19937 rng(3);
  auto r3 = make_ring({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(r3, rng, 12, 6);
    CHECK(Polynomial::parse(r3, f.to_string()) == f);
  }
}

TEST_CASE("complex polynomial text round trip") {
  auto ring = make_ring({"x", "y"});
  auto p = ComplexPolynomial::parse(ring, "[1.5, -2]*x^2 + [0.0625, 0]");
  auto q = ComplexPolynomial::parse(ring, p.to_string());
  CHECK(q.to_string() == p.to_string());
  Complex pt[] = {Complex(2, 0), Complex(0, 0)};
  CHECK(std::abs(p.evaluate(pt) - Complex(6.0625, -8)) < 1e-15);
}

TEST_CASE("exact arithmetic") {
  std::mt19937 rng(5);
  auto ring = make_ring({"a", "b", "c", "d"});
  for (int i = 0; i < 300; ++i) {
    auto f = random_poly(ring, rng, 16, 5), g = random_poly(ring, rng, 16, 5);
    CHECK((f + g) - g == f);
    CHECK((f * g) == (g * f));
  }
  auto x = Polynomial::variable(ring, 0);
  CHECK((x + Polynomial::constant(ring, 1)).pow(3).size() == 4);
}

TEST_CASE("monomial valuation examples") {
  auto r1 = make_ring({"u"});
  CHECK(monomial_valuation(Polynomial::constant(make_ring({"u", "v"}), 7)) == Exponent{0, 0});
  CHECK(monomial_valuation(Polynomial::parse(r1, "u^2 + u^5")) == Exponent{2});
  CHECK(monomial_valuation(Polynomial::parse(r1, "u + u^2") * Polynomial::parse(r1, "u^3")) == Exponent{4});
  CHECK_THROWS_AS(monomial_valuation(Polynomial(r1)), Error);
  CHECK(monomial_valuation(Polynomial::parse(r1, "u^2 + u^5"), Orientation::Max) == Exponent{5});
}

TEST_CASE("monomial valuation axioms and one-dimensional leaves") {
  std::mt19937 rng(17);
  auto ring = make_ring({"a", "b", "c", "d"}, true);
  for (Orientation o : {Orientation::Min, Orientation::Max}) {
    MonomialValuation v(ring, o);
    for (int i = 0; i < 1000; ++i) {
      auto f = random_poly(ring, rng, 6 * 4, 4), g = random_poly(ring, rng, 6 * 4, 4);
      if (f.is_zero() || g.is_zero()) continue;
      CHECK(v.value(f * g) == add(v.value(f), v.value(g)));
      CHECK(v.value(f * Rational(-3, 7)) == v.value(f));
      auto s = f + g;
      if (!s.is_zero()) {
        auto vs = v.value(s), vf = v.value(f), vg = v.value(g);
        auto lo = advances(vf, vg, o) ? vf : vg;  // the less advanced of the two
        CHECK((vs == lo || advances(lo, vs, o)));
      }
      // Leaves: force equal values by multiplying g into f's value.
      auto h = g * Polynomial::monomial(ring, sub(v.value(f), v.value(g)), 1);
      Rational lambda = v.leading_coefficient(f) / v.leading_coefficient(h);
      auto r = f - h * lambda;
      CHECK((r.is_zero() || advances(v.value(f), v.value(r), o)));
    }
  }
}

TEST_CASE("series valuation") {
  auto ambient = make_ring({"X", "Y", "Z"});
  auto ctx = std::make_shared<SeriesContext>(ambient, "u", std::vector<std::string>{"u", "1", "u^3 + Z^3"});
  auto one = Polynomial::constant(ambient, 1);
  CHECK(series_valuation(Polynomial::parse(ambient, "X"), one, *ctx) == 1);
  CHECK(series_valuation(one, one, *ctx) == 0);
  CHECK(series_valuation(Polynomial::parse(ambient, "Z"), Polynomial::parse(ambient, "Y"), *ctx) == 3);
  CHECK(series_valuation(one, Polynomial::parse(ambient, "X^2"), *ctx) == -2);

  // Oracle: orders read off an independent convolution of z = u^3 + z^3.
  auto z = flex_series(40);
  int ord_z = 0;
  while (z[ord_z] == 0) ++ord_z;
  CHECK(ord_z == 3);
  auto coeffs = ctx->expand(Polynomial::parse(ambient, "Z"), 40);
  for (int k = 0; k < 40; ++k) CHECK(coeffs[k] == Rational(z[k]));

  // The cubic itself vanishes to every order: loud failure, never a number.
  auto cubic = Polynomial::parse(ambient, "Y^2*Z - X^3 - Z^3");
  CHECK_THROWS_WITH_AS(series_valuation(cubic, one, *ctx), doctest::Contains("vanishes"), Error);

  SeriesValuation v(ctx, {cubic});
  CHECK(v.value(Polynomial::parse(ambient, "X")) == Exponent{1});
  CHECK(v.is_zero(cubic * Polynomial::parse(ambient, "X + 2*Z")));
  CHECK_THROWS_AS(v.value(cubic), Error);

  std::mt19937 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto f = random_poly(ambient, rng, 9, 4), g = random_poly(ambient, rng, 9, 4);
    if (v.is_zero(f) || v.is_zero(g)) continue;
    CHECK(v.value(f * g)[0] == v.value(f)[0] + v.value(g)[0]);
  }
}

TEST_CASE("complex evaluation") {
  auto ring = make_ring({"x", "y"});
  Complex p1[] = {Complex(1, 0), Complex(0, 2)};
  CHECK(Polynomial::parse(ring, "x + y").evaluate(p1) == Complex(1, 2));
  Complex p2[] = {Complex(3, 0), Complex(0.3, -7)};
  CHECK(Polynomial::parse(ring, "x^2").evaluate(p2) == Complex(9, 0));
  Complex p3[] = {Complex(-1, 0), Complex(0, 0)};
  CHECK(std::abs(Polynomial::parse(ring, "x^3 + 1").evaluate(p3)) == 0.0);
  auto lr = make_ring({"x", "y"}, true);
  CHECK_THROWS_AS(Polynomial::parse(lr, "y^-1").evaluate(p3), Error);

  CompiledPolynomial c(ComplexPolynomial::from(Polynomial::parse(ring, "x^2*y - 3*y^3")));
  std::vector<Complex> grad;
  Complex pt[] = {Complex(1.5, 0.5), Complex(-0.25, 2)};
  Complex val = c.value_and_gradient(pt, grad);
  CHECK(std::abs(val - (pt[0] * pt[0] * pt[1] - 3.0 * pt[1] * pt[1] * pt[1])) < 1e-12);
  CHECK(std::abs(grad[0] - 2.0 * pt[0] * pt[1]) < 1e-12);
  CHECK(std::abs(grad[1] - (pt[0] * pt[0] - 9.0 * pt[1] * pt[1])) < 1e-12);
}

TEST_CASE("groebner helpers") {
  auto ring = make_ring({"x", "y"});
  auto f = Polynomial::parse(ring, "x^2 - y"), g = Polynomial::parse(ring, "x*y - 1");
  auto gb = buchberger({f, g}, TermOrder{});
  CHECK_FALSE(gb.input_was_groebner);
  for (const auto& a : gb.basis)
    for (const auto& b : gb.basis)
      if (!(a == b)) CHECK(normal_form(s_polynomial(a, b, TermOrder{}), gb.basis, TermOrder{}).is_zero());
  CHECK(normal_form(f * g, gb.basis, TermOrder{}).is_zero());
  auto single = buchberger({f}, TermOrder{});
  CHECK(single.basis.size() == 1);
  CHECK(single.input_was_groebner);
}
