#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "catalog.hpp"
#include "error.hpp"
#include "okounkov.hpp"

using namespace okkit;
using namespace okkit::okounkov;
using algebra::Exponent;
using algebra::Polynomial;

namespace {

// Brute force: every multiset of generators whose levels sum to k.
std::set<Exponent> enumerate_level(const ValueSemigroup& s, long k) {
  std::set<Exponent> out;
  std::function<void(std::size_t, long, Exponent)> rec = [&](std::size_t j, long left, Exponent acc) {
    if (left == 0) {
      out.insert(acc);
      return;
    }
    if (j == s.generators.size()) return;
    rec(j + 1, left, acc);
    const auto& g = s.generators[j];
    if (g.level <= left) rec(j, left - g.level, algebra::add(acc, g.value));
  };
  rec(0, k, Exponent(s.rank, 0));
  return out;
}

// Random level-homogeneous polynomial in the generator symbols.
Polynomial random_combination(const SagbiDatum& d, long level, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), pick(0, static_cast<int>(d.generators().size()) - 1), terms(1, 4);
  Polynomial p(d.symbol_ring());
  int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Exponent e(d.generators().size(), 0);
    long left = level;
    int guard = 0;
    while (left > 0 && guard++ < 100) {
      int j = pick(rng);
      if (d.generators()[j].level <= left) {
        ++e[j];
        left -= d.generators()[j].level;
      }
    }
    if (left == 0) p.add_term(e, coef(rng));
  }
  return p;
}

ValueSemigroup elliptic_semigroup() { return {1, {{1, {0}}, {1, {1}}, {1, {3}}}}; }

}  // namespace

TEST_CASE("extended values on the elliptic entry") {
  auto e = catalog::load_example("elliptic");
  const auto& d = *e.datum;
  auto ring = d.ring();
  CHECK(extended_value(Polynomial::parse(ring, "Y"), 1, d) == algebra::BiDegree{1, {0}});
  CHECK(extended_value(Polynomial::parse(ring, "X"), 1, d) == algebra::BiDegree{1, {1}});
  CHECK(extended_value(Polynomial::parse(ring, "X*Z"), 2, d) == algebra::BiDegree{2, {4}});
  CHECK_THROWS_AS(extended_value(Polynomial::parse(ring, "Y^2*Z - X^3 - Z^3"), 3, d), Error);
}

TEST_CASE("subduction examples") {
  auto p1 = catalog::load_example("p1");
  const auto& d = *p1.datum;
  auto sub = subduct(Polynomial::parse(d.ring(), "1 + 2*u + u^2"), 2, d);
  CHECK(sub.expression.to_string() == "x11^2 + 2*x11*x12 + x12^2");
  CHECK(sub.chain.size() == 3);
  auto single = subduct(Polynomial::parse(d.ring(), "u"), 1, d);
  CHECK(single.expression.to_string() == "x12");
  CHECK(single.chain.size() == 1);
  CHECK(subduct(Polynomial::parse(d.ring(), "5*u"), 1, d).expression.to_string() == "5*x12");
  // u^3 has level-1 value 3, outside {0, 1}.
  CHECK_THROWS_AS(subduct(Polynomial::parse(d.ring(), "u^3"), 1, d), Error);
}

TEST_CASE("subduction soundness on random combinations") {
  for (const auto& info : catalog::list_examples()) {
    auto e = catalog::load_example(info.name);
    const auto& d = *e.datum;
    const auto& v = *d.valuation();
    std::mt19937 rng(101);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      long level = 1 + trial % 4;
      auto combo = random_combination(d, level, rng);
      auto f = d.substitute(combo);
      if (v.is_zero(f)) continue;
      auto s = subduct(f, level, d);
      CHECK(v.is_zero(d.substitute(s.expression) - f));
      for (std::size_t i = 1; i < s.chain.size(); ++i)
        CHECK(algebra::advances(s.chain[i - 1].value, s.chain[i].value, v.orientation()));
      CHECK(static_cast<long>(s.chain.size()) <= semigroup_hilbert(e.semigroup, level));
      ++checked;
    }
    CHECK(checked > 40);
  }
}

TEST_CASE("Hilbert counts match brute force") {
  CHECK(semigroup_hilbert(elliptic_semigroup(), 0) == 1);
  CHECK(semigroup_hilbert(elliptic_semigroup(), 1) == 3);
  CHECK(semigroup_hilbert(elliptic_semigroup(), 2) == 6);
  for (long k = 1; k <= 10; ++k) CHECK(semigroup_hilbert(elliptic_semigroup(), k) == 3 * k);
  for (const auto& info : catalog::list_examples()) {
    auto e = catalog::load_example(info.name);
    auto sets = level_sets(e.semigroup, 6);
    for (long k = 0; k <= 6; ++k) CHECK(sets[k] == enumerate_level(e.semigroup, k));
  }
  ValueSemigroup mixed{1, {{1, {0}}, {2, {1}}, {3, {5}}}};
  auto sets = level_sets(mixed, 6);
  for (long k = 0; k <= 6; ++k) CHECK(sets[k] == enumerate_level(mixed, k));
}

TEST_CASE("bodies") {
  auto body = okounkov_body(elliptic_semigroup());
  CHECK(body.volume() == 3);
  CHECK(body.vertices() == std::vector<geometry::Point>{{Rational(0)}, {Rational(3)}});
  CHECK(okounkov_body({1, {{1, {0}}}}).volume() == 0);
  CHECK(okounkov_body({1, {{1, {0}}, {1, {1}}}}).volume() == 1);
  CHECK_THROWS_AS(okounkov_body({1, {}}), Error);

  for (const auto& info : catalog::list_examples()) {
    auto e = catalog::load_example(info.name);
    ValueSemigroup doubled{e.semigroup.rank, {}};
    for (const auto& g : e.semigroup.generators) doubled.generators.push_back({2 * g.level, algebra::scale(g.value, 2)});
    CHECK(okounkov_body(doubled) == e.body);
    for (const auto& v : e.body.vertices()) CHECK(e.body.contains(v));
    for (const auto& f : e.body.facets()) {
      std::size_t tight = 0;
      for (const auto& v : e.body.vertices()) tight += geometry::dot(f.normal, v) == f.offset;
      CHECK(tight >= static_cast<std::size_t>(std::max(1, e.body.affine_dim())));
    }
  }
}

TEST_CASE("degree check") {
  auto r = degree_check(elliptic_semigroup(), 10);
  CHECK(r.volume == 3);
  CHECK(r.fitted == 3);
  CHECK(r.relative_error == 0.0);
  auto pt = degree_check({1, {{1, {0}}}}, 5);
  CHECK(pt.volume == 0);
  CHECK(pt.fitted == 0);
  CHECK_THROWS_AS(degree_check(elliptic_semigroup(), 2), Error);
  auto gl3 = catalog::load_example("gl3-flag");
  CHECK_THROWS_AS(degree_check(gl3.semigroup, 4), Error);  // needs n + 2 = 5
  auto g = degree_check(gl3.semigroup, 5);
  CHECK(g.relative_error < 0.15);
  CHECK(g.fitted == 1);
}

TEST_CASE("slicing") {
  auto s = elliptic_semigroup();
  auto body = okounkov_body(s);
  auto same = slice(s, body, {{{0, 0}}});
  CHECK(same.body == body);
  CHECK(same.semigroup.generators == s.generators);

  auto cut = slice(s, body, {{{-1, 1}}});
  CHECK(cut.semigroup.generators == std::vector<algebra::BiDegree>{{1, {1}}});
  CHECK(cut.body.vertices() == std::vector<geometry::Point>{{Rational(1)}});
  CHECK(cut.complete);

  auto none = slice(s, body, {{{1, 0}, {0, 1}}});
  CHECK(none.body.is_empty());
  CHECK(none.semigroup.generators.empty());

  GradingHomomorphism lambda{{{-1, 1}}};
  for (const auto& g : cut.semigroup.generators) CHECK(lambda.apply(g) == std::vector<long>{0});

  // Two-dimensional slice of the square by u1 = u2.
  ValueSemigroup sq{2, {{1, {0, 0}}, {1, {1, 0}}, {1, {0, 1}}, {1, {1, 1}}}};
  auto diag = slice(sq, okounkov_body(sq), {{{0, 1, -1}}});
  CHECK(diag.semigroup.generators == std::vector<algebra::BiDegree>{{1, {0, 0}}, {1, {1, 1}}});
  CHECK(diag.body.affine_dim() == 1);
  for (const auto& v : diag.body.vertices()) CHECK(v[0] == v[1]);
}
