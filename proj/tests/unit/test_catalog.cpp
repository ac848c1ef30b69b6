#include <doctest.h>

#include <json.hpp>

#include "catalog.hpp"
#include "error.hpp"

using namespace okkit;
using namespace okkit::catalog;

namespace {

// Weyl dimension formula for GL(3) highest weight (a, b, c).
long weyl_dimension(long a, long b, long c) { return (a - b + 1) * (b - c + 1) * (a - c + 2) / 2; }

}  // namespace

TEST_CASE("listing") {
  auto list = list_examples();
  REQUIRE(list.size() == 5);
  CHECK(list[0].name == "p1");
  for (const auto& info : list) {
    CHECK_FALSE(info.description.empty());
    CHECK_NOTHROW(load_example(info.name));
  }
  CHECK_THROWS_AS(load_example("nope"), Error);
}

TEST_CASE("entry contents") {
  auto p1 = load_example("p1");
  CHECK(p1.semigroup.generators == std::vector<algebra::BiDegree>{{1, {0}}, {1, {1}}});
  CHECK(p1.body.volume() == 1);
  auto ell = load_example("elliptic");
  CHECK(ell.semigroup.generators == std::vector<algebra::BiDegree>{{1, {0}}, {1, {1}}, {1, {3}}});
  CHECK(ell.body.volume() * factorial(1) == 3);
  auto demo = load_example("elliptic-quotient-demo");
  REQUIRE(demo.homomorphism.has_value());
  CHECK(demo.homomorphism->rows == std::vector<std::vector<long>>{{-1, 1}});
}

TEST_CASE("flag variety Ehrhart counts follow the Weyl dimension formula") {
  auto gl3 = load_example("gl3-flag");
  for (long k = 1; k <= 4; ++k) CHECK(gl3.body.count_lattice_points(k) == weyl_dimension(2 * k, k, 0));
  CHECK(gl3.body.count_lattice_points(1) == 8);
  CHECK(gl3.flow.extended);
}

TEST_CASE("corrupted entries are rejected with a diff") {
  auto src = nlohmann::json::parse(builtin_source("elliptic"));
  auto bad = src;
  bad["expected"]["vertices"] = {{"0"}, {"4"}};
  CHECK_THROWS_WITH_AS(load_entry(bad), doctest::Contains("vertices: expected {(0), (4)}, computed {(0), (3)}"), Error);

  bad = src;
  bad["generators"][2]["value"] = {2};
  CHECK_THROWS_WITH_AS(load_entry(bad), doctest::Contains("declares value"), Error);

  bad = src;
  bad["relations"] = {"x11^2*x13 - x12^3"};
  CHECK_THROWS_WITH_AS(load_entry(bad), doctest::Contains("does not vanish"), Error);

  bad = src;
  bad.erase("relations");
  CHECK_THROWS_WITH_AS(load_entry(bad), doctest::Contains("missing field 'relations'"), Error);

  bad = src;
  bad["colour"] = "red";
  CHECK_THROWS_WITH_AS(load_entry(bad), doctest::Contains("unknown field"), Error);
}

TEST_CASE("samplers stay on the curve") {
  auto ell = load_example("elliptic");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto x = ell.sampler.sample(rng, 3);
    auto cubic = algebra::Polynomial::parse(ell.datum->ring(), "Y^2*Z - X^3 - Z^3");
    CHECK(std::abs(cubic.evaluate(x)) < 1e-9 * (1 + std::norm(x[0]) * std::abs(x[0])));
  }
}
