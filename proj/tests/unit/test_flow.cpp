#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "catalog.hpp"
#include "error.hpp"
#include "flow.hpp"

using namespace okkit;
using namespace okkit::flow;

namespace {

struct Fixture {
  catalog::CatalogEntry entry;
  FamilyModel model;

  explicit Fixture(const std::string& name)
      : entry(catalog::load_example(name)),
        model(entry.datum, entry.family, embedding::enumerate_vd_basis(*entry.datum, entry.family)) {}

  std::vector<Complex> sample(std::mt19937_64& rng) const {
    return entry.sampler.sample(rng, entry.datum->ring()->size());
  }
};

ChartPoint shifted(ChartPoint p, const CVector& dir, double h) {
  p.w += h * dir.head(p.w.size());
  p.t += h * dir(dir.size() - 1);
  return p;
}

}  // namespace

TEST_CASE("configuration is validated") {
  FlowConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.delta = 0.6;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = FlowConfig{};
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = FlowConfig{};
  cfg.rtol = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("tangent frames") {
  std::mt19937_64 rng(2);
  Fixture p1("p1");
  auto pt = p1.model.embed(p1.sample(rng), 0.5);
  auto f = tangent_frame(p1.model, pt);
  CHECK(f.real_frame.cols() == 4);

  Fixture ell("elliptic");
  for (int i = 0; i < 10; ++i) {
    auto q = retract(ell.model, ell.model.embed(ell.sample(rng), 0.5), FlowConfig{});
    auto fr = tangent_frame(ell.model, q);
    REQUIRE(fr.real_frame.cols() == 4);
    // Orthonormal for the real part of the metric.
    Eigen::MatrixXd gram = (fr.real_frame.adjoint() * ell.model.metric(q) * fr.real_frame).real();
    CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    // Columns are tangent: first-order change of the constraints vanishes.
    for (int a = 0; a < 4; ++a) {
      CVector dir = fr.real_frame.col(a);
      CVector dg = (ell.model.constraints(shifted(q, dir, 1e-6)) - ell.model.constraints(shifted(q, dir, -1e-6))) / 2e-6;
      CHECK(dg.norm() < 1e-6);
    }
  }
  // Cusp of the special fiber, in the chart of the third coordinate.
  ChartPoint cusp{2, CVector::Zero(2), 0.0};
  CHECK_THROWS_AS(tangent_frame(ell.model, cusp), Error);
  try {
    tangent_frame(ell.model, cusp);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPoint);
  }
}

TEST_CASE("gradient Hamiltonian field") {
  std::mt19937_64 rng(4);
  Fixture p1("p1");
  auto v = gradient_hamiltonian(p1.model, p1.model.embed(p1.sample(rng), 0.5));
  CHECK(std::abs(v(0)) < 1e-15);
  CHECK(std::abs(v(1) - Complex(-1)) < 1e-15);

  for (const char* name : {"elliptic", "p1xp1"}) {
    Fixture fx(name);
    for (int i = 0; i < 10; ++i) {
      auto q = retract(fx.model, fx.model.embed(fx.sample(rng), 0.5), FlowConfig{});
      auto V = gradient_hamiltonian(fx.model, q);
      const auto N = V.size();
      CHECK(std::abs(V(N - 1).real() + 1) < 1e-8);
      // Re t along V by finite differences.
      double h = 1e-4;
      double d = (shifted(q, V, h).t.real() - q.t.real()) / h;
      CHECK(d == doctest::Approx(-1).epsilon(1e-8));
      // Projected gradient against central differences of Re(t) along the frame.
      auto fr = tangent_frame(fx.model, q);
      // P e_t = -V |P e_t|^2 with |P e_t|^2 the squared t-row of the frame.
      CVector P = -V * fr.complex_frame.bottomRows(1).squaredNorm();
      auto H = fx.model.metric(q);
      for (Eigen::Index a = 0; a < fr.real_frame.cols(); ++a) {
        CVector e = fr.real_frame.col(a);
        double fd = (shifted(q, e, 1e-6).t.real() - shifted(q, e, -1e-6).t.real()) / 2e-6;
        double g = (e.adjoint() * H * P)(0).real();
        CHECK(std::abs(fd - g) < 1e-6);
      }
    }
  }
}

TEST_CASE("trivial family only moves t") {
  std::mt19937_64 rng(8);
  Fixture p1("p1");
  FlowConfig cfg;
  auto start = p1.model.embed(p1.sample(rng), cfg.epsilon);
  auto r = flow_to(p1.model, start, cfg, {cfg.delta});
  REQUIRE(r.ok);
  CHECK((r.terminals[0].w - start.w).norm() < 1e-10);
  CHECK(r.terminals[0].t.real() == doctest::Approx(cfg.delta).epsilon(1e-12));
}

TEST_CASE("elliptic trajectories") {
  std::mt19937_64 rng(9);
  Fixture ell("elliptic");
  FlowConfig cfg;
  for (int i = 0; i < 20; ++i) {
    auto r = integrable_system_eval(ell.model, ell.sample(rng), cfg);
    REQUIRE(r.ok);
    CHECK(r.max_im_pi < 1e-8);
    CHECK(r.max_lin_err < 1e-6);
    CHECK(r.max_normalization_error < 1e-8);
    CHECK(r.max_residual < cfg.retraction_tol);
    CHECK(ell.model.initial_residual(r.terminals[0]) < 1e-4);
    CHECK(r.terminals[0].t.real() == doctest::Approx(cfg.delta).epsilon(1e-9));
    CHECK(r.F[0] > -1e-2);
    CHECK(r.F[0] < 3 + 1e-2);
    CHECK(r.samples.front().s == 0);
    CHECK(r.samples.size() == static_cast<std::size_t>(r.steps) + 1);
  }
}

TEST_CASE("runs are deterministic and replayable") {
  std::mt19937_64 rng(10);
  Fixture ell("elliptic");
  FlowConfig cfg;
  auto x = ell.sample(rng);
  auto a = integrable_system_eval(ell.model, x, cfg);
  auto b = integrable_system_eval(ell.model, x, cfg);
  REQUIRE(a.ok);
  CHECK(a.F == b.F);
  CHECK(a.plan.size() == b.plan.size());
  auto c = flow_to(ell.model, a.start, cfg, {cfg.delta, cfg.delta / 2}, &a.plan);
  REQUIRE(c.ok);
  CHECK(c.terminals[1].w == a.terminals[1].w);
}

TEST_CASE("toric entry reproduces the moment map") {
  std::mt19937_64 rng(12);
  Fixture p1("p1");
  FlowConfig cfg;
  for (int i = 0; i < 20; ++i) {
    auto x = p1.sample(rng);
    auto r = integrable_system_eval(p1.model, x, cfg);
    REQUIRE(r.ok);
    auto direct = embedding::toric_moment(embedding::embed_point(x, *p1.entry.datum, p1.model.basis(), 1.0).z,
                                          p1.model.basis());
    CHECK(std::abs(r.F[0] - direct[0]) < 1e-6);
  }
  // Torus-fixed point maps to a vertex.
  auto r = integrable_system_eval(p1.model, {Complex(0)}, cfg);
  REQUIRE(r.ok);
  CHECK(std::abs(r.F[0]) < 1e-12);
}

TEST_CASE("Poisson brackets") {
  std::mt19937_64 rng(13);
  Fixture fx("p1xp1");
  FlowConfig cfg;
  for (int i = 0; i < 3; ++i) {
    auto B = poisson_matrix(fx.model, fx.sample(rng), cfg);
    CHECK(B(0, 0) == 0.0);
    CHECK(B(1, 1) == 0.0);
    CHECK(B(0, 1) + B(1, 0) == 0.0);
    CHECK(std::abs(B(0, 1)) < 1e-3);
  }
  CHECK_THROWS_AS(poisson_bracket(fx.model, 0, 2, fx.sample(rng), cfg), Error);
}

TEST_CASE("symplectic transport") {
  std::mt19937_64 rng(14);
  FlowConfig cfg;
  Fixture p1("p1");
  Eigen::VectorXd u(2), v(2), zero = Eigen::VectorXd::Zero(2);
  u << 1, 0;
  v << 0.3, 0.8;
  CHECK(symplectic_residual(p1.model, p1.sample(rng), u, v, cfg) < 1e-8);
  Fixture ell("elliptic");
  CHECK(symplectic_residual(ell.model, ell.sample(rng), zero, v, cfg) == 0.0);
  for (int i = 0; i < 5; ++i) CHECK(symplectic_residual(ell.model, ell.sample(rng), u, v, cfg) < 1e-4);
  CHECK_THROWS_AS(symplectic_residual(ell.model, ell.sample(rng), Eigen::VectorXd::Zero(3), v, cfg), Error);
}

TEST_CASE("batches keep input order") {
  std::mt19937_64 rng(15);
  Fixture ell("elliptic");
  FlowConfig cfg;
  std::vector<std::vector<Complex>> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(ell.sample(rng));
  setenv("OKKIT_THREADS", "3", 1);
  auto batch = evaluate_batch(ell.model, pts, cfg);
  unsetenv("OKKIT_THREADS");
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(batch[i].F == integrable_system_eval(ell.model, pts[i], cfg).F);
}

TEST_CASE("flow needs the level-one embedding") {
  auto ring = algebra::make_ring({"u"});
  auto val = std::make_shared<algebra::MonomialValuation>(ring);
  auto datum = std::make_shared<okounkov::SagbiDatum>(
      val,
      std::vector<okounkov::Generator>{{"x11", 1, algebra::Polynomial::parse(ring, "1"), {0}},
                                       {"x21", 2, algebra::Polynomial::parse(ring, "u"), {1}}},
      0);
  auto rels = degeneration::RelationSet::build(*datum, {});
  auto fam = degeneration::build_family(rels, degeneration::build_projection(rels));
  CHECK_THROWS_AS(FamilyModel(datum, fam, embedding::enumerate_vd_basis(*datum, fam)), Error);
}
