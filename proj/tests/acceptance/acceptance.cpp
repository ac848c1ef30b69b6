// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "checks.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "okounkov.hpp"

using namespace okkit;
using algebra::Complex;
using algebra::Exponent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Default-run entries: everything the catalog does not mark extended.
std::vector<std::string> default_entries() {
  std::vector<std::string> out;
  for (const auto& info : catalog::list_examples())
    if (!catalog::load_example(info.name).flow.extended) out.push_back(info.name);
  return out;
}

flow::FlowConfig config_for(const catalog::CatalogEntry& e) {
  flow::FlowConfig cfg;
  cfg.epsilon = e.flow.epsilon;
  cfg.delta = e.flow.delta;
  return cfg;
}

flow::FamilyModel model_for(const catalog::CatalogEntry& e) {
  return flow::FamilyModel(e.datum, e.family, embedding::enumerate_vd_basis(*e.datum, e.family));
}

// Distinct values reachable by multisets of generators at level k.
long brute_force_hilbert(const okounkov::ValueSemigroup& s, long k) {
  std::set<Exponent> seen;
  std::function<void(std::size_t, long, Exponent)> rec = [&](std::size_t j, long left, Exponent acc) {
    if (left == 0) {
      seen.insert(acc);
      return;
    }
    if (j == s.generators.size()) return;
    rec(j + 1, left, acc);
    const auto& g = s.generators[j];
    if (g.level <= left) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g.value[i];
      rec(j, left - g.level, acc);
    }
  };
  rec(0, k, Exponent(s.rank, 0));
  return static_cast<long>(seen.size());
}

// Weyl dimension of the GL(3) module with highest weight (a, b, c).
long weyl_gl3(long a, long b, long c) {
  const long l[3] = {a, b, c};
  long num = 1, den = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      num *= l[i] - l[j] + j - i;
      den *= j - i;
    }
  return num / den;
}

Outcome criterion1() {
  auto e = catalog::load_example("elliptic");
  std::vector<algebra::BiDegree> want{{1, {0}}, {1, {1}}, {1, {3}}};
  std::vector<geometry::Point> segment{{Rational(0)}, {Rational(3)}};
  bool ok = e.semigroup.generators == want && e.body.vertices() == segment && e.body.volume() == 3;
  return {ok, "generators (1,0),(1,1),(1,3); body [" + to_string(e.body.vertices().front()[0]) + "," +
                  to_string(e.body.vertices().back()[0]) + "]"};
}

Outcome criterion2() {
  auto e = catalog::load_example("elliptic");
  bool ok = true;
  for (long k = 1; k <= 10; ++k) {
    long brute = brute_force_hilbert(e.semigroup, k);
    ok = ok && brute == 3 * k && okounkov::semigroup_hilbert(e.semigroup, k) == brute;
  }
  auto rep = okounkov::degree_check(e.semigroup, 10);
  ok = ok && rep.volume == 3 && rep.relative_error < 1e-9;
  return {ok, "H(k) = 3k for k <= 10; volume " + to_string(rep.volume) + ", fit error " + sci(rep.relative_error)};
}

Outcome criterion3() {
  int checked = 0, bad = 0;
  for (const auto& info : catalog::list_examples()) {
    auto e = catalog::load_example(info.name);
    const auto& d = *e.datum;
    const auto& v = *d.valuation();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      long level = 1 + trial % 4;
      auto f = d.substitute(checks::random_combination(d, level, rng));
      if (v.is_zero(f)) continue;
      auto s = okounkov::subduct(f, level, d);
      bool ok = v.is_zero(d.substitute(s.expression) - f);
      for (std::size_t i = 1; i < s.chain.size(); ++i)
        ok = ok && algebra::advances(s.chain[i - 1].value, s.chain[i].value, v.orientation());
      // Every step removes a distinct value of the level-k piece.
      ok = ok && static_cast<long>(s.chain.size()) <= okounkov::semigroup_hilbert(e.semigroup, level);
      bad += !ok;
      ++checked;
    }
  }
  return {bad == 0 && checked > 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " sound"};
}

// Family checks straight from the term lists.
Outcome criterion4() {
  std::string why;
  int count = 0;
  for (const auto& info : catalog::list_examples()) {
    auto e = catalog::load_example(info.name);
    const auto& fam = e.family;
    const std::size_t nsym = fam.symbol_ring->size();
    auto specialize = [&](const algebra::Polynomial& g, long tau) {
      std::vector<algebra::Polynomial> images;
      for (std::size_t j = 0; j < nsym; ++j) images.push_back(algebra::Polynomial::variable(fam.symbol_ring, j));
      images.push_back(algebra::Polynomial::constant(fam.symbol_ring, Rational(tau)));
      return g.substitute(fam.symbol_ring, images);
    };
    auto weight = [&](const Exponent& a) {
      long w = 0;
      for (std::size_t j = 0; j < nsym; ++j) w += a[j] * fam.weights[j];
      return w;
    };
    for (std::size_t k = 0; k < fam.family.size(); ++k) {
      const auto& gt = fam.family[k];
      const auto& g = fam.relations[k];
      ++count;
      if (!(specialize(gt, 1) == g)) why += e.name + ": tau = 1 mismatch; ";
      if (!(specialize(gt, 0) == fam.initial[k])) why += e.name + ": tau = 0 mismatch; ";
      for (const auto& [a, c] : gt.terms()) {
        if (a[nsym] < 0) why += e.name + ": negative tau exponent; ";
        if (a[nsym] == 1) why += e.name + ": tau^1 term; ";
      }
      // The initial form is the extremal-weight part of g.
      std::set<long> ws;
      for (const auto& [a, c] : g.terms()) ws.insert(weight(a));
      std::set<long> wi;
      for (const auto& [a, c] : fam.initial[k].terms()) wi.insert(weight(a));
      if (wi.size() != 1 || (*wi.begin() != *ws.begin() && *wi.begin() != *ws.rbegin()))
        why += e.name + ": initial form is not an extremal weight part; ";
      for (const auto& [a, c] : g.terms())
        if (weight(a) == *wi.begin() && fam.initial[k].coefficient(a) != c)
          why += e.name + ": initial form misses a term; ";
    }
  }
  return {why.empty(), why.empty() ? std::to_string(count) + " relations, all identities exact" : why};
}

// Gradient of Re(t) from an LU kernel of the Jacobian and the real part
// of the metric, scaled so that Re(t) decreases at unit rate.
flow::CVector oracle_field(const flow::FamilyModel& m, const flow::ChartPoint& p) {
  const Eigen::Index N = static_cast<Eigen::Index>(m.coordinates());
  flow::CMatrix K = m.relations() ? flow::CMatrix(Eigen::FullPivLU<flow::CMatrix>(m.jacobian(p)).kernel())
                                  : flow::CMatrix(flow::CMatrix::Identity(N, N));
  flow::CMatrix T(N, 2 * K.cols());
  T << K, Complex(0, 1) * K;
  flow::CMatrix H = m.metric(p);
  Eigen::MatrixXd G = (T.adjoint() * H * T).real();
  Eigen::VectorXd b = T.row(N - 1).real().transpose();
  flow::CVector grad = T * Eigen::VectorXd(G.ldlt().solve(b)).cast<Complex>();
  return -grad / grad(N - 1).real();
}

Outcome criterion5() {
  std::string detail;
  bool ok = true;
  for (const auto& name : default_entries()) {
    auto e = catalog::load_example(name);
    auto m = model_for(e);
    std::mt19937_64 rng(5);
    std::vector<std::vector<Complex>> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(e.sampler.sample(rng, e.datum->ring()->size()));
    auto results = flow::evaluate_batch(m, pts, config_for(e));
    double norm = 0, im = 0, field = 0, tangency = 0;
    int good = 0;
    for (const auto& r : results) {
      if (!r.ok) continue;
      ++good;
      norm = std::max(norm, r.max_normalization_error);
      im = std::max(im, r.max_im_pi);
    }
    // Points along the first trajectories, against the independent field.
    auto cfg = config_for(e);
    for (int i = 0; i < 5 && good == 50; ++i) {
      auto start = flow::retract(m, m.embed(pts[i], cfg.epsilon), cfg);
      auto run = flow::flow_to(m, start, cfg, {0.3, 0.1, 0.01, 1e-3, cfg.delta});
      if (!run.ok) {
        ok = false;
        break;
      }
      run.terminals.push_back(start);
      for (const auto& p : run.terminals) {
        auto V = flow::gradient_hamiltonian(m, p);
        auto W = oracle_field(m, p);
        field = std::max(field, (V - W).norm() / W.norm());
        norm = std::max(norm, std::abs(W(W.size() - 1).real() + 1));
        if (m.relations()) tangency = std::max(tangency, (m.jacobian(p) * V).norm() / (m.jacobian(p).norm() * V.norm()));
      }
    }
    ok = ok && good == 50 && norm < 1e-8 && im < 1e-8 && field < 1e-8 && tangency < 1e-10;
    detail += name + " " + std::to_string(good) + "/50 dRe+1 " + sci(norm) + " Im " + sci(im) + " field " +
              sci(field) + " tangency " + sci(tangency) + "; ";
  }
  return {ok, detail};
}

Outcome criterion6() {
  auto e = catalog::load_example("p1");
  auto m = model_for(e);
  std::mt19937_64 rng(6);
  std::vector<std::vector<Complex>> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(e.sampler.sample(rng, 1));
  auto results = flow::evaluate_batch(m, pts, config_for(e));
  double dev = 0, lo = 1e300, hi = -1e300;
  int good = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok) continue;
    ++good;
    double u2 = std::norm(pts[i][0]);
    double direct = u2 / (1 + u2);  // moment of [1 : u] with weights 0, 1
    dev = std::max(dev, std::abs(results[i].F[0] - direct));
    lo = std::min(lo, results[i].F[0]);
    hi = std::max(hi, results[i].F[0]);
  }
  bool ok = good == 50 && dev < 1e-6 && lo >= -1e-6 && hi <= 1 + 1e-6;
  return {ok, std::to_string(good) + "/50 ok, max |F - mu| " + sci(dev) + ", F in [" + sci(lo) + ", " + sci(hi) + "]"};
}

Outcome criterion7() {
  auto e = catalog::load_example("elliptic");
  auto m = model_for(e);
  auto cfg = config_for(e);
  cfg.epsilon = 0.5;
  cfg.delta = 1e-4;
  std::mt19937_64 rng(7);
  std::vector<std::vector<Complex>> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(e.sampler.sample(rng, 3));
  auto results = flow::evaluate_batch(m, pts, cfg);
  double lo = 1e300, hi = -1e300;
  int good = 0;
  for (const auto& r : results)
    if (r.ok) {
      ++good;
      lo = std::min(lo, r.F[0]);
      hi = std::max(hi, r.F[0]);
    }
  double cover = good ? std::max(0.0, std::min(hi, 3.0) - std::max(lo, 0.0)) / 3.0 : 0.0;
  bool ok = good == 200 && lo >= -1e-2 && hi <= 3 + 1e-2 && cover >= 0.95;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/200 ok, F in [%.4f, %.4f], coverage %.2f%%", good, lo, hi, 100 * cover);
  return {ok, buf};
}

Outcome criterion8() {
  auto e = catalog::load_example("p1xp1");
  auto m = model_for(e);
  auto cfg = config_for(e);
  std::mt19937_64 rng(8);
  double worst = 0;
  int used = 0, drawn = 0;
  while (used < 20 && drawn < 200) {
    auto x = e.sampler.sample(rng, e.datum->ring()->size());
    ++drawn;
    auto r = flow::integrable_system_eval(m, x, cfg);
    if (!r.ok || e.body.violation(r.F) > -1e-3) continue;
    worst = std::max(worst, std::abs(flow::poisson_bracket(m, 0, 1, x, cfg)));
    ++used;
  }
  return {used == 20 && worst < 1e-3, std::to_string(used) + " interior points, max |{F1,F2}| " + sci(worst)};
}

Outcome criterion9() {
  std::string detail;
  bool ok = true;
  for (const auto& name : default_entries()) {
    auto e = catalog::load_example(name);
    auto m = model_for(e);
    auto cfg = config_for(e);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    const std::size_t n = m.rank();
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      auto x = e.sampler.sample(rng, e.datum->ring()->size());
      Eigen::VectorXd u(2 * n), v(2 * n);
      for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = gauss(rng), v(j) = gauss(rng);
      u.normalize();
      v.normalize();
      worst = std::max(worst, flow::symplectic_residual(m, x, u, v, cfg));
    }
    ok = ok && worst < 1e-4;
    detail += name + " " + sci(worst) + "; ";
  }
  return {ok, detail};
}

Outcome criterion10() {
  auto e = catalog::load_example("elliptic-quotient-demo");
  const auto& lambda = *e.homomorphism;
  // Rank one: the slice of [a, b] by c0 + c1 u = 0.
  const auto& row = lambda.rows.at(0);
  Rational a = e.body.vertices().front()[0], b = e.body.vertices().back()[0];
  std::vector<geometry::Point> want;
  Rational root = Rational(-row[0]) / Rational(row[1]);
  if (a <= root && root <= b) want.push_back({root});
  auto sl = okounkov::slice(e.semigroup, e.body, lambda);
  bool exact = sl.body.vertices() == want;

  auto basis = embedding::enumerate_vd_basis(*e.datum, e.family);
  std::mt19937_64 rng(10);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    auto pt = embedding::embed_point(e.sampler.sample(rng, 3), *e.datum, basis, 1.0);
    double mass = 0, mu = 0, muH = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      double w = std::norm(pt.z[j]);
      const auto& lam = basis.entries[j].weight;
      mass += w;
      mu += w * lam[0];
      muH += w * (row[0] * basis.degree + row[1] * lam[0]);
    }
    double d = static_cast<double>(basis.degree);
    worst = std::max(worst, std::abs(row[0] + row[1] * mu / (d * mass) - muH / (d * mass)));
    auto lib = embedding::weighted_moment(pt.z, basis, lambda);
    worst = std::max(worst, std::abs(lib[0] - muH / (d * mass)));
  }
  std::string shape = want.empty() ? "empty" : "{" + to_string(want[0][0]) + "}";
  return {exact && worst < 1e-6, "slice " + shape + (exact ? " exact" : " mismatch") + ", commutation " + sci(worst)};
}

Outcome criterion11() {
  auto e = catalog::load_example("gl3-flag");
  std::string got;
  bool ok = true;
  for (long k = 1; k <= 4; ++k) {
    long c = e.body.count_lattice_points(k);
    ok = ok && c == weyl_gl3(2 * k, k, 0);
    got += (k > 1 ? "," : "") + std::to_string(c);
  }
  return {ok, "counts " + got + " match dim V_{k(2,1,0)}"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    Outcome (*run)();
  };
  const Criterion list[] = {
      {1, "elliptic semigroup and body", 1, criterion1},
      {2, "Hilbert function and degree", 1, criterion2},
      {3, "subduction soundness", 30, criterion3},
      {4, "family invariants", 5, criterion4},
      {5, "flow normalization", 120, criterion5},
      {6, "identity on p1", 60, criterion6},
      {7, "elliptic moment image", 180, criterion7},
      {8, "Poisson commutativity", 180, criterion8},
      {9, "symplectic preservation", 180, criterion9},
      {10, "quotient slicing", 60, criterion10},
      {11, "Gel'fand-Cetlin lattice points", 10, criterion11},
  };
  int failed = 0;
  for (const auto& c : list) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& err) {
      o = {false, std::string(to_string(err.code())) + ": " + err.what()};
    } catch (const std::exception& err) {
      o = {false, err.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit)) + " s budget)";
    }
    std::printf("criterion %2d %s: %s | %s | %.2f s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(list)) - failed, std::size(list));
  return failed ? 1 : 0;
}
