#include "checks.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "embedding.hpp"
#include "error.hpp"
#include "serialize.hpp"

namespace okkit::checks {

using Status = CheckRow::Status;
using algebra::Complex;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

CheckRow row(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)};
}

// Runs body, turning any library error into a failing row.
void guarded(std::vector<CheckRow>& rows, const std::string& name, const std::function<CheckRow()>& body) {
  try {
    rows.push_back(body());
  } catch (const Error& e) {
    rows.push_back({name, Status::Fail, std::string(to_string(e.code())) + ": " + e.what()});
  }
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

std::vector<double> apply_real(const okounkov::GradingHomomorphism& lambda, const std::vector<double>& mu) {
  std::vector<double> out;
  for (const auto& r : lambda.rows) {
    if (r.size() != mu.size() + 1) throw Error(ErrorCode::Dimension, "homomorphism row length mismatch");
    double v = static_cast<double>(r[0]);
    for (std::size_t i = 0; i < mu.size(); ++i) v += static_cast<double>(r[i + 1]) * mu[i];
    out.push_back(v);
  }
  return out;
}

algebra::Polynomial random_combination(const okounkov::SagbiDatum& d, long level, std::mt19937_64& rng) {
  const auto& gens = d.generators();
  std::uniform_int_distribution<int> coef(-5, 5), pick(0, static_cast<int>(gens.size()) - 1), terms(1, 4);
  algebra::Polynomial p(d.symbol_ring());
  int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    algebra::Exponent e(gens.size(), 0);
    long left = level;
    for (int guard = 0; left > 0 && guard < 100; ++guard) {
      int j = pick(rng);
      if (gens[j].level <= left) {
        ++e[j];
        left -= gens[j].level;
      }
    }
    if (left == 0) p.add_term(e, coef(rng));
  }
  return p;
}

std::vector<CheckRow> run_checks(const catalog::CatalogEntry& e, const CheckOptions& opt) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(opt.seed);
  const auto& d = *e.datum;
  const std::size_t n = d.rank();
  const std::size_t ambient = d.ring()->size();

  guarded(rows, "semigroup", [&] {
    auto s = okounkov::value_semigroup(d);
    return row("semigroup", s.generators == e.expected.semigroup,
               std::to_string(s.generators.size()) + " generators");
  });
  guarded(rows, "body", [&] {
    auto b = okounkov::okounkov_body(okounkov::value_semigroup(d));
    bool ok = b.vertices() == e.expected.vertices && b.volume() == e.expected.volume;
    return row("body", ok, std::to_string(b.vertices().size()) + " vertices, volume " + okkit::to_string(b.volume()));
  });
  guarded(rows, "degree", [&] {
    auto rep = okounkov::degree_check(e.semigroup, static_cast<long>(n) + 3);
    Rational deg = rep.volume * catalog::factorial(static_cast<long>(n));
    bool ok = deg == e.expected.degree && rep.relative_error < 1e-9;
    return row("degree", ok, "n! vol = " + okkit::to_string(deg) + ", fit error " + sci(rep.relative_error));
  });
  guarded(rows, "subduction", [&] {
    const auto& v = *d.valuation();
    int checked = 0, bad = 0;
    for (int trial = 0; trial < opt.subduction_samples; ++trial) {
      long level = 1 + trial % 4;
      auto f = d.substitute(random_combination(d, level, rng));
      if (v.is_zero(f)) continue;
      auto s = okounkov::subduct(f, level, d);
      bool ok = v.is_zero(d.substitute(s.expression) - f);
      for (std::size_t i = 1; i < s.chain.size(); ++i)
        ok = ok && algebra::advances(s.chain[i - 1].value, s.chain[i].value, v.orientation());
      ok = ok && static_cast<long>(s.chain.size()) <= okounkov::semigroup_hilbert(e.semigroup, level);
      bad += !ok;
      ++checked;
    }
    return row("subduction", bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " sound");
  });
  guarded(rows, "relations", [&] {
    for (const auto& g : e.relations.relations)
      if (!d.valuation()->is_zero(d.substitute(g))) return row("relations", false, "relation does not vanish: " + g.to_string());
    return row("relations", true, std::to_string(e.relations.relations.size()) + " relations vanish");
  });
  guarded(rows, "projection", [&] {
    degeneration::verify_projection(e.relations, e.projection);
    std::string p;
    for (long c : e.projection.p) p += (p.empty() ? "" : ",") + std::to_string(c);
    return row("projection", true, "p = (" + p + ")");
  });
  guarded(rows, "family", [&] {
    degeneration::verify_family(e.family);
    return row("family", true, "tau = 1, tau = 0, exponents, tau^1 coefficient");
  });
  if (e.groebner_checked) {
    rows.push_back(row("groebner", true, "relations form a Groebner basis for the weight order"));
  } else {
    rows.push_back({"groebner", Status::Skip, "outside the Buchberger size guard"});
  }

  embedding::VdBasis basis;
  guarded(rows, "embedding", [&] {
    basis = embedding::enumerate_vd_basis(d, e.family);
    double worst = 0;
    for (int i = 0; i < opt.embedding_samples; ++i) {
      auto x = e.sampler.sample(rng, ambient);
      for (double t : {1.0, 0.5}) worst = std::max(worst, embedding::family_residual(x, d, e.family, t));
    }
    return row("embedding", worst < 1e-9, "max relative residual " + sci(worst));
  });
  guarded(rows, "rescale", [&] {
    double worst = 0;
    std::uniform_real_distribution<double> mod(0.2, 2.0), arg(-M_PI, M_PI);
    for (int i = 0; i < 50; ++i) {
      auto x = e.sampler.sample(rng, ambient);
      Complex s = std::polar(mod(rng), arg(rng));
      auto a = embedding::rescale_action(embedding::embed_point(x, d, basis, 1.0), basis, s);
      auto b = embedding::embed_point(x, d, basis, s);
      for (std::size_t j = 0; j < a.z.size(); ++j) worst = std::max(worst, std::abs(a.z[j] - b.z[j]));
    }
    return row("rescale", worst < 1e-10, "max deviation " + sci(worst));
  });
  guarded(rows, "moment-in-body", [&] {
    double worst = -1e300;
    for (int i = 0; i < opt.embedding_samples; ++i) {
      auto pt = embedding::embed_point(e.sampler.sample(rng, ambient), d, basis, 1.0);
      worst = std::max(worst, e.body.violation(embedding::toric_moment(pt.z, basis)));
    }
    return row("moment-in-body", worst < 1e-9, "max facet violation " + sci(std::max(worst, 0.0)));
  });
  if (!e.expected.ehrhart.empty()) {
    guarded(rows, "ehrhart", [&] {
      std::string got;
      bool ok = true;
      for (std::size_t k = 0; k < e.expected.ehrhart.size(); ++k) {
        long c = e.body.count_lattice_points(static_cast<long>(k) + 1);
        ok = ok && c == e.expected.ehrhart[k];
        got += (got.empty() ? "" : ",") + std::to_string(c);
      }
      return row("ehrhart", ok, "counts " + got);
    });
  }
  if (e.homomorphism) {
    guarded(rows, "slice", [&] {
      auto sl = okounkov::slice(e.semigroup, e.body, *e.homomorphism);
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        auto pt = embedding::embed_point(e.sampler.sample(rng, ambient), d, basis, 1.0);
        auto lhs = apply_real(*e.homomorphism, embedding::toric_moment(pt.z, basis));
        auto rhs = embedding::weighted_moment(pt.z, basis, *e.homomorphism);
        for (std::size_t j = 0; j < lhs.size(); ++j) worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
      }
      return row("slice", worst < 1e-6,
                 std::to_string(sl.body.vertices().size()) + " vertices in the slice, commutation residual " + sci(worst));
    });
  }

  // Flow rows.
  std::optional<flow::FamilyModel> model;
  std::string skip;
  if (e.flow.extended && !opt.extended) {
    skip = "extended entry; pass --extended to run";
  } else {
    try {
      model.emplace(e.datum, e.family, basis);
    } catch (const Error& err) {
      skip = err.what();
    }
  }
  if (!model) {
    for (const char* name : {"flow", "flow-image", "symplectic"}) rows.push_back({name, Status::Skip, skip});
    if (n >= 2) rows.push_back({"poisson", Status::Skip, skip});
    return rows;
  }
  flow::FlowConfig cfg = opt.flow;
  cfg.epsilon = e.flow.epsilon;
  cfg.delta = e.flow.delta;
  std::vector<std::vector<Complex>> pts;
  for (int i = 0; i < opt.flow_samples; ++i) pts.push_back(e.sampler.sample(rng, ambient));
  std::vector<flow::FlowResult> results;
  guarded(rows, "flow", [&] {
    results = flow::evaluate_batch(*model, pts, cfg);
    double norm = 0, im = 0, lin = 0;
    int ok = 0;
    for (const auto& r : results) {
      if (!r.ok) continue;
      ++ok;
      norm = std::max(norm, r.max_normalization_error);
      im = std::max(im, r.max_im_pi);
      lin = std::max(lin, r.max_lin_err);
    }
    bool pass = ok == static_cast<int>(results.size()) && norm < 1e-8 && im < 1e-8 && lin < 1e-6;
    return row("flow", pass,
               std::to_string(ok) + "/" + std::to_string(results.size()) + " ok; dRe[V]+1 " + sci(norm) + ", Im " +
                   sci(im) + ", lin " + sci(lin));
  });
  guarded(rows, "flow-image", [&] {
    double worst = -1e300;
    for (const auto& r : results)
      if (r.ok) worst = std::max(worst, e.body.violation(r.F));
    return row("flow-image", worst < 1e-2, "max facet violation " + sci(std::max(worst, 0.0)));
  });
  guarded(rows, "symplectic", [&] {
    double worst = 0;
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd u(2 * n), v(2 * n);
      for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = gauss(rng), v(j) = gauss(rng);
      u.normalize();
      v.normalize();
      worst = std::max(worst, flow::symplectic_residual(*model, pts[i % pts.size()], u, v, cfg));
    }
    return row("symplectic", worst < 1e-4, "max residual " + sci(worst));
  });
  if (n >= 2) {
    guarded(rows, "poisson", [&] {
      double worst = 0;
      for (int i = 0; i < 3; ++i) {
        auto B = flow::poisson_matrix(*model, pts[i % pts.size()], cfg);
        worst = std::max(worst, B.cwiseAbs().maxCoeff());
      }
      return row("poisson", worst < 1e-3, "max |{F_i, F_j}| " + sci(worst));
    });
  }
  return rows;
}

bool all_passed(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (r.status == Status::Fail) return false;
  return true;
}

std::string format_table(const std::vector<CheckRow>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::ostringstream out;
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
  out << pad("check") << "  status  detail\n";
  out << std::string(width, '-') << "  ------  ------\n";
  for (const auto& r : rows) out << pad(r.name) << "  " << to_string(r.status) << "    " << r.detail << '\n';
  return out.str();
}

}  // namespace okkit::checks
