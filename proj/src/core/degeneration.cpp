#include "degeneration.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "error.hpp"

namespace okkit::degeneration {

using algebra::compare_lex;
using algebra::Ordering;

RelationSet RelationSet::build(const okounkov::SagbiDatum& datum, std::vector<Polynomial> relations) {
  RelationSet rels;
  rels.ring = datum.symbol_ring();
  rels.orientation = datum.valuation()->orientation();
  std::vector<long> grading;
  for (std::size_t j = 0; j < datum.generators().size(); ++j) {
    rels.degrees.push_back(datum.degree(j));
    grading.push_back(datum.generators()[j].level);
  }
  for (auto& g : relations) {
    if (!g.ring()->same_as(*rels.ring)) throw Error(ErrorCode::Dimension, "relation in the wrong ring");
    if (g.is_zero()) throw Error(ErrorCode::Verification, "zero relation");
    auto level = g.homogeneous_degree(grading);
    if (!level) throw Error(ErrorCode::Verification, "relation " + g.to_string() + " is not level-homogeneous");
    if (!datum.valuation()->is_zero(datum.substitute(g)))
      throw Error(ErrorCode::Verification, "relation " + g.to_string() + " does not vanish on the generators");
    rels.levels.push_back(*level);
    rels.relations.push_back(std::move(g));
  }
  return rels;
}

BiDegree RelationSet::degree_of(const Exponent& alpha) const {
  BiDegree d{0, Exponent(degrees.empty() ? 0 : degrees[0].value.size(), 0)};
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (int m = 0; m < alpha[j]; ++m) d = d + degrees[j];
  return d;
}

long WeightFunctional::apply(const BiDegree& d) const {
  if (p.empty()) return 0;
  if (p.size() != d.value.size() + 1) throw Error(ErrorCode::Dimension, "weight functional length mismatch");
  long s = p[0] * d.level;
  for (std::size_t i = 0; i < d.value.size(); ++i) s += p[i + 1] * d.value[i];
  return s;
}

namespace {

std::size_t value_rank(const RelationSet& rels) { return rels.degrees.empty() ? 0 : rels.degrees[0].value.size(); }

// True when a is strictly more initial than b (same level).
bool more_initial(const BiDegree& a, const BiDegree& b, Orientation o) {
  Ordering c = compare_lex(a.value, b.value);
  return o == Orientation::Min ? c == Ordering::Less : c == Ordering::Greater;
}

}  // namespace

void verify_projection(const RelationSet& rels, const WeightFunctional& p) {
  for (const auto& g : rels.relations) {
    std::vector<std::pair<Exponent, BiDegree>> monos;
    for (const auto& [e, c] : g.terms()) monos.emplace_back(e, rels.degree_of(e));
    for (std::size_t a = 0; a < monos.size(); ++a)
      for (std::size_t b = 0; b < monos.size(); ++b) {
        const auto& da = monos[a].second;
        const auto& db = monos[b].second;
        long gap = p.apply(da) - p.apply(db);
        auto pair_text = [&] {
          return " between degrees " + algebra::to_string(da) + " and " + algebra::to_string(db) + " in " +
                 g.to_string();
        };
        if (gap % 2 != 0 || gap == 1 || gap == -1)
          throw Error(ErrorCode::NoProjection, "odd weight gap " + std::to_string(gap) + pair_text());
        if (more_initial(da, db, rels.orientation) && gap <= 0)
          throw Error(ErrorCode::NoProjection, "weight order disagrees with the valuation" + pair_text());
      }
  }
}

WeightFunctional build_projection(const RelationSet& rels) {
  const std::size_t n = value_rank(rels);
  bool constrained = false;
  std::vector<int> lo(n, 0), hi(n, 0);
  bool first = true;
  for (const auto& g : rels.relations) {
    if (rels.degrees.empty()) break;
    std::optional<BiDegree> seen;
    for (const auto& [e, c] : g.terms()) {
      BiDegree d = rels.degree_of(e);
      if (seen && d != *seen) constrained = true;
      seen = d;
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = first ? d.value[i] : std::min(lo[i], d.value[i]);
        hi[i] = first ? d.value[i] : std::max(hi[i], d.value[i]);
      }
      first = false;
    }
  }
  WeightFunctional p{std::vector<long>(n + 1, 0)};
  if (!constrained) return p;

  long spread = 0;
  for (std::size_t i = 0; i < n; ++i) spread = std::max<long>(spread, hi[i] - lo[i]);
  const long base = 1 + spread;
  const long sign = rels.orientation == Orientation::Min ? -1 : 1;
  long power = 1;
  for (std::size_t i = n; i >= 1; --i) {
    p.p[i] = 2 * sign * power;
    power *= base;
  }
  p.p[0] = 2 * power;
  verify_projection(rels, p);
  return p;
}

Polynomial initial_form(const Polynomial& g, const RelationSet& rels, const WeightFunctional& p) {
  if (g.is_zero()) throw Error(ErrorCode::UndefinedValuation, "initial form of zero");
  long best = 0;
  std::optional<BiDegree> extremal;
  bool started = false;
  for (const auto& [e, c] : g.terms()) {
    BiDegree d = rels.degree_of(e);
    long w = p.apply(d);
    if (!started || w > best) best = w;
    if (!extremal || more_initial(d, *extremal, rels.orientation)) extremal = d;
    started = true;
  }
  Polynomial by_weight(g.ring()), by_order(g.ring());
  for (const auto& [e, c] : g.terms()) {
    BiDegree d = rels.degree_of(e);
    if (p.apply(d) == best) by_weight.add_term(e, c);
    if (d.value == extremal->value) by_order.add_term(e, c);
  }
  if (!(by_weight == by_order))
    throw Error(ErrorCode::InconsistentProjection, "weight-initial form " + by_weight.to_string() +
                                                       " differs from order-initial form " + by_order.to_string());
  return by_weight;
}

FamilyPresentation build_family(const RelationSet& rels, const WeightFunctional& p) {
  FamilyPresentation fam;
  fam.symbol_ring = rels.ring;
  auto names = rels.ring->variables();
  std::string tau = "tau";
  while (rels.ring->index_of(tau)) tau += "_";
  names.push_back(tau);
  fam.family_ring = algebra::make_ring(names);
  fam.p = p;
  for (const auto& d : rels.degrees) fam.weights.push_back(p.apply(d));
  fam.relations = rels.relations;

  for (const auto& g : rels.relations) {
    long level = 0;
    bool started = false;
    for (const auto& [e, c] : g.terms()) {
      long w = p.apply(rels.degree_of(e));
      if (!started || w > level) level = w;
      started = true;
    }
    Polynomial tilde(fam.family_ring);
    for (const auto& [e, c] : g.terms()) {
      Exponent ext(e);
      long shift = level - p.apply(rels.degree_of(e));
      if (shift < 0)
        throw Error(ErrorCode::FamilyConstruction, "negative tau exponent in " + g.to_string());
      ext.push_back(static_cast<int>(shift));
      tilde.add_term(ext, c);
    }
    fam.levels.push_back(level);
    fam.family.push_back(std::move(tilde));
    fam.initial.push_back(initial_form(g, rels, p));
  }
  verify_family(fam);
  return fam;
}

namespace {

Polynomial at_tau(const FamilyPresentation& fam, const Polynomial& tilde, long tau) {
  std::vector<Polynomial> images;
  for (std::size_t j = 0; j < fam.symbol_ring->size(); ++j)
    images.push_back(Polynomial::variable(fam.symbol_ring, j));
  images.push_back(Polynomial::constant(fam.symbol_ring, tau));
  return tilde.substitute(fam.symbol_ring, images);
}

}  // namespace

void verify_family(const FamilyPresentation& fam) {
  const std::size_t tau = fam.symbol_ring->size();
  for (std::size_t k = 0; k < fam.family.size(); ++k) {
    const auto& tilde = fam.family[k];
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::FamilyConstruction, what + " for relation " + fam.relations[k].to_string());
    };
    for (const auto& [e, c] : tilde.terms()) {
      if (e[tau] < 0) fail("negative tau exponent");
      if (e[tau] == 1) fail("nonzero tau^1 coefficient at monomial " + algebra::to_string(e));
    }
    if (!(at_tau(fam, tilde, 1) == fam.relations[k])) fail("tau = 1 does not recover the relation");
    if (!(at_tau(fam, tilde, 0) == fam.initial[k])) fail("tau = 0 does not give the initial form");
  }
}

std::vector<ComplexPolynomial> specialize_fiber(const FamilyPresentation& fam, Complex t) {
  const std::size_t tau = fam.symbol_ring->size();
  std::vector<ComplexPolynomial> out;
  for (const auto& tilde : fam.family) {
    ComplexPolynomial f(fam.symbol_ring);
    for (const auto& [e, c] : tilde.terms()) {
      Exponent x(e.begin(), e.begin() + static_cast<long>(tau));
      f.add_term(x, to_double(c) * std::pow(t, e[tau]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

algebra::TermOrder weight_order(const RelationSet& rels, const WeightFunctional& p) {
  std::vector<long> w;
  for (const auto& d : rels.degrees) w.push_back(p.apply(d));
  return algebra::TermOrder(w);
}

algebra::GroebnerResult buchberger_small(const std::vector<Polynomial>& relations, const RelationSet& rels,
                                         const WeightFunctional& p) {
  if (rels.ring->size() > 8 || relations.size() > 6)
    throw Error(ErrorCode::TooLarge, "Buchberger check is limited to 8 variables and 6 relations (got " +
                                         std::to_string(rels.ring->size()) + " and " +
                                         std::to_string(relations.size()) + ")");
  return algebra::buchberger(relations, weight_order(rels, p));
}

std::vector<Polynomial> lift_relations(const okounkov::SagbiDatum& datum, long level) {
  const auto& gens = datum.generators();
  const auto& v = *datum.valuation();
  // Monomials of the given level, grouped by value in enumeration order.
  std::vector<std::pair<Exponent, std::vector<int>>> monomials;
  std::vector<int> mult(gens.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t j, long remaining) {
    if (j == gens.size()) {
      if (remaining == 0) {
        Exponent value(datum.rank(), 0);
        for (std::size_t i = 0; i < gens.size(); ++i)
          value = algebra::add(value, algebra::scale(gens[i].value, mult[i]));
        monomials.emplace_back(value, mult);
      }
      return;
    }
    for (int m = 0; m * gens[j].level <= remaining; ++m) {
      mult[j] = m;
      rec(j + 1, remaining - m * gens[j].level);
    }
    mult[j] = 0;
  };
  rec(0, level);

  std::map<Exponent, std::vector<std::vector<int>>> classes;
  for (auto& [value, m] : monomials) classes[value].push_back(m);

  std::vector<Polynomial> out;
  for (const auto& [value, members] : classes)
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      const auto& a = members[i];
      const auto& b = members[i + 1];
      Polynomial fa = datum.product(a), fb = datum.product(b);
      Rational lambda = v.leading_coefficient(fa) / v.leading_coefficient(fb);
      Polynomial rel = Polynomial::monomial(datum.symbol_ring(), Exponent(a.begin(), a.end()), 1) -
                       Polynomial::monomial(datum.symbol_ring(), Exponent(b.begin(), b.end()), lambda);
      Polynomial residual = v.reduce(fa - fb * lambda);
      if (!residual.is_zero()) rel -= okounkov::subduct(residual, level, datum).expression;
      out.push_back(std::move(rel));
    }
  return out;
}

}  // namespace okkit::degeneration
