#include "okounkov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace okkit::okounkov {

using algebra::advances;
using algebra::make_ring;

SagbiDatum::SagbiDatum(ValuationPtr valuation, std::vector<Generator> generators, std::size_t section)
    : valuation_(std::move(valuation)), generators_(std::move(generators)), section_(section) {
  if (!valuation_) throw Error(ErrorCode::Dimension, "datum without valuation");
  if (generators_.empty()) throw Error(ErrorCode::EmptySemigroup, "datum without generators");
  if (section_ >= generators_.size()) throw Error(ErrorCode::Dimension, "section index out of range");
  const std::size_t n = rank();

  std::vector<std::string> symbols;
  for (const auto& g : generators_) {
    if (g.level < 1) throw Error(ErrorCode::Dimension, "generator " + g.symbol + " has level < 1");
    if (!g.representative.ring()->same_as(*ring()))
      throw Error(ErrorCode::Dimension, "generator " + g.symbol + " lives in the wrong ring");
    if (g.value.size() != n) throw Error(ErrorCode::Dimension, "generator " + g.symbol + " has value of wrong length");
    symbols.push_back(g.symbol);
    representatives_.push_back(g.representative);
    max_level_ = std::max(max_level_, g.level);
  }
  symbol_ring_ = make_ring(symbols);

  const auto& h = generators_[section_];
  if (h.level != 1 || h.value != Exponent(n, 0))
    throw Error(ErrorCode::Verification, "section " + h.symbol + " must have bidegree (1, 0)");
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const auto& g = generators_[j];
    BiDegree computed = extended_value(g.representative, g.level, *this);
    if (computed.value != g.value)
      throw Error(ErrorCode::Verification, "generator " + g.symbol + " declares value " + algebra::to_string(g.value) +
                                               " but the valuation gives " + algebra::to_string(computed.value));
    for (std::size_t i = 0; i < j; ++i)
      if (generators_[i].level == g.level && generators_[i].value == g.value)
        throw Error(ErrorCode::Verification,
                    "generators " + generators_[i].symbol + " and " + g.symbol + " share a bidegree");
  }
}

Polynomial SagbiDatum::substitute(const Polynomial& in_symbols) const {
  return in_symbols.substitute(ring(), representatives_);
}

Polynomial SagbiDatum::product(const std::vector<int>& multiplicities) const {
  Polynomial p = Polynomial::constant(ring(), 1);
  for (std::size_t j = 0; j < multiplicities.size(); ++j)
    if (multiplicities[j] > 0) p = p * representatives_[j].pow(static_cast<unsigned>(multiplicities[j]));
  return p;
}

const std::map<Exponent, std::vector<int>>& SagbiDatum::representations(long k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (representations_.empty()) representations_.push_back({{Exponent(rank(), 0), std::vector<int>(generators_.size(), 0)}});
  while (static_cast<long>(representations_.size()) <= k) {
    const long level = static_cast<long>(representations_.size());
    std::map<Exponent, std::vector<int>> next;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      const auto& g = generators_[j];
      if (g.level > level) continue;
      for (const auto& [u, mult] : representations_[level - g.level]) {
        auto v = algebra::add(u, g.value);
        if (next.count(v)) continue;
        auto m = mult;
        ++m[j];
        next.emplace(std::move(v), std::move(m));
      }
    }
    representations_.push_back(std::move(next));
  }
  return representations_[k];
}

ValueSemigroup value_semigroup(const SagbiDatum& datum) {
  ValueSemigroup s{datum.rank(), {}};
  for (std::size_t j = 0; j < datum.generators().size(); ++j) s.generators.push_back(datum.degree(j));
  return s;
}

BiDegree extended_value(const Polynomial& f, long k, const SagbiDatum& datum) {
  const auto& v = *datum.valuation();
  Exponent value = v.value(f);
  const auto& h = datum.generators()[datum.section_index()].representative;
  if (k != 0) value = algebra::sub(value, algebra::scale(v.value(h), static_cast<int>(k)));
  return {k, value};
}

Subduction subduct(const Polynomial& f, long k, const SagbiDatum& datum) {
  const auto& v = *datum.valuation();
  Polynomial r = v.reduce(f);
  if (r.is_zero()) throw Error(ErrorCode::UndefinedValuation, "subduction of zero");
  const auto& reps = datum.representations(k);
  Subduction out{Polynomial(datum.symbol_ring()), {}};
  while (!r.is_zero()) {
    BiDegree d = extended_value(r, k, datum);
    if (!out.chain.empty() && !advances(out.chain.back().value, d.value, v.orientation()))
      throw Error(ErrorCode::Verification, "subduction chain failed to advance at " + algebra::to_string(d));
    out.chain.push_back(d);
    if (out.chain.size() > reps.size())
      throw Error(ErrorCode::Verification, "subduction exceeded " + std::to_string(reps.size()) + " steps");
    auto it = reps.find(d.value);
    if (it == reps.end())
      throw Error(ErrorCode::NotInSemigroup, "value " + algebra::to_string(d) + " is not a sum of generator values");
    Polynomial g = datum.product(it->second);
    Rational lambda = v.leading_coefficient(r) / v.leading_coefficient(g);
    r = v.reduce(r - g * lambda);
    out.expression.add_term(Exponent(it->second.begin(), it->second.end()), lambda);
  }
  return out;
}

std::vector<std::set<Exponent>> level_sets(const ValueSemigroup& s, long kmax) {
  std::vector<std::set<Exponent>> sets(kmax + 1);
  sets[0].insert(Exponent(s.rank, 0));
  for (long k = 1; k <= kmax; ++k)
    for (const auto& g : s.generators) {
      if (g.level < 1) throw Error(ErrorCode::Dimension, "semigroup generator with level < 1");
      if (g.level > k) continue;
      for (const auto& u : sets[k - g.level]) sets[k].insert(algebra::add(u, g.value));
    }
  return sets;
}

long semigroup_hilbert(const ValueSemigroup& s, long k) {
  if (k < 0) throw Error(ErrorCode::Dimension, "negative level");
  return static_cast<long>(level_sets(s, k)[k].size());
}

geometry::Polytope okounkov_body(const ValueSemigroup& s) {
  if (s.generators.empty()) throw Error(ErrorCode::EmptySemigroup, "semigroup has no generators");
  std::vector<geometry::Point> pts;
  for (const auto& g : s.generators) {
    if (g.level < 1) throw Error(ErrorCode::Dimension, "semigroup generator with level < 1");
    geometry::Point p;
    for (int x : g.value) p.push_back(Rational(x, g.level));
    for (auto& x : p) x.canonicalize();
    pts.push_back(std::move(p));
  }
  return geometry::Polytope::hull(std::move(pts), s.rank);
}

DegreeReport degree_check(const ValueSemigroup& s, long samples) {
  const long n = static_cast<long>(s.rank);
  if (samples < n + 2)
    throw Error(ErrorCode::InsufficientSamples,
                "degree check needs at least " + std::to_string(n + 2) + " samples, got " + std::to_string(samples));
  DegreeReport report;
  report.volume = okounkov_body(s).volume();
  auto sets = level_sets(s, samples);
  for (long k = 1; k <= samples; ++k) report.hilbert.push_back(static_cast<long>(sets[k].size()));

  // Normal equations of the exact least-squares fit sum_i c_i k^i.
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<RationalVector> ata(m, RationalVector(m, Rational(0)));
  RationalVector aty(m, Rational(0));
  for (long k = 1; k <= samples; ++k) {
    RationalVector row(m);
    Rational power = 1;
    for (std::size_t i = 0; i < m; ++i, power *= k) row[i] = power;
    for (std::size_t i = 0; i < m; ++i) {
      aty[i] += row[i] * report.hilbert[k - 1];
      for (std::size_t j = 0; j < m; ++j) ata[i][j] += row[i] * row[j];
    }
  }
  auto c = geometry::solve(ata, aty);
  if (!c) throw Error(ErrorCode::InsufficientSamples, "degenerate least-squares system");
  report.fitted = (*c)[m - 1];
  Rational diff = abs(report.fitted - report.volume);
  report.relative_error = report.volume == 0 ? to_double(diff) : to_double(diff / report.volume);
  return report;
}

std::vector<long> GradingHomomorphism::apply(const BiDegree& d) const {
  std::vector<long> out;
  for (const auto& row : rows) {
    if (row.size() != d.value.size() + 1) throw Error(ErrorCode::Dimension, "homomorphism has wrong column count");
    long s = row[0] * d.level;
    for (std::size_t i = 0; i < d.value.size(); ++i) s += row[i + 1] * d.value[i];
    out.push_back(s);
  }
  return out;
}

bool GradingHomomorphism::is_zero() const {
  for (const auto& row : rows)
    for (long x : row)
      if (x != 0) return false;
  return true;
}

SliceResult slice(const ValueSemigroup& s, const geometry::Polytope& body, const GradingHomomorphism& lambda,
                  long bound) {
  const std::size_t n = s.rank;
  for (const auto& row : lambda.rows)
    if (row.size() != n + 1) throw Error(ErrorCode::Dimension, "homomorphism must have n+1 columns");
  SliceResult out;
  if (bound <= 0) {
    long l = 1;
    for (const auto& g : s.generators) l = std::lcm(l, g.level);
    bound = l * static_cast<long>(n + 1);
  }
  out.bound = bound;
  out.semigroup.rank = n;

  // Body: intersect with {v : lambda(1, v) = 0}.
  if (body.is_empty()) {
    out.body = geometry::Polytope::empty(n);
  } else {
    auto hs = body.facets();
    for (const auto& row : lambda.rows) {
      RationalVector a(n), neg(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = row[i + 1];
        neg[i] = -row[i + 1];
      }
      hs.push_back({a, Rational(-row[0])});
      hs.push_back({neg, Rational(row[0])});
    }
    out.body = geometry::Polytope::from_halfspaces(hs, n);
  }

  // Semigroup: minimal elements of S ∩ ker lambda up to the bound.
  auto sets = level_sets(s, bound);
  std::vector<std::set<Exponent>> kernel(bound + 1);
  kernel[0].insert(Exponent(n, 0));
  for (long k = 1; k <= bound; ++k)
    for (const auto& u : sets[k]) {
      auto image = lambda.apply({k, u});
      if (std::all_of(image.begin(), image.end(), [](long x) { return x == 0; })) kernel[k].insert(u);
    }
  long last_level = 0;
  for (long k = 1; k <= bound; ++k)
    for (const auto& u : kernel[k]) {
      bool decomposable = false;
      for (long j = 1; j < k && !decomposable; ++j)
        for (const auto& a : kernel[j])
          if (kernel[k - j].count(algebra::sub(u, a))) {
            decomposable = true;
            break;
          }
      if (!decomposable) {
        out.semigroup.generators.push_back({k, u});
        last_level = k;
      }
    }

  std::vector<geometry::Point> gens;
  for (const auto& g : out.semigroup.generators) {
    geometry::Point p{Rational(g.level)};
    for (int x : g.value) p.push_back(x);
    gens.push_back(std::move(p));
  }
  const std::size_t cone_rank = geometry::rank(gens, n + 1);
  const std::size_t expected = out.body.is_empty() ? 0 : static_cast<std::size_t>(out.body.affine_dim() + 1);
  if (cone_rank < expected) {
    out.complete = false;
    out.note = "generators span rank " + std::to_string(cone_rank) + " but the sliced body needs rank " +
               std::to_string(expected) + "; raise the bound";
  } else if (2 * last_level > bound) {
    out.complete = false;
    out.note = "a generator appeared at level " + std::to_string(last_level) + " in the upper half of the bound " +
               std::to_string(bound) + "; the generator list may be incomplete";
  }
  return out;
}

}  // namespace okkit::okounkov
