#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "bidegree.hpp"
#include "polytope.hpp"
#include "valuation.hpp"

namespace okkit::okounkov {

using algebra::BiDegree;
using algebra::Exponent;
using algebra::Polynomial;
using algebra::RingPtr;
using algebra::ValuationPtr;

struct Generator {
  std::string symbol;  // name of x_ij in the relation ring
  long level = 1;
  Polynomial representative;  // f_ij, a form of degree `level` (or f_ij/h^i when h = 1)
  Exponent value;             // declared u_ij
};

// Graded generators with valuation data. Construction re-derives every
// declared value from the backend and rejects mismatches.
class SagbiDatum {
 public:
  SagbiDatum(ValuationPtr valuation, std::vector<Generator> generators, std::size_t section);

  const ValuationPtr& valuation() const noexcept { return valuation_; }
  const RingPtr& ring() const noexcept { return valuation_->ring(); }
  const RingPtr& symbol_ring() const noexcept { return symbol_ring_; }
  std::size_t rank() const noexcept { return valuation_->rank(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  std::size_t section_index() const noexcept { return section_; }
  long max_level() const noexcept { return max_level_; }
  BiDegree degree(std::size_t j) const { return {generators_[j].level, generators_[j].value}; }

  // Replace each x_ij by its representative.
  Polynomial substitute(const Polynomial& in_symbols) const;
  // Product of representatives with the given multiplicities.
  Polynomial product(const std::vector<int>& multiplicities) const;

  // One multiplicity vector per reachable value at level k (deterministic choice).
  const std::map<Exponent, std::vector<int>>& representations(long k) const;

 private:
  ValuationPtr valuation_;
  std::vector<Generator> generators_;
  std::size_t section_;
  long max_level_ = 0;
  RingPtr symbol_ring_;
  std::vector<Polynomial> representatives_;
  mutable std::mutex mutex_;
  mutable std::deque<std::map<Exponent, std::vector<int>>> representations_;
};

struct ValueSemigroup {
  std::size_t rank = 0;  // n: values live in Z^n
  std::vector<BiDegree> generators;
};

ValueSemigroup value_semigroup(const SagbiDatum& datum);

// (k, v(f) - k v(h)).
BiDegree extended_value(const Polynomial& f, long k, const SagbiDatum& datum);

struct Subduction {
  Polynomial expression;       // polynomial in the x_ij
  std::vector<BiDegree> chain;  // extended values of successive residuals
};

// Rewrite a level-k element as a polynomial in the generators. Residual
// values strictly advance in the valuation's orientation at every step.
Subduction subduct(const Polynomial& f, long k, const SagbiDatum& datum);

// Distinct values at each level 0..kmax.
std::vector<std::set<Exponent>> level_sets(const ValueSemigroup& s, long kmax);
long semigroup_hilbert(const ValueSemigroup& s, long k);

geometry::Polytope okounkov_body(const ValueSemigroup& s);

struct DegreeReport {
  Rational volume;
  Rational fitted;  // leading coefficient of the least-squares fit of H_S(k)
  double relative_error = 0;
  std::vector<long> hilbert;  // H_S(1..K)
};

DegreeReport degree_check(const ValueSemigroup& s, long samples);

// Integer matrix m x (n+1) acting on (k, u).
struct GradingHomomorphism {
  std::vector<std::vector<long>> rows;
  std::vector<long> apply(const BiDegree& d) const;
  bool is_zero() const;
};

struct SliceResult {
  ValueSemigroup semigroup;
  geometry::Polytope body;
  long bound = 0;
  bool complete = true;
  std::string note;
};

// bound <= 0 selects lcm(levels) * (n+1).
SliceResult slice(const ValueSemigroup& s, const geometry::Polytope& body, const GradingHomomorphism& lambda,
                  long bound = 0);

}  // namespace okkit::okounkov
