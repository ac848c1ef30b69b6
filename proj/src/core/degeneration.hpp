#pragma once

#include <vector>

#include "groebner.hpp"
#include "okounkov.hpp"

namespace okkit::degeneration {

using algebra::BiDegree;
using algebra::Complex;
using algebra::ComplexPolynomial;
using algebra::Exponent;
using algebra::Orientation;
using algebra::Polynomial;
using algebra::RingPtr;

// Relations among the x_ij, each homogeneous for deg x_ij = i.
struct RelationSet {
  RingPtr ring;
  std::vector<BiDegree> degrees;  // bidegree of each x_ij
  std::vector<Polynomial> relations;
  std::vector<long> levels;  // n_k
  Orientation orientation = Orientation::Min;

  // Verifies homogeneity and that every relation vanishes on the generators.
  static RelationSet build(const okounkov::SagbiDatum& datum, std::vector<Polynomial> relations);

  BiDegree degree_of(const Exponent& alpha) const;
};

struct WeightFunctional {
  std::vector<long> p;  // acts on (k, u)
  long apply(const BiDegree& d) const;
};

// Nested base-B weighting, doubled; every within-relation invariant is checked.
WeightFunctional build_projection(const RelationSet& rels);

// Throws no-projection naming the first violated pair.
void verify_projection(const RelationSet& rels, const WeightFunctional& p);

// Monomials of g with maximal p-weight, checked against the monomials whose
// bidegree is extremal in the valuation's orientation.
Polynomial initial_form(const Polynomial& g, const RelationSet& rels, const WeightFunctional& p);

struct FamilyPresentation {
  RingPtr symbol_ring;
  RingPtr family_ring;  // symbols followed by tau
  WeightFunctional p;
  std::vector<long> weights;  // w_ij = p . (i, u_ij)
  std::vector<long> levels;   // l_k
  std::vector<Polynomial> relations;
  std::vector<Polynomial> family;   // g~_k(x, tau)
  std::vector<Polynomial> initial;  // g~_k(x, 0)
};

FamilyPresentation build_family(const RelationSet& rels, const WeightFunctional& p);

// Exact invariants of a family: tau = 1 and tau = 0 specializations,
// nonnegative tau exponents, vanishing tau^1 coefficient.
void verify_family(const FamilyPresentation& fam);

std::vector<ComplexPolynomial> specialize_fiber(const FamilyPresentation& fam, Complex t);

// Desk-scale Buchberger under the p-weight order with lex ties.
algebra::GroebnerResult buchberger_small(const std::vector<Polynomial>& relations, const RelationSet& rels,
                                         const WeightFunctional& p);

algebra::TermOrder weight_order(const RelationSet& rels, const WeightFunctional& p);

// Kernel elements at the given level obtained by lifting toric binomials
// through subduction: for each pair of monomials with equal value,
// m_a - c m_b minus the subduction of its residual.
std::vector<Polynomial> lift_relations(const okounkov::SagbiDatum& datum, long level);

}  // namespace okkit::degeneration
