#pragma once

#include <cstdint>
#include <vector>

#include "degeneration.hpp"
#include "okounkov.hpp"

namespace okkit::embedding {

using algebra::Complex;
using algebra::Exponent;

struct VdEntry {
  std::vector<int> alpha;  // multiplicity of each generator
  Exponent weight;         // lambda_alpha = sum alpha_ij u_ij
  long omega = 0;          // sum alpha_ij w_ij
};

// Monomials of weighted degree d in the generators, in descending lex order.
struct VdBasis {
  long degree = 1;
  std::size_t rank = 0;  // n
  std::vector<VdEntry> entries;
  std::uint64_t hash = 0;  // FNV-1a of degree and multi-indices

  std::size_t size() const noexcept { return entries.size(); }
};

// d <= 0 selects r!.
VdBasis enumerate_vd_basis(const okounkov::SagbiDatum& datum, const degeneration::FamilyPresentation& fam, long d = 0);

// Unit-norm homogeneous coordinates with the largest-modulus entry real positive.
struct ProjectivePoint {
  std::vector<Complex> z;
  Complex t;
};

ProjectivePoint normalize(std::vector<Complex> z, Complex t);

// z_alpha = t^omega_alpha prod (f_ij(x)/h(x)^i)^alpha_ij.
ProjectivePoint embed_point(const std::vector<Complex>& x, const okounkov::SagbiDatum& datum, const VdBasis& basis,
                            Complex t);

ProjectivePoint rescale_action(const ProjectivePoint& pt, const VdBasis& basis, Complex s);

// sum |z|^2 lambda / (d sum |z|^2).
std::vector<double> toric_moment(const std::vector<Complex>& z, const VdBasis& basis);

// sum |z|^2 lambda~(d, lambda_alpha) / (d sum |z|^2) for a grading homomorphism.
std::vector<double> weighted_moment(const std::vector<Complex>& z, const VdBasis& basis,
                                    const okounkov::GradingHomomorphism& lambda);

// Largest relative residual of the family relations at t, evaluated on the
// per-generator coordinates t^w_ij f_ij(x)/h(x)^i.
double family_residual(const std::vector<Complex>& x, const okounkov::SagbiDatum& datum,
                       const degeneration::FamilyPresentation& fam, Complex t);

}  // namespace okkit::embedding
