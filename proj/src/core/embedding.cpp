#include "embedding.hpp"

#include <cmath>
#include <functional>

#include "error.hpp"

namespace okkit::embedding {

namespace {

constexpr std::size_t kMaxBasis = 1000000;

void fnv(std::uint64_t& h, long x) {
  for (int i = 0; i < 8; ++i) {
    h ^= static_cast<std::uint64_t>(x >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
}

// f_ij(x)/h(x)^i for every generator.
std::vector<Complex> generator_values(const std::vector<Complex>& x, const okounkov::SagbiDatum& datum) {
  if (x.size() != datum.ring()->size()) throw Error(ErrorCode::Dimension, "intrinsic point has wrong length");
  const auto& gens = datum.generators();
  Complex h = gens[datum.section_index()].representative.evaluate(x);
  if (std::abs(h) <= 1e-12) throw Error(ErrorCode::Chart, "point lies on the base locus of the section; re-sample");
  std::vector<Complex> out;
  for (const auto& g : gens) out.push_back(g.representative.evaluate(x) / std::pow(h, static_cast<int>(g.level)));
  return out;
}

}  // namespace

VdBasis enumerate_vd_basis(const okounkov::SagbiDatum& datum, const degeneration::FamilyPresentation& fam, long d) {
  const auto& gens = datum.generators();
  if (d <= 0) {
    d = 1;
    for (long i = 2; i <= datum.max_level(); ++i) d *= i;
  }
  for (const auto& g : gens)
    if (d % g.level != 0)
      throw Error(ErrorCode::Dimension, "degree " + std::to_string(d) + " is not divisible by level " +
                                            std::to_string(g.level));
  if (fam.weights.size() != gens.size()) throw Error(ErrorCode::Dimension, "family weights do not match generators");

  VdBasis basis;
  basis.degree = d;
  basis.rank = datum.rank();
  std::vector<int> alpha(gens.size(), 0);
  // Descending lex: larger multiplicities of earlier generators come first.
  std::function<void(std::size_t, long)> rec = [&](std::size_t j, long left) {
    if (j == gens.size()) {
      if (left != 0) return;
      if (basis.entries.size() >= kMaxBasis)
        throw Error(ErrorCode::TooLarge, "V_d basis exceeds " + std::to_string(kMaxBasis) + " entries");
      VdEntry e{alpha, Exponent(basis.rank, 0), 0};
      for (std::size_t i = 0; i < gens.size(); ++i) {
        e.weight = algebra::add(e.weight, algebra::scale(gens[i].value, alpha[i]));
        e.omega += alpha[i] * fam.weights[i];
      }
      basis.entries.push_back(std::move(e));
      return;
    }
    for (long m = left / gens[j].level; m >= 0; --m) {
      alpha[j] = static_cast<int>(m);
      rec(j + 1, left - m * gens[j].level);
    }
    alpha[j] = 0;
  };
  rec(0, d);

  basis.hash = 14695981039346656037ull;
  fnv(basis.hash, d);
  for (const auto& e : basis.entries)
    for (int a : e.alpha) fnv(basis.hash, a);
  return basis;
}

ProjectivePoint normalize(std::vector<Complex> z, Complex t) {
  double norm = 0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    norm += std::norm(z[i]);
    if (std::abs(z[i]) > std::abs(z[big])) big = i;
  }
  if (!(norm > 0) || !std::isfinite(norm)) throw Error(ErrorCode::Chart, "cannot normalize a zero or non-finite point");
  Complex phase = std::conj(z[big]) / std::abs(z[big]) / std::sqrt(norm);
  for (auto& c : z) c *= phase;
  z[big] = std::abs(z[big]);
  return {std::move(z), t};
}

ProjectivePoint embed_point(const std::vector<Complex>& x, const okounkov::SagbiDatum& datum, const VdBasis& basis,
                            Complex t) {
  auto values = generator_values(x, datum);
  std::vector<Complex> z;
  z.reserve(basis.size());
  for (const auto& e : basis.entries) {
    if (t == Complex(0) && e.omega < 0) throw Error(ErrorCode::Chart, "negative weight at t = 0");
    Complex c = e.omega == 0 ? Complex(1) : std::pow(t, static_cast<int>(e.omega));
    for (std::size_t i = 0; i < e.alpha.size(); ++i)
      if (e.alpha[i]) c *= std::pow(values[i], e.alpha[i]);
    z.push_back(c);
  }
  return normalize(std::move(z), t);
}

ProjectivePoint rescale_action(const ProjectivePoint& pt, const VdBasis& basis, Complex s) {
  if (s == Complex(0)) throw Error(ErrorCode::InvalidScale, "rescaling by zero");
  if (pt.z.size() != basis.size()) throw Error(ErrorCode::Dimension, "point does not match basis");
  std::vector<Complex> z(pt.z);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= std::pow(s, static_cast<int>(basis.entries[i].omega));
  return normalize(std::move(z), s * pt.t);
}

std::vector<double> toric_moment(const std::vector<Complex>& z, const VdBasis& basis) {
  if (z.size() != basis.size()) throw Error(ErrorCode::Dimension, "point does not match basis");
  std::vector<double> mu(basis.rank, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double m = std::norm(z[i]);
    total += m;
    for (std::size_t c = 0; c < basis.rank; ++c) mu[c] += m * basis.entries[i].weight[c];
  }
  if (!(total > 0)) throw Error(ErrorCode::Chart, "moment map of the zero vector");
  for (auto& x : mu) x /= static_cast<double>(basis.degree) * total;
  return mu;
}

std::vector<double> weighted_moment(const std::vector<Complex>& z, const VdBasis& basis,
                                    const okounkov::GradingHomomorphism& lambda) {
  std::vector<double> mu(lambda.rows.size(), 0.0);
  double total = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double m = std::norm(z[i]);
    total += m;
    auto image = lambda.apply({basis.degree, basis.entries[i].weight});
    for (std::size_t r = 0; r < image.size(); ++r) mu[r] += m * static_cast<double>(image[r]);
  }
  if (!(total > 0)) throw Error(ErrorCode::Chart, "moment map of the zero vector");
  for (auto& x : mu) x /= static_cast<double>(basis.degree) * total;
  return mu;
}

double family_residual(const std::vector<Complex>& x, const okounkov::SagbiDatum& datum,
                       const degeneration::FamilyPresentation& fam, Complex t) {
  auto values = generator_values(x, datum);
  std::vector<Complex> point;
  for (std::size_t i = 0; i < values.size(); ++i)
    point.push_back(std::pow(t, static_cast<int>(fam.weights[i])) * values[i]);
  point.push_back(t);
  double worst = 0;
  for (const auto& g : fam.family) {
    algebra::CompiledPolynomial c(algebra::ComplexPolynomial::from(g));
    double scale = c.magnitude(point);
    if (scale > 0) worst = std::max(worst, std::abs(c.value(point)) / scale);
  }
  return worst;
}

}  // namespace okkit::embedding
