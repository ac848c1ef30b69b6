#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "degeneration.hpp"
#include "okounkov.hpp"

namespace okkit::catalog {

using algebra::Complex;

// Random intrinsic points off the base locus of the section.
struct Sampler {
  enum class Kind { Torus, Elliptic };
  Kind kind = Kind::Torus;
  double log10_min = -1;
  double log10_max = 1;

  // torus: every ambient coordinate r e^{i theta};
  // elliptic: X = r e^{i theta}, Y = +-sqrt(X^3 + 1), Z = 1.
  std::vector<Complex> sample(std::mt19937_64& rng, std::size_t ambient_size) const;
};

struct FlowDefaults {
  double epsilon = 0.5;
  double delta = 1e-4;
  bool extended = false;  // excluded from default acceptance runs
};

struct Expected {
  std::vector<algebra::BiDegree> semigroup;
  std::vector<geometry::Point> vertices;
  Rational volume;
  long degree = 0;
  std::vector<long> ehrhart;  // lattice points of k * body for k = 1.. (optional)
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::shared_ptr<const okounkov::SagbiDatum> datum;
  degeneration::RelationSet relations;
  okounkov::ValueSemigroup semigroup;
  geometry::Polytope body;
  degeneration::WeightFunctional projection;
  degeneration::FamilyPresentation family;
  std::optional<okounkov::GradingHomomorphism> homomorphism;
  Expected expected;
  Sampler sampler;
  FlowDefaults flow;
  bool groebner_checked = false;  // false when outside the Buchberger size guard
};

struct CatalogInfo {
  std::string name;
  std::string description;
};

std::vector<CatalogInfo> list_examples();

CatalogEntry load_example(const std::string& name);
CatalogEntry load_entry_file(const std::string& path);
// Builds and re-derives every expected field; throws verification with a diff report.
CatalogEntry load_entry(const nlohmann::json& source);

// Raw JSON text of a built-in entry, or nullptr.
const char* builtin_source(const std::string& name);

long factorial(long n);

}  // namespace okkit::catalog
