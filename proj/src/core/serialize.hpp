#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "embedding.hpp"
#include "flow.hpp"

namespace okkit::io {

using nlohmann::json;

// Floats use 17 significant digits so outputs round-trip and compare byte-wise.
std::string format_double(double x);

json rational_json(const Rational& q);  // [num, den]
json bidegree_json(const algebra::BiDegree& d);
json body_json(const geometry::Polytope& body);
json semigroup_json(const okounkov::ValueSemigroup& s);
json family_json(const degeneration::FamilyPresentation& fam);
json fiber_json(const std::vector<algebra::ComplexPolynomial>& fiber);
json point_json(const embedding::ProjectivePoint& p, const embedding::VdBasis& basis);

// One row per trajectory sample.
std::string trajectory_csv_header(std::size_t n);
std::string trajectory_csv_rows(std::size_t sample_id, const flow::FlowResult& r);
// One row per input point: status and extrapolated F.
std::string summary_csv(const std::vector<flow::FlowResult>& results, std::size_t n);

// Serialized with format_double for every float.
std::string dump(const json& j);

struct SvgPoint {
  std::vector<double> x;
  bool ok = true;
};

// Segment or filled polygon; 3D bodies use the coordinate pair of largest
// vertex variance. Optional scatter points use the same projection.
std::string body_svg(const geometry::Polytope& body, const std::vector<SvgPoint>& scatter = {},
                     const std::string& title = "");

}  // namespace okkit::io
