#include "serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace okkit::io {

using algebra::Complex;

namespace {

json integer_json(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

// dump() pre-renders floats as tagged strings, then strips the quotes.
constexpr const char* kFloatTag = "#float#";

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

void tag_floats(json& j) {
  if (j.is_number_float()) {
    double x = j.get<double>();
    if (std::isfinite(x)) j = std::string(kFloatTag) + format_double(x);
    else j = nullptr;
  } else if (j.is_structured()) {
    for (auto& child : j) tag_floats(child);
  }
}

void unwrap_floats(std::string& text) {
  const std::string open = std::string("\"") + kFloatTag;
  for (std::size_t pos; (pos = text.find(open)) != std::string::npos;) {
    auto end = text.find('"', pos + open.size());
    text = text.substr(0, pos) + text.substr(pos + open.size(), end - pos - open.size()) + text.substr(end + 1);
  }
}

std::string svg_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json rational_json(const Rational& q) {
  return json::array({integer_json(q.get_num()), integer_json(q.get_den())});
}

json bidegree_json(const algebra::BiDegree& d) { return json::array({d.level, d.value}); }

json body_json(const geometry::Polytope& body) {
  json vertices = json::array();
  for (const auto& v : body.vertices()) {
    json p = json::array();
    for (const auto& c : v) p.push_back(rational_json(c));
    vertices.push_back(p);
  }
  json facets = json::array();
  for (const auto& f : body.facets()) {
    json normal = json::array();
    for (const auto& c : f.normal) normal.push_back(rational_json(c));
    facets.push_back({{"normal", normal}, {"offset", rational_json(f.offset)}});
  }
  return {{"dim", body.ambient_dim()},
          {"affine_dim", body.affine_dim()},
          {"vertices", vertices},
          {"facets", facets},
          {"volume", rational_json(body.volume())}};
}

json semigroup_json(const okounkov::ValueSemigroup& s) {
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(bidegree_json(g));
  return {{"rank", s.rank}, {"generators", gens}};
}

json family_json(const degeneration::FamilyPresentation& fam) {
  auto texts = [](const std::vector<algebra::Polynomial>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
  };
  return {{"variables", fam.family_ring->variables()},
          {"p", fam.p.p},
          {"weights", fam.weights},
          {"levels", fam.levels},
          {"relations", texts(fam.relations)},
          {"family", texts(fam.family)},
          {"initial", texts(fam.initial)}};
}

json fiber_json(const std::vector<algebra::ComplexPolynomial>& fiber) {
  json out = json::array();
  for (const auto& p : fiber) out.push_back(p.to_string());
  return out;
}

json point_json(const embedding::ProjectivePoint& p, const embedding::VdBasis& basis) {
  json z = json::array();
  for (auto c : p.z) z.push_back(complex_json(c));
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(basis.hash));
  return {{"z", z}, {"t", complex_json(p.t)}, {"basis_hash", hash}};
}

std::string dump(const json& j) {
  json copy = j;
  tag_floats(copy);
  std::string text = copy.dump(2);
  unwrap_floats(text);
  return text + "\n";
}

std::string trajectory_csv_header(std::size_t n) {
  std::string h = "sample_id,s,t_re,t_im,chart,residual,Impi,ReLinErr";
  for (std::size_t i = 1; i <= n; ++i) h += ",F_" + std::to_string(i);
  return h + "\n";
}

std::string trajectory_csv_rows(std::size_t sample_id, const flow::FlowResult& r) {
  std::ostringstream out;
  for (const auto& s : r.samples) {
    out << sample_id << ',' << format_double(s.s) << ',' << format_double(s.t.real()) << ','
        << format_double(s.t.imag()) << ',' << s.chart << ',' << format_double(s.residual) << ','
        << format_double(s.im_pi) << ',' << format_double(s.lin_err);
    for (double f : s.moment) out << ',' << format_double(f);
    out << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<flow::FlowResult>& results, std::size_t n) {
  std::ostringstream out;
  out << "sample_id,status";
  for (std::size_t i = 1; i <= n; ++i) out << ",F_" << i;
  out << ",convergence,steps,message\n";
  for (std::size_t id = 0; id < results.size(); ++id) {
    const auto& r = results[id];
    out << id << ',' << (r.ok ? "ok" : to_string(r.failure));
    for (std::size_t i = 0; i < n; ++i) out << ',' << (r.ok ? format_double(r.F[i]) : "");
    std::string msg = r.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    out << ',' << format_double(r.convergence) << ',' << r.steps << ",\"" << msg << "\"\n";
  }
  return out.str();
}

std::string body_svg(const geometry::Polytope& body, const std::vector<SvgPoint>& scatter, const std::string& title) {
  const std::size_t dim = body.ambient_dim();
  if (dim == 0 || body.is_empty()) throw Error(ErrorCode::Dimension, "nothing to render");
  std::vector<std::vector<double>> verts;
  for (const auto& v : body.vertices()) {
    std::vector<double> p;
    for (const auto& c : v) p.push_back(to_double(c));
    verts.push_back(p);
  }
  // Projection axes.
  std::size_t ax = 0, ay = dim > 1 ? 1 : 0;
  if (dim > 2) {
    std::vector<std::pair<double, std::size_t>> var;
    for (std::size_t c = 0; c < dim; ++c) {
      double mean = 0, sq = 0;
      for (const auto& v : verts) mean += v[c];
      mean /= verts.size();
      for (const auto& v : verts) sq += (v[c] - mean) * (v[c] - mean);
      var.push_back({-sq, c});
    }
    std::stable_sort(var.begin(), var.end());
    ax = std::min(var[0].second, var[1].second);
    ay = std::max(var[0].second, var[1].second);
  }
  auto coord = [&](const std::vector<double>& p) {
    return std::pair<double, double>{p[ax], dim > 1 ? p[ay] : 0.0};
  };
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& v : verts) {
    auto [x, y] = coord(v);
    xmin = std::min(xmin, x), xmax = std::max(xmax, x), ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  const double W = 480, H = dim > 1 ? 480 : 160, pad = 40;
  double sx = (xmax > xmin) ? (W - 2 * pad) / (xmax - xmin) : 1, sy = (ymax > ymin) ? (H - 2 * pad) / (ymax - ymin) : 1;
  if (dim > 1) sx = sy = std::min(sx, sy);
  auto px = [&](double x) { return pad + (x - xmin) * sx; };
  auto py = [&](double y) { return dim > 1 ? H - pad - (y - ymin) * sy : H / 2; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) s << "<text x=\"" << pad << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  if (body.affine_dim() <= 1 || dim == 1) {
    std::vector<std::pair<double, double>> ends;
    for (const auto& v : verts) ends.push_back(coord(v));
    std::sort(ends.begin(), ends.end());
    s << "<line x1=\"" << svg_number(px(ends.front().first)) << "\" y1=\"" << svg_number(py(ends.front().second))
      << "\" x2=\"" << svg_number(px(ends.back().first)) << "\" y2=\"" << svg_number(py(ends.back().second))
      << "\" stroke=\"#1f4e79\" stroke-width=\"4\"/>\n";
  } else {
    // Convex hull of the projected vertices, counter-clockwise.
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : verts) pts.push_back(coord(v));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto cross = [](auto o, auto a, auto b) {
      return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
      hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);
    s << "<path d=\"";
    for (std::size_t i = 0; i < hull.size(); ++i)
      s << (i ? " L " : "M ") << svg_number(px(hull[i].first)) << ' ' << svg_number(py(hull[i].second));
    s << " Z\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
  }
  for (const auto& v : verts) {
    auto [x, y] = coord(v);
    s << "<circle cx=\"" << svg_number(px(x)) << "\" cy=\"" << svg_number(py(y)) << "\" r=\"4\" fill=\"#1f4e79\"/>\n";
  }
  for (const auto& p : scatter) {
    if (p.x.size() != dim) continue;
    auto [x, y] = coord(p.x);
    s << "<circle cx=\"" << svg_number(px(x)) << "\" cy=\"" << svg_number(py(y)) << "\" r=\"2.5\" fill=\""
      << (p.ok ? "#d62728" : "#7f7f7f") << "\" fill-opacity=\"0.7\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace okkit::io
