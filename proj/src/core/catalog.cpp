#include "catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace okkit::catalog {

const std::vector<std::pair<std::string, const char*>>& builtin_entries();

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586;

void require_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!j.is_object()) throw Error(ErrorCode::Verification, where + ": expected an object");
  for (const auto& key : required)
    if (!j.contains(key)) throw Error(ErrorCode::Verification, where + ": missing field '" + key + "'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!required.count(it.key()) && !optional.count(it.key()))
      throw Error(ErrorCode::Verification, where + ": unknown field '" + it.key() + "'");
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Verification, where + "." + key + ": " + e.what());
  }
}

algebra::Exponent to_exponent(const json& j, const std::string& where) {
  try {
    return j.get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Verification, where + ": expected an integer vector");
  }
}

std::string render(const std::vector<algebra::BiDegree>& gens) {
  std::string s = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + algebra::to_string(gens[i]);
  return s + "}";
}

std::string render(const std::vector<geometry::Point>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += i ? ", (" : "(";
    for (std::size_t c = 0; c < pts[i].size(); ++c) s += (c ? "," : "") + to_string(pts[i][c]);
    s += ")";
  }
  return s + "}";
}

algebra::ValuationPtr build_valuation(const json& j, const algebra::RingPtr& ring) {
  const std::string kind = get<std::string>(j, "kind", "valuation");
  if (kind == "monomial") {
    require_keys(j, "valuation", {"kind"}, {"orientation"});
    std::string o = j.value("orientation", "min");
    if (o != "min" && o != "max") throw Error(ErrorCode::Verification, "valuation.orientation must be min or max");
    return std::make_shared<algebra::MonomialValuation>(ring, o == "min" ? algebra::Orientation::Min
                                                                         : algebra::Orientation::Max);
  }
  if (kind == "series") {
    require_keys(j, "valuation", {"kind", "parameter", "rules"}, {"ideal", "truncation", "cap"});
    auto ctx = std::make_shared<algebra::SeriesContext>(
        ring, get<std::string>(j, "parameter", "valuation"), get<std::vector<std::string>>(j, "rules", "valuation"),
        j.value("truncation", 16), j.value("cap", 256));
    std::vector<algebra::Polynomial> ideal;
    for (const auto& text : j.value("ideal", std::vector<std::string>{}))
      ideal.push_back(algebra::Polynomial::parse(ring, text));
    return std::make_shared<algebra::SeriesValuation>(ctx, ideal);
  }
  throw Error(ErrorCode::Verification, "valuation.kind must be monomial or series, got '" + kind + "'");
}

}  // namespace

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<Complex> Sampler::sample(std::mt19937_64& rng, std::size_t ambient_size) const {
  std::uniform_real_distribution<double> lg(log10_min, log10_max), angle(0, kTwoPi), coin(0, 1);
  auto draw = [&] { return std::polar(std::pow(10.0, lg(rng)), angle(rng)); };
  if (kind == Kind::Torus) {
    std::vector<Complex> x(ambient_size);
    for (auto& c : x) c = draw();
    return x;
  }
  if (ambient_size != 3) throw Error(ErrorCode::Dimension, "the elliptic sampler needs ambient coordinates X, Y, Z");
  Complex X = draw();
  Complex Y = std::sqrt(X * X * X + 1.0);
  if (coin(rng) < 0.5) Y = -Y;
  return {X, Y, Complex(1)};
}

std::vector<CatalogInfo> list_examples() {
  std::vector<CatalogInfo> out;
  for (const auto& [name, text] : builtin_entries())
    out.push_back({name, json::parse(text).value("description", "")});
  return out;
}

const char* builtin_source(const std::string& name) {
  for (const auto& [n, text] : builtin_entries())
    if (n == name) return text;
  return nullptr;
}

CatalogEntry load_example(const std::string& name) {
  const char* text = builtin_source(name);
  if (!text) {
    std::string known;
    for (const auto& info : list_examples()) known += (known.empty() ? "" : ", ") + info.name;
    throw Error(ErrorCode::UnknownEntry, "unknown catalog entry '" + name + "' (known: " + known + ")");
  }
  return load_entry(json::parse(text));
}

CatalogEntry load_entry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnknownEntry, "cannot open entry file '" + path + "'");
  try {
    return load_entry(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "entry file '" + path + "': " + e.what());
  }
}

CatalogEntry load_entry(const json& src) {
  require_keys(src, "entry", {"name", "ring", "valuation", "generators", "section", "relations", "expected"},
               {"description", "laurent", "homomorphism", "sampler", "flow"});
  CatalogEntry e;
  e.name = get<std::string>(src, "name", "entry");
  e.description = src.value("description", "");
  const std::string where = "entry '" + e.name + "'";

  auto ring = algebra::make_ring(get<std::vector<std::string>>(src, "ring", where), src.value("laurent", false));
  auto valuation = build_valuation(src.at("valuation"), ring);

  std::vector<okounkov::Generator> gens;
  std::optional<std::size_t> section;
  const std::string section_symbol = get<std::string>(src, "section", where);
  for (const auto& g : src.at("generators")) {
    require_keys(g, where + " generator", {"symbol", "level", "representative", "value"}, {});
    okounkov::Generator gen{get<std::string>(g, "symbol", where), get<long>(g, "level", where),
                            algebra::Polynomial::parse(ring, get<std::string>(g, "representative", where)),
                            to_exponent(g.at("value"), where + " generator value")};
    if (gen.symbol == section_symbol) section = gens.size();
    gens.push_back(std::move(gen));
  }
  if (!section) throw Error(ErrorCode::Verification, where + ": section '" + section_symbol + "' is not a generator");
  e.datum = std::make_shared<okounkov::SagbiDatum>(valuation, std::move(gens), *section);

  std::vector<algebra::Polynomial> relations;
  for (const auto& text : get<std::vector<std::string>>(src, "relations", where))
    relations.push_back(algebra::Polynomial::parse(e.datum->symbol_ring(), text));
  e.relations = degeneration::RelationSet::build(*e.datum, std::move(relations));

  e.semigroup = okounkov::value_semigroup(*e.datum);
  e.body = okounkov::okounkov_body(e.semigroup);
  e.projection = degeneration::build_projection(e.relations);
  e.family = degeneration::build_family(e.relations, e.projection);
  if (e.relations.ring->size() <= 8 && e.relations.relations.size() <= 6) {
    auto gb = degeneration::buchberger_small(e.relations.relations, e.relations, e.projection);
    if (!gb.input_was_groebner)
      throw Error(ErrorCode::Verification, where + ": relations are not a Groebner basis for the weight order");
    e.groebner_checked = true;
  }

  if (src.contains("homomorphism")) {
    okounkov::GradingHomomorphism lambda;
    try {
      lambda.rows = src.at("homomorphism").get<std::vector<std::vector<long>>>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::Verification, where + ": homomorphism must be an integer matrix");
    }
    for (const auto& row : lambda.rows)
      if (row.size() != e.datum->rank() + 1)
        throw Error(ErrorCode::Verification, where + ": homomorphism rows need n+1 entries");
    e.homomorphism = std::move(lambda);
  }

  if (src.contains("sampler")) {
    const auto& s = src.at("sampler");
    require_keys(s, where + " sampler", {"kind"}, {"log10_min", "log10_max"});
    std::string kind = get<std::string>(s, "kind", where);
    if (kind != "torus" && kind != "elliptic")
      throw Error(ErrorCode::Verification, where + ": sampler.kind must be torus or elliptic");
    e.sampler.kind = kind == "torus" ? Sampler::Kind::Torus : Sampler::Kind::Elliptic;
    e.sampler.log10_min = s.value("log10_min", -1.0);
    e.sampler.log10_max = s.value("log10_max", 1.0);
  }
  if (src.contains("flow")) {
    const auto& f = src.at("flow");
    require_keys(f, where + " flow", {}, {"epsilon", "delta", "extended"});
    e.flow.epsilon = f.value("epsilon", 0.5);
    e.flow.delta = f.value("delta", 1e-4);
    e.flow.extended = f.value("extended", false);
  }

  // Expected data is never trusted: recompute and diff.
  const auto& x = src.at("expected");
  require_keys(x, where + " expected", {"semigroup", "vertices", "volume", "degree"}, {"ehrhart"});
  for (const auto& g : x.at("semigroup")) {
    if (!g.is_array() || g.size() != 2) throw Error(ErrorCode::Verification, where + ": bad expected generator");
    e.expected.semigroup.push_back({g[0].get<long>(), to_exponent(g[1], where + " expected generator")});
  }
  for (const auto& v : x.at("vertices")) {
    geometry::Point p;
    for (const auto& c : v) p.push_back(parse_rational(c.get<std::string>()));
    e.expected.vertices.push_back(std::move(p));
  }
  e.expected.volume = parse_rational(get<std::string>(x, "volume", where));
  e.expected.degree = get<long>(x, "degree", where);
  e.expected.ehrhart = x.value("ehrhart", std::vector<long>{});

  std::vector<std::string> diff;
  if (e.expected.semigroup != e.semigroup.generators)
    diff.push_back("semigroup: expected " + render(e.expected.semigroup) + ", computed " +
                   render(e.semigroup.generators));
  auto sorted = e.expected.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != e.body.vertices())
    diff.push_back("vertices: expected " + render(sorted) + ", computed " + render(e.body.vertices()));
  if (e.expected.volume != e.body.volume())
    diff.push_back("volume: expected " + to_string(e.expected.volume) + ", computed " + to_string(e.body.volume()));
  Rational degree = e.body.volume() * factorial(static_cast<long>(e.datum->rank()));
  if (Rational(e.expected.degree) != degree)
    diff.push_back("degree: expected " + std::to_string(e.expected.degree) + ", computed " + to_string(degree));
  for (std::size_t k = 1; k <= e.expected.ehrhart.size(); ++k) {
    long got = e.body.count_lattice_points(static_cast<long>(k));
    if (got != e.expected.ehrhart[k - 1])
      diff.push_back("ehrhart(" + std::to_string(k) + "): expected " + std::to_string(e.expected.ehrhart[k - 1]) +
                     ", computed " + std::to_string(got));
  }
  if (!diff.empty()) {
    std::string report = where + " failed verification:";
    for (const auto& d : diff) report += "\n  " + d;
    throw Error(ErrorCode::Verification, report);
  }
  return e;
}

}  // namespace okkit::catalog
