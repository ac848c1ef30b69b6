#include "okkit/okkit.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <random>
#include <string>

#include "catalog.hpp"
#include "checks.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "serialize.hpp"

using namespace okkit;
using algebra::Complex;
using io::json;

struct okkit_entry {
  catalog::CatalogEntry entry;
  embedding::VdBasis basis;
  std::optional<flow::FamilyModel> model;  // absent when the flow is unsupported
  std::string model_error;
};

struct okkit_flow_batch {
  const okkit_entry* owner;
  flow::FlowConfig config;
  std::uint64_t seed;
  std::vector<flow::FlowResult> results;
};

struct okkit_check_report {
  std::vector<checks::CheckRow> rows;
};

namespace {

thread_local std::string last_error;

okkit_status status_of(ErrorCode c) { return static_cast<okkit_status>(static_cast<int>(c) + 1); }

okkit_status fail(okkit_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body and converts exceptions into status codes.
template <class Body>
okkit_status guard(Body&& body) {
  try {
    body();
    return OKKIT_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(OKKIT_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(OKKIT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OKKIT_E_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::Usage, std::string("null argument: ") + what);
}

okkit_entry* wrap(catalog::CatalogEntry e) {
  auto* h = new okkit_entry{std::move(e), {}, std::nullopt, {}};
  h->basis = embedding::enumerate_vd_basis(*h->entry.datum, h->entry.family);
  try {
    h->model.emplace(h->entry.datum, h->entry.family, h->basis);
  } catch (const Error& err) {
    h->model_error = err.what();
  }
  return h;
}

const flow::FamilyModel& model_of(const okkit_entry* e) {
  if (!e->model) throw Error(ErrorCode::Unsupported, e->model_error);
  return *e->model;
}

flow::FlowConfig config_of(const okkit_entry* e, const okkit_flow_options* o) {
  flow::FlowConfig cfg;
  cfg.epsilon = e->entry.flow.epsilon;
  cfg.delta = e->entry.flow.delta;
  if (o) {
    cfg.epsilon = o->epsilon;
    cfg.delta = o->delta;
    cfg.rtol = o->rtol;
    cfg.atol = o->atol;
    cfg.retraction_tol = o->retraction_tol;
    cfg.retraction_max_iter = o->retraction_max_iter;
    cfg.max_steps = o->max_steps;
    cfg.alpha = o->alpha;
    cfg.max_step = o->max_step;
    cfg.fd_step = o->fd_step;
  }
  cfg.validate();
  return cfg;
}

std::vector<Complex> point_of(const okkit_entry* e, const double* x) {
  need(x, "point");
  std::vector<Complex> p(e->entry.datum->ring()->size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = {x[2 * i], x[2 * i + 1]};
  return p;
}

std::vector<std::vector<Complex>> samples_of(const okkit_entry* e, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(e->entry.sampler.sample(rng, e->entry.datum->ring()->size()));
  return out;
}

okounkov::GradingHomomorphism homomorphism_of(const okkit_entry* e, const long* rows, std::size_t nrows) {
  if (!rows) {
    if (!e->entry.homomorphism) throw Error(ErrorCode::Usage, "entry has no homomorphism; pass one explicitly");
    return *e->entry.homomorphism;
  }
  const std::size_t cols = e->entry.datum->rank() + 1;
  okounkov::GradingHomomorphism h;
  for (std::size_t r = 0; r < nrows; ++r) h.rows.emplace_back(rows + r * cols, rows + (r + 1) * cols);
  return h;
}

}  // namespace

extern "C" {

const char* okkit_version(void) { return "1.0.0"; }

const char* okkit_last_error(void) { return last_error.c_str(); }

const char* okkit_status_name(okkit_status s) {
  switch (s) {
    case OKKIT_OK: return "ok";
    case OKKIT_E_ARGUMENT: return "argument";
    case OKKIT_E_IO: return "io";
    case OKKIT_E_INTERNAL: return "internal";
    default: break;
  }
  int code = static_cast<int>(s) - 1;
  if (code >= 0 && code <= static_cast<int>(ErrorCode::Usage)) return to_string(static_cast<ErrorCode>(code));
  return "unknown";
}

int okkit_status_is_numerical(okkit_status s) {
  switch (s) {
    case OKKIT_E_INCONCLUSIVE_VALUATION:
    case OKKIT_E_CHART:
    case OKKIT_E_SINGULAR_POINT:
    case OKKIT_E_CRITICAL_POINT:
    case OKKIT_E_RETRACTION_DIVERGED:
    case OKKIT_E_STEP_LIMIT:
    case OKKIT_E_DEGENERATE_FORM:
      return 1;
    default:
      return 0;
  }
}

void okkit_free(void* p) { std::free(p); }

size_t okkit_catalog_size(void) { return catalog::list_examples().size(); }

okkit_status okkit_catalog_name(size_t index, const char** name, const char** description) {
  // Names point into a process-lifetime copy of the listing.
  static const std::vector<catalog::CatalogInfo> list = catalog::list_examples();
  if (index >= list.size()) return fail(OKKIT_E_ARGUMENT, "catalog index out of range");
  if (name) *name = list[index].name.c_str();
  if (description) *description = list[index].description.c_str();
  return OKKIT_OK;
}

okkit_status okkit_entry_load(const char* name, okkit_entry** out) {
  if (!name || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *out = wrap(catalog::load_example(name)); });
}

okkit_status okkit_entry_load_file(const char* path, okkit_entry** out) {
  if (!path || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *out = wrap(catalog::load_entry_file(path)); });
}

void okkit_entry_free(okkit_entry* e) { delete e; }

const char* okkit_entry_name(const okkit_entry* e) { return e ? e->entry.name.c_str() : ""; }
size_t okkit_entry_rank(const okkit_entry* e) { return e ? e->entry.datum->rank() : 0; }
size_t okkit_entry_ambient_size(const okkit_entry* e) { return e ? e->entry.datum->ring()->size() : 0; }
int okkit_entry_extended(const okkit_entry* e) { return e && e->entry.flow.extended ? 1 : 0; }

okkit_status okkit_entry_sample(const okkit_entry* e, uint64_t seed, size_t count, double* points) {
  if (!e || !points) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    std::size_t k = 0;
    for (const auto& p : samples_of(e, seed, count))
      for (auto c : p) points[k++] = c.real(), points[k++] = c.imag();
  });
}

okkit_status okkit_body_json(const okkit_entry* e, char** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    json j = io::body_json(e->entry.body);
    j["entry"] = e->entry.name;
    j["semigroup"] = io::semigroup_json(e->entry.semigroup)["generators"];
    *out = copy_string(io::dump(j));
  });
}

okkit_status okkit_body_svg(const okkit_entry* e, const double* points, size_t count, char** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<io::SvgPoint> scatter;
    const std::size_t n = e->entry.datum->rank();
    for (std::size_t i = 0; points && i < count; ++i) scatter.push_back({{points + i * n, points + (i + 1) * n}, true});
    *out = copy_string(io::body_svg(e->entry.body, scatter, e->entry.name));
  });
}

okkit_status okkit_body_contains(const okkit_entry* e, const double* x, double* violation) {
  if (!e || !x || !violation) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *violation = e->entry.body.violation({x, x + e->entry.datum->rank()}); });
}

okkit_status okkit_family_json(const okkit_entry* e, char** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    degeneration::verify_family(e->entry.family);
    json j = io::family_json(e->entry.family);
    j["entry"] = e->entry.name;
    *out = copy_string(io::dump(j));
  });
}

okkit_status okkit_fiber_json(const okkit_entry* e, double t_re, double t_im, char** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    json j = {{"entry", e->entry.name},
              {"variables", e->entry.family.symbol_ring->variables()},
              {"fiber", io::fiber_json(degeneration::specialize_fiber(e->entry.family, {t_re, t_im}))}};
    *out = copy_string(io::dump(j));
  });
}

okkit_status okkit_slice_json(const okkit_entry* e, const long* rows, size_t nrows, long bound, size_t samples,
                              uint64_t seed, char** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  double residual = 0;
  if (auto s = okkit_slice_commutation(e, rows, nrows, samples, seed, &residual); s != OKKIT_OK) return s;
  return guard([&] {
    auto lambda = homomorphism_of(e, rows, nrows);
    auto sl = okounkov::slice(e->entry.semigroup, e->entry.body, lambda, bound);
    json j = {{"entry", e->entry.name},
              {"homomorphism", lambda.rows},
              {"semigroup", io::semigroup_json(sl.semigroup)["generators"]},
              {"body", io::body_json(sl.body)},
              {"bound", sl.bound},
              {"complete", sl.complete},
              {"note", sl.note},
              {"commutation_samples", samples},
              {"commutation_residual", residual}};
    *out = copy_string(io::dump(j));
  });
}

okkit_status okkit_slice_commutation(const okkit_entry* e, const long* rows, size_t nrows, size_t samples,
                                     uint64_t seed, double* residual) {
  if (!e || !residual) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    auto lambda = homomorphism_of(e, rows, nrows);
    double worst = 0;
    for (const auto& x : samples_of(e, seed, samples)) {
      auto pt = embedding::embed_point(x, *e->entry.datum, e->basis, 1.0);
      auto lhs = checks::apply_real(lambda, embedding::toric_moment(pt.z, e->basis));
      auto rhs = embedding::weighted_moment(pt.z, e->basis, lambda);
      for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    *residual = worst;
  });
}

okkit_status okkit_flow_options_default(const okkit_entry* e, okkit_flow_options* o) {
  if (!e || !o) return fail(OKKIT_E_ARGUMENT, "null argument");
  flow::FlowConfig c;
  *o = {e->entry.flow.epsilon, e->entry.flow.delta, c.rtol,     c.atol,     c.retraction_tol,
        c.retraction_max_iter, c.max_steps,         c.alpha,    c.max_step, c.fd_step};
  return OKKIT_OK;
}

okkit_status okkit_flow_run(const okkit_entry* e, const okkit_flow_options* o, size_t samples, uint64_t seed,
                            okkit_flow_batch** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  if (samples == 0) return fail(OKKIT_E_USAGE, "--samples must be positive");
  return guard([&] {
    auto cfg = config_of(e, o);
    cfg.seed = seed;
    const auto& m = model_of(e);
    auto* b = new okkit_flow_batch{e, cfg, seed, flow::evaluate_batch(m, samples_of(e, seed, samples), cfg)};
    *out = b;
  });
}

void okkit_flow_batch_free(okkit_flow_batch* b) { delete b; }

size_t okkit_flow_batch_size(const okkit_flow_batch* b) { return b ? b->results.size() : 0; }

size_t okkit_flow_batch_succeeded(const okkit_flow_batch* b) {
  if (!b) return 0;
  std::size_t ok = 0;
  for (const auto& r : b->results) ok += r.ok;
  return ok;
}

okkit_status okkit_flow_batch_sample(const okkit_flow_batch* b, size_t index, okkit_status* status, double* F,
                                     double* convergence) {
  if (!b) return fail(OKKIT_E_ARGUMENT, "null argument");
  if (index >= b->results.size()) return fail(OKKIT_E_ARGUMENT, "sample index out of range");
  const auto& r = b->results[index];
  if (status) *status = r.ok ? OKKIT_OK : status_of(r.failure);
  if (r.ok && F) std::copy(r.F.begin(), r.F.end(), F);
  if (convergence) *convergence = r.convergence;
  return OKKIT_OK;
}

okkit_status okkit_flow_batch_trajectories_csv(const okkit_flow_batch* b, char** out) {
  if (!b || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    std::string csv = io::trajectory_csv_header(b->owner->entry.datum->rank());
    for (std::size_t i = 0; i < b->results.size(); ++i) csv += io::trajectory_csv_rows(i, b->results[i]);
    *out = copy_string(csv);
  });
}

okkit_status okkit_flow_batch_summary_csv(const okkit_flow_batch* b, char** out) {
  if (!b || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *out = copy_string(io::summary_csv(b->results, b->owner->entry.datum->rank())); });
}

okkit_status okkit_flow_batch_diagnostics_json(const okkit_flow_batch* b, char** out) {
  if (!b || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    const auto& entry = b->owner->entry;
    const std::size_t n = entry.datum->rank();
    std::vector<double> lo(n, 1e300), hi(n, -1e300);
    double worst_violation = -1e300, im = 0, lin = 0, norm = 0, res = 0, conv = 0;
    json per = json::array();
    for (std::size_t i = 0; i < b->results.size(); ++i) {
      const auto& r = b->results[i];
      json s = {{"sample_id", i}, {"status", r.ok ? "ok" : to_string(r.failure)}, {"steps", r.steps},
                {"rejected", r.rejected}, {"ill_conditioned", r.ill_conditioned}};
      if (!r.ok) {
        s["message"] = r.message;
      } else {
        for (std::size_t c = 0; c < n; ++c) lo[c] = std::min(lo[c], r.F[c]), hi[c] = std::max(hi[c], r.F[c]);
        worst_violation = std::max(worst_violation, entry.body.violation(r.F));
        im = std::max(im, r.max_im_pi);
        lin = std::max(lin, r.max_lin_err);
        norm = std::max(norm, r.max_normalization_error);
        res = std::max(res, r.max_residual);
        conv = std::max(conv, r.convergence);
        s["F"] = r.F;
        s["convergence"] = r.convergence;
        s["terminal"] = io::point_json(
            embedding::normalize(model_of(b->owner).homogeneous(r.terminals.at(0)), r.terminals.at(0).t), b->owner->basis);
      }
      per.push_back(s);
    }
    const std::size_t ok = okkit_flow_batch_succeeded(b);
    json j = {{"entry", entry.name},
              {"samples", b->results.size()},
              {"succeeded", ok},
              {"seed", b->seed},
              {"epsilon", b->config.epsilon},
              {"delta", b->config.delta},
              {"max_im_pi", im},
              {"max_linearity_error", lin},
              {"max_normalization_error", norm},
              {"max_residual", res},
              {"max_convergence", conv},
              {"results", per}};
    if (ok) {
      j["F_min"] = lo;
      j["F_max"] = hi;
      j["max_body_violation"] = worst_violation;
      if (n == 1 && entry.body.affine_dim() == 1) {
        double a = to_double(entry.body.vertices().front()[0]), c = to_double(entry.body.vertices().back()[0]);
        double cover = (std::min(hi[0], c) - std::max(lo[0], a)) / (c - a);
        j["coverage"] = std::max(0.0, cover);
      }
    }
    *out = copy_string(io::dump(j));
  });
}

okkit_status okkit_flow_batch_svg(const okkit_flow_batch* b, char** out) {
  if (!b || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<io::SvgPoint> scatter;
    for (const auto& r : b->results)
      if (r.ok) scatter.push_back({r.F, true});
    *out = copy_string(io::body_svg(b->owner->entry.body, scatter, b->owner->entry.name + ": F-values"));
  });
}

okkit_status okkit_flow_eval(const okkit_entry* e, const okkit_flow_options* o, const double* x, double* F,
                             double* convergence) {
  if (!e || !x || !F) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    auto r = flow::integrable_system_eval(model_of(e), point_of(e, x), config_of(e, o));
    if (!r.ok) throw Error(r.failure, r.message);
    std::copy(r.F.begin(), r.F.end(), F);
    if (convergence) *convergence = r.convergence;
  });
}

okkit_status okkit_poisson_bracket(const okkit_entry* e, const okkit_flow_options* o, const double* x, size_t i,
                                   size_t j, double* out) {
  if (!e || !x || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *out = flow::poisson_bracket(model_of(e), i, j, point_of(e, x), config_of(e, o)); });
}

okkit_status okkit_symplectic_residual(const okkit_entry* e, const okkit_flow_options* o, const double* x,
                                       const double* u, const double* v, double* out) {
  if (!e || !x || !u || !v || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    const auto dim = static_cast<Eigen::Index>(2 * e->entry.datum->rank());
    Eigen::VectorXd U = Eigen::Map<const Eigen::VectorXd>(u, dim), V = Eigen::Map<const Eigen::VectorXd>(v, dim);
    *out = flow::symplectic_residual(model_of(e), point_of(e, x), U, V, config_of(e, o));
  });
}

okkit_status okkit_check_run(const okkit_entry* e, uint64_t seed, int extended, okkit_check_report** out) {
  if (!e || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] {
    checks::CheckOptions opt;
    opt.seed = seed;
    opt.extended = extended != 0;
    *out = new okkit_check_report{checks::run_checks(e->entry, opt)};
  });
}

void okkit_check_report_free(okkit_check_report* r) { delete r; }

size_t okkit_check_report_size(const okkit_check_report* r) { return r ? r->rows.size() : 0; }

okkit_status okkit_check_report_row(const okkit_check_report* r, size_t index, const char** name,
                                    okkit_check_status* status, const char** detail) {
  if (!r) return fail(OKKIT_E_ARGUMENT, "null argument");
  if (index >= r->rows.size()) return fail(OKKIT_E_ARGUMENT, "row index out of range");
  const auto& row = r->rows[index];
  if (name) *name = row.name.c_str();
  if (status) *status = static_cast<okkit_check_status>(static_cast<int>(row.status));
  if (detail) *detail = row.detail.c_str();
  return OKKIT_OK;
}

int okkit_check_report_passed(const okkit_check_report* r) { return r && checks::all_passed(r->rows) ? 1 : 0; }

okkit_status okkit_check_report_table(const okkit_check_report* r, char** out) {
  if (!r || !out) return fail(OKKIT_E_ARGUMENT, "null argument");
  return guard([&] { *out = copy_string(checks::format_table(r->rows)); });
}

}  // extern "C"
