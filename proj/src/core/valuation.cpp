#include "valuation.hpp"

#include "error.hpp"
#include "groebner.hpp"

namespace okkit::algebra {

const char* to_string(Orientation o) { return o == Orientation::Min ? "min" : "max"; }

bool advances(const Exponent& from, const Exponent& to, Orientation o) {
  Ordering c = compare_lex(to, from);
  return o == Orientation::Min ? c == Ordering::Greater : c == Ordering::Less;
}

Exponent monomial_valuation(const Polynomial& f, Orientation orientation) {
  if (f.is_zero()) throw Error(ErrorCode::UndefinedValuation, "valuation of the zero polynomial");
  // Terms are stored in ascending lex order.
  return orientation == Orientation::Min ? f.terms().begin()->first : f.terms().rbegin()->first;
}

Exponent MonomialValuation::value(const Polynomial& f) const { return monomial_valuation(f, orientation_); }

Rational MonomialValuation::leading_coefficient(const Polynomial& f) const {
  return f.coefficient(monomial_valuation(f, orientation_));
}

// ---------------------------------------------------------------------------

namespace {

using Series = std::vector<Rational>;

Series multiply(const Series& a, const Series& b, int order) {
  Series r(order);
  for (int i = 0; i < order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < order; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series power(const Series& a, int k, int order) {
  Series r(order);
  r[0] = 1;
  Series base = a;
  while (k > 0) {
    if (k & 1) r = multiply(r, base, order);
    k >>= 1;
    if (k) base = multiply(base, base, order);
  }
  return r;
}

// Evaluate f (variables indexed into `vars`) on series.
Series evaluate_series(const Polynomial& f, const std::vector<Series>& vars, int order) {
  Series sum(order);
  for (const auto& [e, c] : f.terms()) {
    Series term(order);
    term[0] = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw Error(ErrorCode::Evaluation, "negative exponent in series substitution");
      if (e[i] > 0) term = multiply(term, power(vars[i], e[i], order), order);
    }
    for (int i = 0; i < order; ++i) sum[i] += term[i];
  }
  return sum;
}

}  // namespace

SeriesContext::SeriesContext(RingPtr ambient, std::string parameter, const std::vector<std::string>& rule_texts,
                             int truncation, int cap)
    : ambient_(std::move(ambient)), parameter_(std::move(parameter)), truncation_(truncation), cap_(cap) {
  if (truncation_ <= 0 || cap_ < truncation_)
    throw Error(ErrorCode::Dimension, "series truncation must satisfy 0 < truncation <= cap");
  if (rule_texts.size() != ambient_->size())
    throw Error(ErrorCode::Dimension, "need one substitution rule per ambient variable");
  std::vector<std::string> names{parameter_};
  for (const auto& v : ambient_->variables()) names.push_back(v);
  series_ring_ = make_ring(names);
  for (const auto& text : rule_texts) rules_.push_back(Polynomial::parse(series_ring_, text));
}

const std::vector<Series>& SeriesContext::variable_series(int order) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(order);
  if (it != cache_.end()) return it->second;

  std::vector<Series> current(ambient_->size(), Series(order));
  Series u(order);
  if (order > 1) u[1] = 1;
  bool converged = false;
  for (int iter = 0; iter < order + 2 && !converged; ++iter) {
    std::vector<Series> all{u};
    all.insert(all.end(), current.begin(), current.end());
    std::vector<Series> next;
    for (const auto& rule : rules_) next.push_back(evaluate_series(rule, all, order));
    converged = next == current;
    current = std::move(next);
  }
  if (!converged) throw Error(ErrorCode::InconclusiveValuation, "substitution rules do not converge u-adically");
  return cache_.emplace(order, std::move(current)).first->second;
}

std::vector<Rational> SeriesContext::expand(const Polynomial& f, int order) const {
  if (!f.ring()->same_as(*ambient_)) throw Error(ErrorCode::Dimension, "series expansion of a foreign polynomial");
  return evaluate_series(f, variable_series(order), order);
}

SeriesOrder series_order(const Polynomial& f, const SeriesContext& ctx) {
  int order = ctx.truncation();
  for (;;) {
    auto coeffs = ctx.expand(f, order);
    for (int i = 0; i < order; ++i)
      if (coeffs[i] != 0) return {i, coeffs[i]};
    if (order >= ctx.cap())
      throw Error(ErrorCode::InconclusiveValuation,
                  "series of " + f.to_string() + " vanishes to order " + std::to_string(order));
    order = std::min(2 * order, ctx.cap());
  }
}

long series_valuation(const Polynomial& numerator, const Polynomial& denominator, const SeriesContext& ctx) {
  if (denominator.is_zero()) throw Error(ErrorCode::UndefinedValuation, "zero denominator");
  if (numerator.is_zero()) throw Error(ErrorCode::UndefinedValuation, "valuation of zero");
  return series_order(numerator, ctx).order - series_order(denominator, ctx).order;
}

SeriesValuation::SeriesValuation(std::shared_ptr<const SeriesContext> ctx, std::vector<Polynomial> ideal)
    : ctx_(std::move(ctx)) {
  ideal_ = buchberger(ideal, TermOrder{}).basis;
  for (const auto& g : ideal_) {
    auto coeffs = ctx_->expand(g, ctx_->truncation());
    for (const auto& c : coeffs)
      if (c != 0) throw Error(ErrorCode::Verification, "ideal generator " + g.to_string() + " is not killed by the series");
  }
}

Polynomial SeriesValuation::reduce(const Polynomial& f) const {
  if (ideal_.empty()) return f;
  return normal_form(f, ideal_, TermOrder{});
}

Exponent SeriesValuation::value(const Polynomial& f) const {
  Polynomial r = reduce(f);
  if (r.is_zero()) throw Error(ErrorCode::UndefinedValuation, "valuation of a function vanishing on X");
  return {static_cast<int>(series_order(r, *ctx_).order)};
}

Rational SeriesValuation::leading_coefficient(const Polynomial& f) const {
  Polynomial r = reduce(f);
  if (r.is_zero()) throw Error(ErrorCode::UndefinedValuation, "leading coefficient of zero");
  return series_order(r, *ctx_).leading;
}

}  // namespace okkit::algebra
