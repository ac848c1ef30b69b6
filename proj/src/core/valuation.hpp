#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bidegree.hpp"
#include "polynomial.hpp"

namespace okkit::algebra {

// Min: values are lex-minimal exponents and subduction residuals move up.
// Max: the mirror convention (lex-maximal exponents, residuals move down).
enum class Orientation { Min, Max };

const char* to_string(Orientation o);

// True if a is strictly better than b in the orientation's direction,
// i.e. strictly further from the leading term. Used to test subduction progress.
bool advances(const Exponent& from, const Exponent& to, Orientation o);

// Backend interface: a valuation with one-dimensional leaves on the
// function field of X, evaluated on polynomial representatives.
class Valuation {
 public:
  virtual ~Valuation() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t rank() const = 0;
  virtual Orientation orientation() const = 0;
  virtual const RingPtr& ring() const = 0;

  // Canonical representative modulo the ambient ideal (identity if none).
  virtual Polynomial reduce(const Polynomial& f) const { return f; }
  bool is_zero(const Polynomial& f) const { return reduce(f).is_zero(); }

  // Throws undefined-valuation for the zero class.
  virtual Exponent value(const Polynomial& f) const = 0;
  // Coefficient of the leading monomial/series term; determines the leaf.
  virtual Rational leading_coefficient(const Polynomial& f) const = 0;
};

using ValuationPtr = std::shared_ptr<const Valuation>;

class MonomialValuation final : public Valuation {
 public:
  MonomialValuation(RingPtr ring, Orientation orientation = Orientation::Min)
      : ring_(std::move(ring)), orientation_(orientation) {}

  std::string kind() const override { return "monomial"; }
  std::size_t rank() const override { return ring_->size(); }
  Orientation orientation() const override { return orientation_; }
  const RingPtr& ring() const override { return ring_; }
  Exponent value(const Polynomial& f) const override;
  Rational leading_coefficient(const Polynomial& f) const override;

 private:
  RingPtr ring_;
  Orientation orientation_;
};

// Lex-extremal exponent of a nonzero polynomial.
Exponent monomial_valuation(const Polynomial& f, Orientation orientation = Orientation::Min);

// Truncated power series in a local parameter u, built by iterating
// x_i -> rule_i(u, x) from x = 0. Rules must be u-adically contracting.
class SeriesContext {
 public:
  SeriesContext(RingPtr ambient, std::string parameter, const std::vector<std::string>& rule_texts,
                int truncation = 16, int cap = 256);

  const RingPtr& ambient() const noexcept { return ambient_; }
  const RingPtr& series_ring() const noexcept { return series_ring_; }
  const std::string& parameter() const noexcept { return parameter_; }
  const std::vector<Polynomial>& rules() const noexcept { return rules_; }
  int truncation() const noexcept { return truncation_; }
  int cap() const noexcept { return cap_; }

  // Coefficients of u^0..u^{order-1} of f evaluated on the series.
  std::vector<Rational> expand(const Polynomial& f, int order) const;

 private:
  const std::vector<std::vector<Rational>>& variable_series(int order) const;

  RingPtr ambient_;
  RingPtr series_ring_;
  std::string parameter_;
  std::vector<Polynomial> rules_;
  int truncation_;
  int cap_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<std::vector<Rational>>> cache_;
};

struct SeriesOrder {
  long order;
  Rational leading;
};

// Order and leading coefficient of f, doubling the truncation up to the cap.
SeriesOrder series_order(const Polynomial& f, const SeriesContext& ctx);

// ord(numerator) - ord(denominator).
long series_valuation(const Polynomial& numerator, const Polynomial& denominator, const SeriesContext& ctx);

// Rank-one order-of-vanishing valuation, with exact zero tests done by
// normal form modulo an ambient ideal given by a lex Groebner basis.
class SeriesValuation final : public Valuation {
 public:
  SeriesValuation(std::shared_ptr<const SeriesContext> ctx, std::vector<Polynomial> ideal);

  std::string kind() const override { return "series"; }
  std::size_t rank() const override { return 1; }
  Orientation orientation() const override { return Orientation::Min; }
  const RingPtr& ring() const override { return ctx_->ambient(); }
  Polynomial reduce(const Polynomial& f) const override;
  Exponent value(const Polynomial& f) const override;
  Rational leading_coefficient(const Polynomial& f) const override;

  const SeriesContext& context() const noexcept { return *ctx_; }
  const std::vector<Polynomial>& ideal() const noexcept { return ideal_; }

 private:
  std::shared_ptr<const SeriesContext> ctx_;
  std::vector<Polynomial> ideal_;
};

}  // namespace okkit::algebra
